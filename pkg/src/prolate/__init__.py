"""Prolate spheroidal wave functions and the quadratures built on them."""

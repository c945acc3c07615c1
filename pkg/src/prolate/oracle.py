"""Slow, independent reference computations used by the tests and ``verify``.

Nothing here shares code with the fast path beyond the matrix container:
Gauss-Legendre panels are built from their own Newton root finder and
Legendre recurrence, and spectra come from plain rank-indexed bisection.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .tridiag import SymTridiag, sturm_count

SINGULAR_RADIUS = 1e-4


@dataclass(frozen=True)
class OracleConfig:
    abs_tol: float = 1e-13
    max_depth: int = 40
    base_points: int = 16

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if not 0 < self.max_depth <= 60:
            raise DomainError("max_depth must lie in 1..60")
        if self.base_points < 1:
            raise DomainError("base_points must be positive")


def _legendre_and_derivative(n: int, x: np.ndarray):
    # Plain three-term recurrence; derivative from (1 - x^2) P_n' = n (P_{n-1} - x P_n).
    p_prev = np.ones_like(x)
    p = x.copy()
    if n == 0:
        return p_prev, np.zeros_like(x)
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = n * (p_prev - x * p) / (1.0 - x * x)
    return p, dp


def legendre_roots(n: int) -> np.ndarray:
    """Roots of P_n by Newton's method from Chebyshev initial guesses."""
    if not 1 <= n <= 200:
        raise DomainError(f"legendre_roots supports 1 <= n <= 200, got {n}")
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        step = p / dp
        x = x - step
        if np.max(np.abs(step)) < 1e-16:
            break
    x = np.sort(x)
    # Enforce the exact symmetry of the root set.
    x = 0.5 * (x - x[::-1])
    return x


@functools.lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    x = legendre_roots(n)
    _, dp = _legendre_and_derivative(n, x)
    return x, 2.0 / ((1.0 - x * x) * dp * dp)


def _panel(f, a, b, x, w):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * np.sum(w * np.asarray([f(t) for t in mid + half * x]))


def adaptive_integrate(f, lo: float, hi: float, cfg: OracleConfig = OracleConfig()) -> float:
    """Integral of ``f`` over [lo, hi] by recursive bisection of Gauss panels.

    A panel is accepted once it agrees with the sum of its two halves to
    within its share of ``cfg.abs_tol``.
    """
    if not lo < hi:
        raise DomainError(f"need lo < hi, got ({lo}, {hi})")
    x, w = gauss_legendre(cfg.base_points)
    total = 0.0
    stack = [(lo, hi, _panel(f, lo, hi, x, w), 0)]
    width = hi - lo
    while stack:
        a, b, whole, depth = stack.pop()
        m = 0.5 * (a + b)
        left = _panel(f, a, m, x, w)
        right = _panel(f, m, b, x, w)
        if abs(left + right - whole) <= cfg.abs_tol * (b - a) / width:
            total += left + right
            continue
        if depth + 1 > cfg.max_depth:
            raise ConvergenceError(f"adaptive integration exceeded depth {cfg.max_depth}")
        stack.append((a, m, left, depth + 1))
        stack.append((m, b, right, depth + 1))
    return float(total)


def composite_gauss(f, lo: float, hi: float, panels: int, points: int = 20) -> float:
    """Fixed composite Gauss-Legendre rule with ``panels * points`` nodes."""
    x, w = gauss_legendre(points)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[:-1] + edges[1:])
    t = (mids[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(f(t))
    return float(np.sum((half[:, None] * w[None, :]).ravel() * vals))


def full_spectrum(T: SymTridiag, rel_tol: float = 1e-14) -> np.ndarray:
    """All eigenvalues of T, each by bisection on its Sturm rank."""
    if T.size > 2000:
        raise DomainError("full_spectrum is meant for N <= 2000")
    lo0, hi0 = T.gershgorin()
    pad = 1e-12 * (1.0 + max(abs(lo0), abs(hi0)))
    lo0, hi0 = lo0 - pad, hi0 + pad
    out = np.empty(T.size)
    for r in range(T.size):
        above = T.size - r
        lo, hi = lo0, hi0
        while hi - lo > rel_tol * max(abs(lo), abs(hi), 1e-300):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if sturm_count(T, mid) >= above:
                lo = mid
            else:
                hi = mid
        out[r] = 0.5 * (lo + hi)
    return out


def cardinal_weight(
    sol, t_j: float, dpsi_j: float, cfg: OracleConfig = OracleConfig(abs_tol=1e-11)
) -> float:
    """Integral over [-1, 1] of psi_n(t) / (psi_n'(t_j) (t - t_j)).

    psi_n is summed from its Legendre series. Within 1e-4 of t_j the
    quotient is replaced by psi_n'(t_j) + psi_n''(t_j) (t - t_j) / 2. The
    cancellation in psi_n(t) / (t - t_j) limits the attainable tolerance to
    roughly 1e-12, hence the looser default.
    """
    from .pswf import psi

    d2 = 2.0 * t_j * dpsi_j / (1.0 - t_j * t_j)
    r = SINGULAR_RADIUS

    def g(t):
        return psi(sol, t) / (dpsi_j * (t - t_j))

    # Split at t_j +- r so the switch to the local expansion sits on panel edges.
    a, b = max(-1.0, t_j - r), min(1.0, t_j + r)
    total = (b - a) + 0.25 * d2 / dpsi_j * ((b - t_j) ** 2 - (a - t_j) ** 2)
    if a > -1.0:
        total += adaptive_integrate(g, -1.0, a, cfg)
    if b < 1.0:
        total += adaptive_integrate(g, b, 1.0, cfg)
    return float(total)

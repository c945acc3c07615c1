"""Quadrature rules whose nodes are the roots of psi_n, and their diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError
from .nodes import NodeTable, find_nodes
from .pswf import (
    LambdaValue,
    PswfSolution,
    error_bound_value,
    lambda_value,
    psi,
    psi_and_dpsi,
    solve,
)
from .weights import weights_fast


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """n nodes and weights on [-1, 1] for band limit c.

    ``lam`` and ``chi`` are the eigenvalues of psi_n, kept for error
    estimates.
    """

    c: float
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    lam: LambdaValue
    chi: float

    def __eq__(self, other):
        if not isinstance(other, QuadratureRule):
            return NotImplemented
        return (
            self.c == other.c
            and self.n == other.n
            and self.lam == other.lam
            and self.chi == other.chi
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )


def bound_hypotheses(c: float, n: int) -> list[str]:
    """Hypotheses of the quadrature error theorem that (c, n) violates."""
    failed = []
    if not c > 30:
        failed.append("c > 30")
    if not n > 2 * c / math.pi + 5:
        failed.append("n > 2c/pi + 5")
    return failed


def build_rule_parts(c: float, n: int, *, strict: bool = True, seed: int = 1):
    """Like :func:`build_rule` but also return the solution and node table."""
    if strict:
        failed = [h for h in bound_hypotheses(c, n) if h != "c > 30"]
        if failed:
            raise PreconditionError(
                f"rule of order n={n} at c={c} violates: {'; '.join(failed)}", failed
            )
    sol = solve(c, n, seed=seed)
    table = find_nodes(sol)
    w = weights_fast(sol, table)
    rule = QuadratureRule(float(c), int(n), table.nodes, w, lambda_value(sol), sol.chi)
    return rule, sol, table


def build_rule(c: float, n: int, *, strict: bool = True, seed: int = 1) -> QuadratureRule:
    """Nodes and weights of the order-n prolate quadrature for band limit c.

    With ``strict`` (default) n must exceed 2c/pi + 5, the regime covered by
    the error bound. Otherwise only chi_n > c^2 is needed.
    """
    return build_rule_parts(c, n, strict=strict, seed=seed)[0]


def integrate(rule: QuadratureRule, f):
    """sum_j w_j f(t_j); complex integrands are summed by real and imaginary part."""
    try:
        values = np.asarray(f(rule.nodes))
        if values.shape != rule.nodes.shape:
            raise ValueError
    except (TypeError, ValueError):
        values = np.array([f(t) for t in rule.nodes])
    if np.iscomplexobj(values):
        return complex(rule.weights @ values.real, rule.weights @ values.imag)
    return float(rule.weights @ values)


def exact_psi_integral(sol_m: PswfSolution) -> float:
    """Integral of psi_m over [-1, 1], which is lambda_m psi_m(0)."""
    if sol_m.n % 2 == 1:
        return 0.0
    return lambda_value(sol_m).signed_real * psi(sol_m, 0.0)


def delta_psi(rule: QuadratureRule, m: int, sol_m: PswfSolution) -> float:
    """Quadrature error on psi_m."""
    if sol_m.c != rule.c:
        raise DomainError(f"psi_m solved at c={sol_m.c}, rule built at c={rule.c}")
    if sol_m.n != m:
        raise DomainError(f"solution is psi_{sol_m.n}, not psi_{m}")
    approx = float(rule.weights @ psi(sol_m, rule.nodes))
    return abs(exact_psi_integral(sol_m) - approx)


def max_delta(rule: QuadratureRule, m_stop: int | None = None) -> float:
    """max_{m < m_stop} of the quadrature error on psi_m (m_stop defaults to n)."""
    m_stop = rule.n if m_stop is None else m_stop
    return max(delta_psi(rule, m, solve(rule.c, m)) for m in range(m_stop))


def _sinc_integral(ac):
    ac = np.asarray(ac, dtype=float)
    safe = np.where(ac == 0.0, 1.0, ac)
    return np.where(ac == 0.0, 2.0, 2.0 * np.sin(safe) / safe)


def exp_error(rule: QuadratureRule, a):
    """|2 sin(ac)/(ac) - sum_j w_j exp(i c a t_j)| for scalar or array a."""
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr < 0):
        raise DomainError("frequency multiplier a must be non-negative")
    flat = np.atleast_1d(a_arr).ravel()
    phase = rule.c * np.outer(flat, rule.nodes)
    re = np.cos(phase) @ rule.weights
    im = np.sin(phase) @ rule.weights
    err = np.hypot(_sinc_integral(rule.c * flat) - re, im)
    if a_arr.ndim == 0:
        return float(err[0])
    return err.reshape(a_arr.shape)


def sweep_delta(
    rule: QuadratureRule, a_lo: float, a_hi: float, steps: int = 2001, *, open_lo: bool = False
) -> float:
    """Max of :func:`exp_error` on a uniform grid of ``steps`` points.

    With ``open_lo`` the grid covers (a_lo, a_hi] instead of [a_lo, a_hi].
    """
    if not 0 <= a_lo <= a_hi:
        raise DomainError(f"need 0 <= a_lo <= a_hi, got ({a_lo}, {a_hi})")
    if a_lo == a_hi:
        return float(exp_error(rule, a_lo))
    if open_lo:
        grid = np.linspace(a_lo, a_hi, steps + 1)[1:]
    else:
        grid = np.linspace(a_lo, a_hi, steps)
    return float(np.max(exp_error(rule, grid)))


def error_bound(rule: QuadratureRule) -> float:
    """Rigorous bound |lambda_n| (24 log(1/|lambda_n|) + 6 chi_n) on the error for psi_m, m < n."""
    failed = bound_hypotheses(rule.c, rule.n)
    if failed:
        raise PreconditionError("error bound hypotheses violated: " + "; ".join(failed), failed)
    return error_bound_value(rule.lam.magnitude, rule.chi)


def partition_residual(sol: PswfSolution, table: NodeTable, t) -> np.ndarray:
    """1 - sum_j psi_n(t) / (psi_n'(t_j) (t - t_j)), which is O(|lambda_n|) psi_n(t)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    p = psi_and_dpsi(sol, t)[0]
    out = np.empty_like(t)
    for i, (ti, pi) in enumerate(zip(t, p)):
        gap = ti - table.nodes
        hit = np.nonzero(gap == 0.0)[0]
        if hit.size:
            # The cardinal function at its own node equals 1, the others vanish.
            out[i] = 0.0
            continue
        out[i] = 1.0 - pi * np.sum(1.0 / (table.dpsi * gap))
    return out


def partition_bound(lam: float, chi: float, max_psi: float) -> float:
    """|lambda| (24 log(1/|lambda|) + 130 chi^(1/4)) max|psi_n|."""
    if lam == 0.0:
        return 0.0
    return lam * (24.0 * math.log(1.0 / lam) + 130.0 * chi**0.25) * max_psi

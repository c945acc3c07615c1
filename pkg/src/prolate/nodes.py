"""Roots of psi_n in (-1, 1) and local Taylor expansions about them.

Starting from the innermost non-negative root, each next root is predicted by
marching the inverse Prüfer phase over an interval of length pi and then
polished by Newton's method applied to the Taylor expansion of psi_n about
the previous root. The Taylor coefficients come from the derivative
recurrence of the prolate differential equation, so every step costs O(M)
and the whole sweep O(n M). Negative roots follow by symmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import ConsistencyError, ConvergenceError, DomainError, EscapeError, PreconditionError
from .prufer import DEFAULT_STEPS, ESCAPE_MARGIN, _f, _march
from .pswf import PswfSolution, psi_and_dpsi

DEFAULT_ORDER = 30
NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 10
DUPLICATE_GAP = 1e-13


@dataclass(frozen=True)
class NodeTable:
    """Roots t_j of psi_n with psi_n^(k)(t_j) for k = 0..M.

    ``coef[j, k] = taylor[j, k] / k!`` are the Taylor coefficients actually
    used for evaluation; ``newton_iterations[j]`` records the polishing cost.
    """

    nodes: np.ndarray
    dpsi: np.ndarray
    taylor: np.ndarray
    M: int
    newton_iterations: np.ndarray
    coef: np.ndarray
    n: int


@numba.njit(cache=True)
def taylor_coefficients(c2, chi, t, y0, y1, M, r0, r1, out):
    """Fill out[k] = y^(k)(t) / k! for k = 0..M.

    y solves (1 - t^2) y'' - 2 t y' + (chi - c^2 t^2) y = r(t) with
    r(t) = r0 + r1 (t - t0) linear; y0, y1 are y(t), y'(t).
    """
    out[0] = y0
    if M >= 1:
        out[1] = y1
    w = (1.0 - t) * (1.0 + t)
    ct2 = c2 * t * t
    for k in range(0, M - 1):
        acc = 2.0 * (k + 1) * (k + 1) * t * out[k + 1] - (chi - k * (k + 1) - ct2) * out[k]
        if k >= 1:
            acc += 2.0 * c2 * t * out[k - 1]
        if k >= 2:
            acc += c2 * out[k - 2]
        if k == 0:
            acc += r0
        elif k == 1:
            acc += r1
        out[k + 2] = acc / (w * (k + 1) * (k + 2))


@numba.njit(cache=True)
def taylor_eval(coef, h):
    """Value and derivative of sum_k coef[k] h^k."""
    M = len(coef) - 1
    p = coef[M]
    dp = 0.0
    for k in range(M - 1, -1, -1):
        dp = dp * h + p
        p = p * h + coef[k]
    return p, dp


@numba.njit(cache=True)
def _sweep_roots(c2, chi, t0, d0, eta0, direction, count, M, lo, hi, ts, ds, coefs, iters):
    # Status: 0 ok, 1 escape, 2 Newton failure, 3 duplicate root.
    ts[0] = t0
    ds[0] = d0
    taylor_coefficients(c2, chi, t0, 0.0, d0, M, 0.0, 0.0, coefs[0])
    eta = eta0
    for j in range(1, count):
        t_prev = ts[j - 1]
        guess, ok = _march(c2, chi, eta, t_prev, eta + direction * math.pi, DEFAULT_STEPS, lo, hi)
        if not ok:
            return 1, j
        eta += direction * math.pi
        x = guess
        converged = False
        for it in range(1, NEWTON_MAX_ITER + 1):
            p, dp = taylor_eval(coefs[j - 1], x - t_prev)
            step = -p / dp
            limit = 0.5 * math.pi / _f(c2, chi, x)
            if abs(step) > limit:
                step = limit if step > 0 else -limit
            x += step
            if not (lo < x < hi):
                return 1, j
            if abs(step) < NEWTON_TOL:
                iters[j] = it
                converged = True
                break
        if not converged:
            return 2, j
        if direction * (x - t_prev) < DUPLICATE_GAP:
            return 3, j
        p, dp = taylor_eval(coefs[j - 1], x - t_prev)
        ts[j] = x
        ds[j] = dp
        taylor_coefficients(c2, chi, x, 0.0, dp, M, 0.0, 0.0, coefs[j])
    return 0, count


def _series_newton(sol: PswfSolution, x: float) -> tuple[float, int]:
    for it in range(1, NEWTON_MAX_ITER + 1):
        p, dp = psi_and_dpsi(sol, x)
        step = -p / dp
        limit = 0.5 * math.pi / _f(sol.c**2, sol.chi, x)
        step = max(-limit, min(limit, step))
        x += step
        if abs(step) < NEWTON_TOL:
            return x, it
    raise ConvergenceError(f"Newton did not converge to the innermost root of psi_{sol.n}")


def _one_side(sol: PswfSolution, M: int, direction: int):
    """Roots on one side of 0, innermost first, ordered by |t| increasing."""
    n, c2, chi = sol.n, sol.c**2, sol.chi
    lo, hi = -1.0 + ESCAPE_MARGIN, 1.0 - ESCAPE_MARGIN
    if n % 2 == 1:
        t0, it0, eta0 = 0.0, 0, math.pi * n / 2
        count = (n + 1) // 2
    else:
        eta0 = math.pi * n / 2 + direction * math.pi / 2
        s, ok = _march(c2, chi, math.pi * n / 2, 0.0, eta0, DEFAULT_STEPS, lo, hi)
        if not ok:
            raise EscapeError("Prüfer march to the innermost root left (-1, 1)")
        t0, it0 = _series_newton(sol, s)
        count = n // 2
    d0 = psi_and_dpsi(sol, t0)[1]
    ts = np.empty(count)
    ds = np.empty(count)
    coefs = np.empty((count, M + 1))
    iters = np.zeros(count, dtype=np.int64)
    iters[0] = it0
    status, j = _sweep_roots(
        c2, chi, float(t0), float(d0), eta0, float(direction), count, M, lo, hi,
        ts, ds, coefs, iters,
    )
    if status == 1:
        raise EscapeError(f"Prüfer march or Newton step for root {j} left (-1, 1)")
    if status == 2:
        raise ConvergenceError(
            f"Newton did not reach step {NEWTON_TOL} in {NEWTON_MAX_ITER} iterations at root {j}"
        )
    if status == 3:
        raise ConsistencyError(f"root {j} duplicates its predecessor")
    return ts, ds, coefs, iters


def _check_solution(sol: PswfSolution):
    if sol.n < 1:
        raise PreconditionError("psi_0 has no roots; need n >= 1", ["n >= 1"])
    if not sol.chi > sol.c**2:
        raise PreconditionError(
            f"node finding needs chi_n > c^2 (n >= 2c/pi); chi={sol.chi!r}, c^2={sol.c**2!r}",
            ["chi_n > c^2"],
        )


def find_nodes(sol: PswfSolution, M: int = DEFAULT_ORDER) -> NodeTable:
    """All n roots of psi_n, psi_n' there, and order-M Taylor tables."""
    _check_solution(sol)
    if M < 2:
        raise DomainError(f"Taylor order must be at least 2, got {M}")
    n = sol.n
    ts, ds, coefs, iters = _one_side(sol, M, +1)
    return _assemble(n, M, ts, ds, coefs, iters)


def _assemble(n, M, ts, ds, coefs, iters) -> NodeTable:
    # Mirror the non-negative half: psi^(k)(-t) = (-1)^(n+k) psi^(k)(t).
    k_sign = (-1.0) ** (n + np.arange(M + 1))
    if n % 2 == 1:
        neg = slice(len(ts) - 1, 0, -1)
    else:
        neg = slice(len(ts) - 1, None, -1)
    nodes = np.concatenate([-ts[neg], ts])
    coef = np.concatenate([coefs[neg] * k_sign, coefs])
    dpsi = coef[:, 1].copy()
    iterations = np.concatenate([iters[neg], iters])
    if n % 2 == 1:
        nodes[len(ts) - 1] = 0.0
    factorials = np.array([math.factorial(k) for k in range(M + 1)], dtype=float)
    with np.errstate(over="ignore"):
        taylor = coef * factorials
    return NodeTable(nodes, dpsi, taylor, M, iterations, coef, n)


def mirrored_positive_nodes(sol: PswfSolution, M: int = DEFAULT_ORDER) -> np.ndarray:
    """Non-negative roots recomputed by marching towards -1 and reflecting."""
    _check_solution(sol)
    ts = _one_side(sol, M, -1)[0]
    return -ts if sol.n % 2 == 0 else np.abs(ts)


def _locate(table: NodeTable, x):
    x = np.asarray(x, dtype=float)
    if np.any(~((x >= table.nodes[0]) & (x <= table.nodes[-1]))):
        raise DomainError("Taylor interpolation is limited to [t_1, t_n]")
    if table.n == 1:
        return x, np.zeros(x.shape, dtype=np.intp)
    i = np.clip(np.searchsorted(table.nodes, x), 1, table.n - 1)
    left, right = table.nodes[i - 1], table.nodes[i]
    # The expansion about t_j converges for |x - t_j| < 1 - |t_j|; pick the
    # node where x sits deepest inside that disc. Ties go left.
    rl = (x - left) / (1.0 - np.abs(left))
    rr = (right - x) / (1.0 - np.abs(right))
    return x, np.where(rl <= rr, i - 1, i)


def _interp(table: NodeTable, x):
    x, j = _locate(table, x)
    xs = np.atleast_1d(x)
    js = np.atleast_1d(j)
    val = np.empty(xs.shape)
    der = np.empty(xs.shape)
    for m, (xm, jm) in enumerate(zip(xs.ravel(), js.ravel())):
        val.flat[m], der.flat[m] = taylor_eval(table.coef[jm], xm - table.nodes[jm])
    if np.ndim(x) == 0:
        return float(val[0]), float(der[0])
    return val, der


def interp_psi(table: NodeTable, x):
    """psi_n(x) from the Taylor expansion about a neighbouring root."""
    return _interp(table, x)[0]


def interp_dpsi(table: NodeTable, x):
    """psi_n'(x) from the Taylor expansion about a neighbouring root."""
    return _interp(table, x)[1]

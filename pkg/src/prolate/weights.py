"""Quadrature weights W_j = -2 Phi(t_j) / psi_n'(t_j).

Phi(t) = sum_k alpha_k Q_k(t) is the companion of psi_n = sum_k alpha_k P_k
built from Legendre functions of the second kind. It satisfies the prolate
equation with the right-hand side -c^2 (alpha_0 t + alpha_1 / 3), so it can
be Taylor-marched from root to root exactly like psi_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import DomainError
from .legendre import Q_DOMAIN_LIMIT, eval_P, legendre_series
from .nodes import NodeTable, find_nodes, taylor_coefficients, taylor_eval
from .pswf import PswfSolution, solve

PHI_ORDER = 60
SERIES_TAIL = 4
GAUSS_LIMIT_C = 1e-8


@dataclass(frozen=True)
class PhiTable:
    """Phi at every node, with Phi' at the innermost non-negative node."""

    phi: np.ndarray
    dphi_at_tmin: float
    M_phi: int


def _low_alphas(sol: PswfSolution) -> tuple[float, float]:
    # alpha_0 for even n, alpha_1 for odd n; the other vanishes by parity.
    a = sol.beta[0] * math.sqrt(sol.parity + 0.5)
    return (a, 0.0) if sol.parity == 0 else (0.0, a)


def phi_series(sol: PswfSolution, t):
    """Phi(t) and Phi'(t) by summing alpha_k Q_k(t) over the parity class."""
    arr = np.asarray(t, dtype=float)
    if np.any(~(np.abs(arr) <= Q_DOMAIN_LIMIT)):
        raise DomainError("Phi is evaluated on (-1, 1)")
    return legendre_series(sol.alpha, sol.parity, t, second_kind=True)


def weights_direct(sol: PswfSolution, table: NodeTable) -> np.ndarray:
    """Weights from the Q_k series at every node, O(n N) work."""
    phi, _ = phi_series(sol, table.nodes)
    return -2.0 * phi / table.dpsi


@numba.njit(cache=True)
def _march_phi(c2, chi, ts, phi0, dphi0, M, r0_lin, r0_const, r1, out):
    # ts holds the non-negative nodes in increasing order; out[i] = Phi(ts[i]).
    coef = np.empty(M + 1)
    y, dy = phi0, dphi0
    out[0] = y
    for i in range(len(ts) - 1):
        t = ts[i]
        taylor_coefficients(c2, chi, t, y, dy, M, r0_lin * t + r0_const, r1, coef)
        y, dy = taylor_eval(coef, ts[i + 1] - t)
        out[i + 1] = y


def phi_table(sol: PswfSolution, table: NodeTable, M_phi: int = PHI_ORDER) -> PhiTable:
    """Phi at the nodes: series at t_min, Taylor march outward, series for the last four."""
    n = table.n
    first = (n - 1) // 2 if n % 2 else n // 2
    pos = table.nodes[first:]
    phi0, dphi0 = phi_series(sol, pos[0])
    a0, a1 = _low_alphas(sol)
    c2 = sol.c**2
    marched = np.empty(len(pos))
    _march_phi(c2, sol.chi, pos, phi0, dphi0, M_phi, -c2 * a0, -c2 * a1 / 3.0, -c2 * a0, marched)
    # Near t = 1 the log singularity of Phi spoils the Taylor march.
    tail = min(SERIES_TAIL, len(pos) - 1)
    if tail > 0:
        marched[-tail:] = phi_series(sol, pos[-tail:])[0]
    phi = np.empty(n)
    phi[first:] = marched
    sign = (-1.0) ** (n + 1)
    phi[:first] = sign * marched[::-1][: first]
    return PhiTable(phi, float(dphi0), M_phi)


def weights_fast(sol: PswfSolution, table: NodeTable, M_phi: int = PHI_ORDER) -> np.ndarray:
    """Weights from the Taylor-marched Phi table, O(n) work."""
    return -2.0 * phi_table(sol, table, M_phi).phi / table.dpsi


def gauss_weight_formula(nodes: np.ndarray) -> np.ndarray:
    """2 / (P_n'(t)^2 (1 - t^2)) at each node."""
    n = len(nodes)
    dp = np.array([eval_P(n, t).derivs[n] for t in nodes])
    return 2.0 / (dp**2 * (1.0 - nodes**2))


def gauss_limit_check(n: int) -> float:
    """Max deviation of the weights at c = 1e-8 from the Gauss-Legendre weights."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    sol = solve(GAUSS_LIMIT_C, n)
    table = find_nodes(sol)
    w = weights_fast(sol, table)
    return float(np.max(np.abs(w - gauss_weight_formula(table.nodes))))

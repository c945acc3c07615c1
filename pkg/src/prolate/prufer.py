"""Prüfer phase of psi_n and a fixed-step RK2 march of its inverse.

With psi_n(t) = A(t) cos(theta(t)) the phase obeys
theta'(t) = f(t) + v(t) sin(2 theta(t)); the inverse function s = theta^{-1}
satisfies s'(eta) = 1 / (f(s) + v(s) sin(2 eta)). Since theta(t_i) = (i - 1/2) pi
at the roots, marching s over an eta-interval of length pi moves from one
root of psi_n to (an approximation of) the next.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba

from .errors import DomainError, EscapeError

DEFAULT_STEPS = 20
ESCAPE_MARGIN = 1e-12


@dataclass(frozen=True)
class PruferCoeffs:
    c: float
    chi: float

    def __post_init__(self):
        if not self.chi > self.c**2:
            raise DomainError(
                f"chi = {self.chi!r} must exceed c^2 = {self.c**2!r} for a real phase"
            )


@numba.njit(cache=True)
def _f(c2, chi, t):
    return math.sqrt((chi - c2 * t * t) / ((1.0 - t) * (1.0 + t)))


@numba.njit(cache=True)
def _v(c2, chi, t):
    return 0.5 * (t / ((1.0 - t) * (1.0 + t)) + c2 * t / (chi - c2 * t * t))


def _check_t(t):
    if not abs(t) < 1.0:
        raise DomainError(f"Prüfer coefficients need |t| < 1, got {t!r}")


def f_eval(pc: PruferCoeffs, t: float) -> float:
    """sqrt((chi - c^2 t^2) / (1 - t^2))."""
    _check_t(t)
    return float(_f(pc.c**2, pc.chi, float(t)))


def v_eval(pc: PruferCoeffs, t: float) -> float:
    """(t / (1 - t^2) + c^2 t / (chi - c^2 t^2)) / 2."""
    _check_t(t)
    return float(_v(pc.c**2, pc.chi, float(t)))


@numba.njit(cache=True)
def _march(c2, chi, eta0, s0, eta1, steps, lo, hi):
    # Returns (s, ok); ok is False when an intermediate s leaves (lo, hi).
    h = (eta1 - eta0) / steps
    s = s0
    k = h / (_f(c2, chi, s) + _v(c2, chi, s) * math.sin(2.0 * eta0))
    for i in range(steps):
        pred = s + k
        if not (lo < pred < hi):
            return pred, False
        eta = eta0 + (i + 1) * h
        k_next = h / (_f(c2, chi, pred) + _v(c2, chi, pred) * math.sin(2.0 * eta))
        s = s + 0.5 * (k + k_next)
        if not (lo < s < hi):
            return s, False
        k = k_next
    return s, True


def rk2_march(
    pc: PruferCoeffs, eta0: float, s0: float, eta1: float, steps: int = DEFAULT_STEPS
) -> float:
    """Approximate s(eta1) given s(eta0) = s0 with ``steps`` RK2 steps.

    The scheme is k_0 = h F(eta_0, y_0), k_{i+1} = h F(eta_{i+1}, y_i + k_i),
    y_{i+1} = y_i + (k_i + k_{i+1}) / 2.
    """
    if not -1.0 < s0 < 1.0:
        raise DomainError(f"march must start inside (-1, 1), got s0={s0!r}")
    if steps < 1:
        raise DomainError(f"steps must be positive, got {steps!r}")
    if eta1 == eta0:
        return float(s0)
    s, ok = _march(
        pc.c**2, pc.chi, float(eta0), float(s0), float(eta1), int(steps),
        -1.0 + ESCAPE_MARGIN, 1.0 - ESCAPE_MARGIN,
    )
    if not ok:
        raise EscapeError(
            f"Prüfer march from eta={eta0!r} to {eta1!r} left (-1, 1) at s={s!r}"
        )
    return float(s)

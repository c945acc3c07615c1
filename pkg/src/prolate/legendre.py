"""Legendre polynomials P_k and Legendre functions of the second kind Q_k.

Both families obey the same three-term recurrence

    (k + 1) y_{k+1}(x) = (2k + 1) x y_k(x) - k y_{k-1}(x),

so values and first derivatives are produced by one upward sweep; the
derivative uses the differentiated recurrence

    (k + 1) y'_{k+1} = (2k + 1) (y_k + x y'_k) - k y'_{k-1},

which needs no division by (1 - x^2) and is exact at x = +-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import DomainError

# Q_k is evaluated by its closed forms, which carry log(1 - |x|).
Q_DOMAIN_LIMIT = 1.0 - 1e-14


@dataclass(frozen=True)
class LegendreEval:
    """Values and first derivatives of a Legendre family for k = 0..k_max."""

    values: np.ndarray
    derivs: np.ndarray

    @property
    def k_max(self) -> int:
        return len(self.values) - 1


@numba.njit(cache=True)
def _sweep(y0, y1, d0, d1, x, k_max, values, derivs):
    values[0] = y0
    derivs[0] = d0
    if k_max == 0:
        return
    values[1] = y1
    derivs[1] = d1
    for k in range(1, k_max):
        values[k + 1] = ((2 * k + 1) * x * values[k] - k * values[k - 1]) / (k + 1)
        derivs[k + 1] = (
            (2 * k + 1) * (values[k] + x * derivs[k]) - k * derivs[k - 1]
        ) / (k + 1)


def _check_index(k_max):
    if k_max < 0 or int(k_max) != k_max:
        raise DomainError(f"k_max must be a non-negative integer, got {k_max!r}")
    return int(k_max)


def eval_P(k_max: int, x: float) -> LegendreEval:
    """Evaluate P_0..P_{k_max} and their derivatives at ``x`` in [-1, 1]."""
    k_max = _check_index(k_max)
    x = float(x)
    if not abs(x) <= 1.0:
        raise DomainError(f"P_k is evaluated on [-1, 1], got x={x!r}")
    values = np.empty(k_max + 1)
    derivs = np.empty(k_max + 1)
    _sweep(1.0, x, 0.0, 1.0, x, k_max, values, derivs)
    return LegendreEval(values, derivs)


def eval_Q(k_max: int, x: float) -> LegendreEval:
    """Evaluate Q_0..Q_{k_max} and their derivatives at ``x`` in (-1, 1).

    Raises DomainError for ``|x| > 1 - 1e-14``; closer to the endpoints the
    logarithmic singularity destroys the closed forms of Q_0 and Q_1.
    """
    k_max = _check_index(k_max)
    x = float(x)
    if not abs(x) <= Q_DOMAIN_LIMIT:
        raise DomainError(f"Q_k needs |x| <= 1 - 1e-14, got x={x!r}")
    q0 = math.atanh(x)
    inv = 1.0 / ((1.0 - x) * (1.0 + x))
    values = np.empty(k_max + 1)
    derivs = np.empty(k_max + 1)
    _sweep(q0, x * q0 - 1.0, inv, q0 + x * inv, x, k_max, values, derivs)
    return LegendreEval(values, derivs)


def normalize_factor(k: int) -> float:
    """Factor turning P_k into the L^2[-1, 1]-normalized polynomial."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k!r}")
    return math.sqrt(k + 0.5)


@numba.njit(cache=True)
def _series_kernel(coef, parity, xs, second_kind, out_val, out_der):
    # Sums coef[i] * y_{parity + 2i}(x) and its derivative for y = P or Q.
    k_last = parity + 2 * (len(coef) - 1)
    for m in range(len(xs)):
        x = xs[m]
        if second_kind:
            q0 = math.atanh(x)
            inv = 1.0 / ((1.0 - x) * (1.0 + x))
            y_prev, y_cur = q0, x * q0 - 1.0
            d_prev, d_cur = inv, q0 + x * inv
        else:
            y_prev, y_cur = 1.0, x
            d_prev, d_cur = 0.0, 1.0
        if parity == 0:
            s = coef[0] * y_prev
            ds = coef[0] * d_prev
        else:
            s = coef[0] * y_cur
            ds = coef[0] * d_cur
        for k in range(1, k_last):
            y_next = ((2 * k + 1) * x * y_cur - k * y_prev) / (k + 1)
            d_next = ((2 * k + 1) * (y_cur + x * d_cur) - k * d_prev) / (k + 1)
            y_prev, y_cur = y_cur, y_next
            d_prev, d_cur = d_cur, d_next
            j = k + 1 - parity
            if j % 2 == 0:
                i = j // 2
                s += coef[i] * y_cur
                ds += coef[i] * d_cur
        out_val[m] = s
        out_der[m] = ds


def legendre_series(coef, parity: int, x, *, second_kind: bool = False):
    """Evaluate ``sum_i coef[i] * y_{parity + 2i}(x)`` and its derivative.

    ``y`` is P (default) or Q (``second_kind=True``). ``x`` may be a scalar
    or an array; the return shape follows ``x``. No domain checks are made.
    """
    coef = np.ascontiguousarray(coef, dtype=float)
    xs = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    val = np.empty_like(xs)
    der = np.empty_like(xs)
    _series_kernel(coef, int(parity), xs, bool(second_kind), val, der)
    if np.ndim(x) == 0:
        return float(val[0]), float(der[0])
    shape = np.shape(x)
    return val.reshape(shape), der.reshape(shape)

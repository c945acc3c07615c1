"""Symmetric tridiagonal eigen-machinery for the prolate matrices.

The Legendre coefficients of a prolate function satisfy a three-term
recurrence that splits into two symmetric tridiagonal matrices, one per
parity. A single eigenpair is found by Sturm bisection (low accuracy)
followed by shifted inverse power iteration (machine accuracy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import BracketError, ConsistencyError, ConvergenceError, DomainError

# Coordinates below this are treated as underflowed and not tracked.
UNDERFLOW_FLOOR = 1e-280
MAX_INVERSE_POWER_ITERATIONS = 20


@dataclass(frozen=True)
class SymTridiag:
    """Symmetric tridiagonal matrix stored as its diagonal and off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.diag) < 1:
            raise DomainError("a tridiagonal matrix needs at least one row")
        if len(self.offdiag) != len(self.diag) - 1:
            raise DomainError("offdiag must have exactly len(diag) - 1 entries")

    @property
    def size(self) -> int:
        return len(self.diag)

    def gershgorin(self) -> tuple[float, float]:
        """Interval containing the whole spectrum."""
        radius = np.zeros(self.size)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray
    residual: float
    iterations: int


def build_prolate_matrix(c: float, parity: int | str, N: int) -> SymTridiag:
    """Leading N x N block of the even or odd prolate matrix for band limit c.

    Row i corresponds to the Legendre degree k = 2i (even) or 2i + 1 (odd).
    """
    if parity in ("even", 0):
        p = 0
    elif parity in ("odd", 1):
        p = 1
    else:
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if N < 2:
        raise DomainError(f"truncation size must be at least 2, got {N}")
    if not c > 0:
        raise DomainError(f"band limit must be positive, got {c!r}")
    k = p + 2.0 * np.arange(N)
    c2 = float(c) ** 2
    diag = k * (k + 1) + (2 * k * (k + 1) - 1) / ((2 * k + 3) * (2 * k - 1)) * c2
    k = k[:-1]
    off = (k + 2) * (k + 1) / ((2 * k + 3) * np.sqrt((2 * k + 1) * (2 * k + 5))) * c2
    return SymTridiag(diag, off)


@numba.njit(cache=True)
def _sturm_kernel(diag, offsq, sigma):
    # d_k = p_k / p_{k-1}; eigenvalues above sigma <-> positive ratios.
    count = 0
    d = diag[0] - sigma
    if d == 0.0:
        d = -1e-300
    if d > 0.0:
        count += 1
    for k in range(1, len(diag)):
        d = (diag[k] - sigma) - offsq[k - 1] / d
        if d == 0.0:
            d = -1e-300
        if d > 0.0:
            count += 1
    return count


def sturm_count(T: SymTridiag, sigma: float) -> int:
    """Number of eigenvalues of T strictly greater than ``sigma``."""
    return int(_sturm_kernel(T.diag, T.offdiag**2, float(sigma)))


@numba.njit(cache=True)
def _bisect_kernel(diag, offsq, lo, hi, above, rel_tol):
    # Invariant: count(lo) >= above > count(hi).
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * abs(mid) or mid <= lo or mid >= hi:
            return mid
        if _sturm_kernel(diag, offsq, mid) >= above:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sturm_bisect(T: SymTridiag, lo: float, hi: float, which: int, rel_tol: float) -> float:
    """Eigenvalue of rank ``which`` (0 = smallest) in the bracket (lo, hi).

    Bisects until the bracket width is at most ``rel_tol * |midpoint|`` (or
    until the bracket cannot be split in floating point) and returns the
    midpoint.
    """
    if not lo < hi:
        raise BracketError(f"empty bracket ({lo}, {hi})")
    if not 0 <= which < T.size:
        raise BracketError(f"rank {which} outside 0..{T.size - 1}")
    above = T.size - which
    offsq = T.offdiag**2
    if _sturm_kernel(T.diag, offsq, lo) < above or _sturm_kernel(T.diag, offsq, hi) >= above:
        raise BracketError(
            f"eigenvalue of rank {which} is not inside ({lo!r}, {hi!r})"
        )
    return float(_bisect_kernel(T.diag, offsq, float(lo), float(hi), above, float(rel_tol)))


@numba.njit(cache=True)
def _shifted_solve(diag, off, shift, rhs, x):
    """Solve (T - shift I) x = rhs by Gaussian elimination with partial pivoting.

    Returns False on an exactly zero pivot.
    """
    n = len(diag)
    # Row i of U holds u0[i] (diagonal), u1[i], u2[i] (two superdiagonals).
    u0 = np.empty(n)
    u1 = np.zeros(n)
    u2 = np.zeros(n)
    b = rhs.copy()
    a0 = diag[0] - shift
    a1 = off[0] if n > 1 else 0.0
    a2 = 0.0
    for i in range(n - 1):
        # Current row i: (a0, a1, a2); next row i+1: (off[i], diag[i+1]-shift, off[i+1]).
        s0 = off[i]
        s1 = diag[i + 1] - shift
        s2 = off[i + 1] if i + 1 < n - 1 else 0.0
        bi = b[i]
        bn = b[i + 1]
        if abs(s0) > abs(a0):
            a0, s0 = s0, a0
            a1, s1 = s1, a1
            a2, s2 = s2, a2
            bi, bn = bn, bi
        if a0 == 0.0:
            return False
        m = s0 / a0
        u0[i] = a0
        u1[i] = a1
        u2[i] = a2
        b[i] = bi
        a0 = s1 - m * a1
        a1 = s2 - m * a2
        a2 = 0.0
        b[i + 1] = bn - m * bi
    if a0 == 0.0:
        return False
    u0[n - 1] = a0
    x[n - 1] = b[n - 1] / a0
    if n > 1:
        x[n - 2] = (b[n - 2] - u1[n - 2] * x[n - 1]) / u0[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (b[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / u0[i]
    return True


def _start_vector(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.uniform(-1.0, 1.0, n)
    return v / np.linalg.norm(v)


def inverse_power(
    T: SymTridiag,
    shift: float,
    seed: int = 1,
    *,
    track: int | None = None,
    max_iter: int = MAX_INVERSE_POWER_ITERATIONS,
) -> EigenPair:
    """Refine the eigenpair closest to ``shift`` by shifted inverse power.

    The shift follows the Rayleigh quotient until it stagnates to 1e-8
    relative and is frozen afterwards. Iteration stops once the residual is
    below ``1e-12 * max(1, |value|)`` and the eigenvalue is stagnant to 1e-15
    relative. If ``track`` is given, coordinate ``track`` of the eigenvector
    must also settle to 1e-14 relative (or drop below ``UNDERFLOW_FLOOR``);
    tiny coordinates converge more slowly than the vector as a whole.
    """
    n = T.size
    w = _start_vector(n, seed)
    x = np.empty(n)
    sigma = float(shift)
    value = sigma
    frozen = False
    prev_value = None
    prev_tracked = None
    residual = math.inf
    for it in range(1, max_iter + 1):
        ok = _shifted_solve(T.diag, T.offdiag, sigma, w, x)
        while not ok:
            sigma += 1e-13 * (1.0 + abs(sigma))
            ok = _shifted_solve(T.diag, T.offdiag, sigma, w, x)
        norm = np.linalg.norm(x)
        if not np.isfinite(norm) or norm == 0.0:
            raise ConvergenceError("inverse power produced a non-finite iterate")
        w = x / norm
        # Fix the sign so successive iterates are comparable.
        pivot = int(np.argmax(np.abs(w)))
        if w[pivot] < 0:
            w = -w
        Tw = T.matvec(w)
        value = float(w @ Tw)
        residual = float(np.linalg.norm(Tw - value * w))
        tracked = w[track] if track is not None else 0.0
        scale = max(1.0, abs(value))
        stagnant = prev_value is not None and abs(value - prev_value) <= 1e-15 * scale
        settled = track is None or prev_tracked is not None and (
            abs(tracked - prev_tracked) <= 1e-14 * abs(tracked) or abs(tracked) < UNDERFLOW_FLOOR
        )
        if residual <= 1e-12 * scale and stagnant and settled:
            return EigenPair(value, w, residual, it)
        if not frozen:
            if prev_value is not None and abs(value - prev_value) < 1e-8 * scale:
                frozen = True
            sigma = value
        prev_value = value
        prev_tracked = tracked
    raise ConvergenceError(
        f"inverse power did not converge in {max_iter} iterations "
        f"(residual {residual:.3e}, value {value!r})"
    )


def has_rank(T: SymTridiag, value: float, rank: int, rel: float = 1e-9) -> bool:
    """True if ``value`` is (to ``rel``) the eigenvalue of the given rank."""
    delta = rel * max(1.0, abs(value))
    above = T.size - rank
    return sturm_count(T, value - delta) >= above > sturm_count(T, value + delta)


def eigenpair_by_rank(
    T: SymTridiag, lo: float, hi: float, rank: int, seed: int = 1, *, seed_tol: float = 1e-4
) -> EigenPair:
    """Eigenpair of the given rank: coarse bisection, then inverse power.

    If inverse power drifts to a neighbouring eigenvalue the bisection is
    repeated to near machine precision and the refinement retried.
    """
    pair = inverse_power(T, sturm_bisect(T, lo, hi, rank, seed_tol), seed)
    if has_rank(T, pair.value, rank):
        return pair
    pair = inverse_power(T, sturm_bisect(T, lo, hi, rank, 1e-13), seed)
    if not has_rank(T, pair.value, rank):
        raise ConsistencyError(f"inverse power left eigenvalue rank {rank}")
    return pair


@numba.njit(cache=True)
def _leading_ratios(diag, off, value, m, out):
    # out[i] = v[i] / v[i+1] from rows 0..m-1 of (T - value) v = 0, computed upward.
    prev = 0.0
    for i in range(m):
        denom = diag[i] - value
        if i > 0:
            denom += off[i - 1] * prev
        prev = -off[i] / denom
        out[i] = prev


def refine_leading_coordinates(T: SymTridiag, value: float, vector: np.ndarray, frac: float = 1e-3) -> np.ndarray:
    """Recompute the small leading coordinates of an eigenvector.

    Coordinates before the first one of size ``frac * max|v|`` are rebuilt
    from the eigen-equation's ratio recurrence, which is stable in the
    direction of growth. Their relative accuracy then no longer depends on
    how many inverse power iterations were run.
    """
    big = np.abs(vector) >= frac * np.max(np.abs(vector))
    m = int(np.argmax(big))
    if m == 0:
        return vector
    ratios = np.empty(m)
    _leading_ratios(T.diag, T.offdiag, float(value), m, ratios)
    out = vector.copy()
    for i in range(m - 1, -1, -1):
        out[i] = ratios[i] * out[i + 1]
    return out

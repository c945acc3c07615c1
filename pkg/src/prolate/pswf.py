"""Prolate spheroidal wave functions: eigenvalues, evaluation, bounds.

``solve(c, n)`` returns the Legendre coefficients of psi_n together with the
differential-operator eigenvalue chi_n. The integral-operator eigenvalue
lambda_n is then read off from a single coefficient, which the inverse power
iteration delivers to high relative accuracy even when it is tiny.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError, PreconditionError
from .legendre import legendre_series
from .tridiag import UNDERFLOW_FLOOR, build_prolate_matrix, eigenpair_by_rank, refine_leading_coordinates

SEED_REL_TOL = 1e-4


@dataclass(frozen=True)
class PswfSolution:
    """psi_n for band limit c, stored by its Legendre coefficients.

    ``beta[i]`` is the coefficient of the normalized Legendre polynomial of
    degree ``n % 2 + 2 i``; coefficients of the other parity vanish.
    """

    c: float
    n: int
    chi: float
    beta: np.ndarray
    N: int
    iterations: int = 0

    @property
    def parity(self) -> int:
        return self.n % 2

    @property
    def degrees(self) -> np.ndarray:
        return self.parity + 2 * np.arange(self.N)

    @property
    def alpha(self) -> np.ndarray:
        """Coefficients with respect to the unnormalized P_k."""
        return self.beta * np.sqrt(self.degrees + 0.5)


@dataclass(frozen=True)
class LambdaValue:
    """lambda_n = i**n * magnitude, with ``phase_exponent = n % 4``."""

    magnitude: float
    phase_exponent: int

    @property
    def complex(self) -> complex:
        return (1j**self.phase_exponent) * self.magnitude

    @property
    def signed_real(self) -> float:
        """lambda_n for even n, lambda_n / i for odd n."""
        return self.magnitude * (-1.0 if self.phase_exponent in (2, 3) else 1.0)


def truncation_size(c: float, n: int) -> int:
    return math.ceil(1.1 * c + n + 1000)


def _check_cn(c, n):
    if not c > 0:
        raise DomainError(f"band limit must be positive, got {c!r}")
    if n < 0 or int(n) != n:
        raise DomainError(f"prolate index must be a non-negative integer, got {n!r}")


def solve(c: float, n: int, *, seed: int = 1) -> PswfSolution:
    """Compute chi_n and the Legendre coefficients of psi_n.

    Sturm bisection on the matrix of the right parity locates chi_n inside
    (n(n+1), n(n+1) + c^2) to 1e-4 relative accuracy; shifted inverse power
    then polishes the eigenpair, and the tiny leading coefficients are
    recomputed from the three-term recurrence.
    """
    _check_cn(c, n)
    c = float(c)
    n = int(n)
    N = truncation_size(c, n)
    parity = n % 2
    T = build_prolate_matrix(c, parity, N)
    rank = n // 2
    lo = n * (n + 1.0)
    hi = lo + c * c
    # Rounding can collapse the bracket for tiny c.
    pad = 1e-10 * (1.0 + hi)
    lo, hi = lo - pad, hi + pad
    pair = eigenpair_by_rank(T, lo, hi, rank, seed, seed_tol=SEED_REL_TOL)
    # The small leading coefficients carry lambda_n; rebuild them to full relative accuracy.
    beta = refine_leading_coordinates(T, pair.value, pair.vector)
    # psi_n(1) = sum(alpha) > 0 fixes the sign.
    if np.sum(beta * np.sqrt(parity + 2 * np.arange(N) + 0.5)) < 0:
        beta = -beta
    return PswfSolution(c, n, pair.value, beta, N, pair.iterations)


def _check_x(x):
    if np.any(~(np.abs(np.asarray(x, dtype=float)) <= 1.0)):
        raise DomainError("psi_n is evaluated on [-1, 1]")


def psi_and_dpsi(sol: PswfSolution, x):
    """psi_n(x) and psi_n'(x) by summing the Legendre series."""
    _check_x(x)
    return legendre_series(sol.alpha, sol.parity, x)


def psi(sol: PswfSolution, x):
    return psi_and_dpsi(sol, x)[0]


def dpsi(sol: PswfSolution, x):
    return psi_and_dpsi(sol, x)[1]


def lambda_value(sol: PswfSolution) -> LambdaValue:
    """Eigenvalue of the finite Fourier transform restricted to [-1, 1].

    Even n: lambda = sqrt(2) beta_0 / psi(0). Odd n: lambda = i c sqrt(2/3)
    beta_1 / psi'(0). The sign of the real factor must agree with i**n.
    A leading coefficient below the double range yields magnitude 0.
    """
    n = sol.n
    if abs(sol.beta[0]) < UNDERFLOW_FLOOR:
        return LambdaValue(0.0, n % 4)
    if n % 2 == 0:
        real = math.sqrt(2.0) * sol.beta[0] / psi(sol, 0.0)
        expected = (-1) ** (n // 2)
    else:
        real = math.sqrt(2.0 / 3.0) * sol.c * sol.beta[0] / dpsi(sol, 0.0)
        expected = (-1) ** ((n - 1) // 2)
    if real != 0.0 and math.copysign(1.0, real) != expected:
        raise ConsistencyError(
            f"lambda_{n} has sign {real:+.5e}, expected sign {expected:+d}"
        )
    return LambdaValue(float(abs(real)), n % 4)


def mu(sol: PswfSolution) -> float:
    """Eigenvalue of the sinc-kernel operator, (c / 2 pi) |lambda_n|^2."""
    return sol.c / (2.0 * math.pi) * lambda_value(sol).magnitude ** 2


def lambda_upper_bound(c: float, n: int, delta: float) -> float:
    """Upper bound 7056 c exp(-delta (1 - delta / (2 pi c))) on |lambda_n|."""
    failed = []
    if not c > 22:
        failed.append("c > 22")
    if not 3 < delta < math.pi * c / 16:
        failed.append("3 < delta < pi c / 16")
    if not (c > 0 and delta > 0) or not (
        n > 2 * c / math.pi + 2 / math.pi**2 * delta * math.log(4 * math.e * math.pi * c / delta)
    ):
        failed.append("n > 2c/pi + (2/pi^2) delta log(4 e pi c / delta)")
    if failed:
        raise PreconditionError("bound hypotheses violated: " + "; ".join(failed), failed)
    return 7056.0 * c * math.exp(-delta * (1.0 - delta / (2.0 * math.pi * c)))


@functools.lru_cache(maxsize=4096)
def lambda_and_chi(c: float, m: int) -> tuple[float, float]:
    """(|lambda_m|, chi_m), memoized for the index scans."""
    sol = solve(c, m)
    return lambda_value(sol).magnitude, sol.chi


def _scan_min(c, predicate):
    # Smallest m with predicate(m), assuming predicate is monotone in m.
    m = int(math.floor(2 * c / math.pi))
    if predicate(m):
        while m > 0 and predicate(m - 1):
            m -= 1
        return m
    while not predicate(m):
        m += 1
    return m


def n1_for_precision(c: float, eps: float) -> int:
    """Smallest m with |lambda_m| < eps."""
    return _scan_min(float(c), lambda m: lambda_and_chi(float(c), m)[0] < eps)


def _check_n3(c, eps):
    failed = []
    if not c > 30:
        failed.append("c > 30")
    if not 0 < eps < 1:
        failed.append("0 < eps < 1")
    elif c > 0:
        window = 5 * math.pi / (4 * math.sqrt(6)) * c - 3 * math.log(c) - math.log(6**5 * 14340)
        if not math.log(1 / eps) < window:
            failed.append("log(1/eps) < (5 pi / 4 sqrt 6) c - 3 log c - log(6^5 14340)")
    if failed:
        raise PreconditionError("n3 hypotheses violated: " + "; ".join(failed), failed)


def n_for_precision(c: float, eps: float, rule: str = "n1") -> int:
    """Prolate index guaranteeing (or observed to give) accuracy ``eps``.

    ``n1`` scans |lambda_m| upward from floor(2c/pi); ``n3`` and ``n4`` are
    the closed-form sizes from the quadrature error theorems.
    """
    if rule == "n1":
        if not c > 0 or not 0 < eps < 1:
            raise PreconditionError("n1 needs c > 0 and 0 < eps < 1", ["c > 0", "0 < eps < 1"])
        return n1_for_precision(c, eps)
    if rule == "n3":
        _check_n3(c, eps)
        alpha = 4 * math.sqrt(6) / math.pi * (
            math.log(1 / eps) + 3 * math.log(c) + math.log(6**5 * 14340)
        )
        nu = 2 * c / math.pi + alpha / (2 * math.pi) * math.log(16 * math.e * c / alpha)
        return math.floor(nu)
    if rule == "n4":
        failed = [h for h, ok in (("c > 60", c > 60), ("0 < eps < 1", 0 < eps < 1)) if not ok]
        if failed:
            raise PreconditionError("n4 hypotheses violated: " + "; ".join(failed), failed)
        return math.floor(
            2 * c / math.pi
            + (10 + 1.5 * math.log(c) + 0.5 * math.log(1 / eps)) * math.log(c / 2)
        )
    raise DomainError(f"unknown rule {rule!r}; expected n1, n3 or n4")


def error_bound_value(lam: float, chi: float) -> float:
    """|lambda| (24 log(1/|lambda|) + 6 chi)."""
    if lam == 0.0:
        return 0.0
    return lam * (24.0 * math.log(1.0 / lam) + 6.0 * chi)


def n2_for_precision(c: float, eps: float) -> int:
    """Smallest m whose rigorous quadrature error bound is below ``eps``."""
    if not c > 30:
        raise PreconditionError("n2 needs c > 30", ["c > 30"])
    c = float(c)

    def ok(m):
        lam, chi = lambda_and_chi(c, m)
        return lam > 0 and error_bound_value(lam, chi) < eps

    return _scan_min(c, ok)

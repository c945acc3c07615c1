import math

import numpy as np
import pytest

from prolate.errors import DomainError, PreconditionError
from prolate.oracle import composite_gauss
from prolate.tridiag import build_prolate_matrix
from prolate.pswf import (
    LambdaValue,
    lambda_upper_bound,
    lambda_value,
    mu,
    n2_for_precision,
    n_for_precision,
    psi,
    psi_and_dpsi,
    solve,
    truncation_size,
)

# Characteristic values from scipy.special.pro_cv(0, n, c).
CHI_REFERENCE = [
    (1, 0, 0.31900005514689334),
    (1, 3, 12.514462145094022),
    (10, 0, 9.228304297249906),
    (10, 5, 89.73926723888567),
    (10, 12, 208.13838934706132),
    (20, 20, 632.3442213326603),
]


@pytest.mark.parametrize("c,n,chi", CHI_REFERENCE)
def test_chi_matches_reference(c, n, chi):
    assert solve(c, n).chi == pytest.approx(chi, rel=1e-13)


@pytest.mark.parametrize(
    "c,n,expected",
    [(50, 40, 0.12915e-3), (40, 41, 0.69857e-8), (1000, 682, 0.60352e-15), (10000, 6393, 0.43299e-7)],
)
def test_reference_lambda(c, n, expected):
    assert lambda_value(solve(c, n)).magnitude == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize("c,n", [(0.5, 3), (5, 0), (5, 7), (50, 10), (50, 40), (300, 150), (300, 400)])
def test_chi_bracket(c, n):
    chi = solve(c, n).chi
    assert n * (n + 1) < chi < n * (n + 1) + c * c
    if n >= 2 * c / math.pi:
        assert chi > c * c


def test_tiny_band_limit_bracket_collapses():
    # n(n+1) + c^2 rounds to n(n+1) in double precision.
    assert solve(1e-8, 3).chi == pytest.approx(12.0, rel=1e-15)


def test_normalisation_sign_and_parity():
    for n in (0, 1, 6, 41):
        sol = solve(40, n)
        assert np.linalg.norm(sol.beta) == pytest.approx(1.0, rel=1e-14)
        assert psi(sol, 1.0) > 0
        x = np.array([0.1, 0.45, 0.8])
        assert np.allclose(psi(sol, -x), (-1) ** n * psi(sol, x), atol=1e-13)
        assert sol.N == truncation_size(40, n)


def test_small_band_limit_is_legendre():
    sol = solve(1e-8, 4)
    x = np.linspace(-1, 1, 11)
    p4 = (35 * x**4 - 30 * x**2 + 3) / 8
    np.testing.assert_allclose(psi(sol, x), math.sqrt(4.5) * p4, atol=1e-12)


def test_orthonormal():
    sols = [solve(30, m) for m in (0, 2, 3, 21)]
    for a in sols:
        for b in sols:
            ip = composite_gauss(lambda t: psi(a, t) * psi(b, t), -1, 1, 30)
            assert ip == pytest.approx(float(a.n == b.n), abs=1e-12)


@pytest.mark.parametrize("n", [0, 1, 4, 9, 30])
def test_integral_operator_eigenvalue(n):
    c = 30.0
    sol = solve(c, n)
    lam = lambda_value(sol).complex
    for x in (-0.4, 0.25, 0.9):
        re = composite_gauss(lambda t: np.cos(c * x * t) * psi(sol, t), -1, 1, 40)
        im = composite_gauss(lambda t: np.sin(c * x * t) * psi(sol, t), -1, 1, 40)
        assert abs(complex(re, im) - lam * psi(sol, x)) <= 1e-11


def test_lambda_phase_and_mu():
    lam = lambda_value(solve(40, 41))
    assert lam.phase_exponent == 1
    assert lam.signed_real > 0
    assert lambda_value(solve(1000, 682)).signed_real < 0
    sol = solve(50, 40)
    assert mu(sol) == pytest.approx(50 / (2 * math.pi) * 0.12915e-3**2, rel=2e-3)
    assert LambdaValue(2.0, 3).complex == pytest.approx(-2j)


def test_underflowing_lambda_reported_as_zero():
    sol = solve(1000, 2800)
    assert lambda_value(sol).magnitude == 0.0


def test_eigenvalues_decrease():
    mags = [lambda_value(solve(20, n)).magnitude for n in range(0, 30)]
    assert all(a > b for a, b in zip(mags, mags[1:]))


def test_domain_errors():
    with pytest.raises(DomainError):
        solve(0.0, 3)
    with pytest.raises(DomainError):
        solve(10.0, -1)
    with pytest.raises(DomainError):
        psi(solve(10.0, 3), 1.2)
    with pytest.raises(DomainError):
        psi_and_dpsi(solve(10.0, 3), np.array([0.0, np.nan]))


@pytest.mark.parametrize("c,n,delta", [(50, 40, 5.0), (1000, 700, 40.0), (250, 200, 20.0)])
def test_upper_bound_holds(c, n, delta):
    assert lambda_value(solve(c, n)).magnitude <= lambda_upper_bound(c, n, delta)


def test_upper_bound_preconditions():
    with pytest.raises(PreconditionError) as err:
        lambda_upper_bound(10, 40, 5.0)
    assert "c > 22" in err.value.hypotheses
    with pytest.raises(PreconditionError) as err:
        lambda_upper_bound(50, 20, 5.0)
    assert any(h.startswith("n > 2c/pi") for h in err.value.hypotheses)
    with pytest.raises(PreconditionError):
        lambda_upper_bound(50, 40, 2.0)


@pytest.mark.parametrize(
    "c,eps,n3,n4", [(250, 1e-10, 277, 303), (500, 1e-25, 520, 583), (2000, 1e-50, 1675, 1818)]
)
def test_closed_form_indices(c, eps, n3, n4):
    assert n_for_precision(c, eps, "n3") == n3
    assert n_for_precision(c, eps, "n4") == n4


def test_scanned_index_is_minimal():
    c, eps = 250, 1e-10
    n1 = n_for_precision(c, eps)
    assert lambda_value(solve(c, n1)).magnitude < eps
    assert lambda_value(solve(c, n1 - 1)).magnitude >= eps
    assert n2_for_precision(c, eps) == 198


def test_index_preconditions():
    with pytest.raises(PreconditionError):
        n_for_precision(20, 1e-10, "n3")
    with pytest.raises(PreconditionError):
        n_for_precision(50, 1e-10, "n4")
    with pytest.raises(PreconditionError):
        n_for_precision(250, 1e-300, "n3")
    with pytest.raises(DomainError):
        n_for_precision(250, 1e-10, "n7")


def _mp_eigenvector(T, shift, sweeps=8):
    # Inverse iteration in 60-digit arithmetic with an unpivoted Thomas solve.
    # Tiny coordinates settle slowly, hence the generous sweep count.
    import mpmath as mp

    mp.mp.dps = 60
    d = [mp.mpf(float(v)) - mp.mpf(shift) for v in T.diag]
    e = [mp.mpf(float(v)) for v in T.offdiag]
    x = [mp.mpf(1)] * len(d)
    for _ in range(sweeps):
        cp, dp = [], []
        for i in range(len(d)):
            denom = d[i] - (e[i - 1] * cp[-1] if i else 0)
            cp.append(e[i] / denom if i < len(e) else 0)
            dp.append((x[i] - (e[i - 1] * dp[-1] if i else 0)) / denom)
        y = [mp.mpf(0)] * len(d)
        for i in range(len(d) - 1, -1, -1):
            y[i] = dp[i] - (cp[i] * y[i + 1] if i + 1 < len(d) else 0)
        norm = mp.sqrt(mp.fsum(v * v for v in y))
        x = [v / norm for v in y]
    return x


@pytest.mark.parametrize("c, n", [(100.0, 150), (60.0, 91)])
def test_leading_coefficients_match_extended_precision(c, n):
    sol = solve(c, n)
    T = build_prolate_matrix(c, n % 2, sol.N)
    ref = _mp_eigenvector(T, sol.chi)
    sign = np.sign(sum(float(r) * b for r, b in zip(ref, sol.beta)))
    for k in range(6):
        assert abs(sol.beta[k] - sign * float(ref[k])) <= 1e-12 * abs(float(ref[k]))
    assert abs(sol.beta[0]) < 1e-20


@pytest.mark.parametrize("c, n", [(50, 40), (1000, 682), (1000, 1400), (1000, 2800)])
def test_inverse_power_iterations(c, n):
    assert 1 <= solve(c, n).iterations <= 5

import numpy as np
import pytest

from prolate.errors import DomainError
from prolate.nodes import find_nodes
from prolate.oracle import cardinal_weight, gauss_legendre
from prolate.pswf import lambda_value, solve
from prolate.reference import WEIGHTS_C40_N41
from prolate.weights import (
    gauss_limit_check,
    gauss_weight_formula,
    phi_series,
    phi_table,
    weights_direct,
    weights_fast,
)

MATRIX = [(40, 41), (50, 40), (100, 80), (250, 184)]


@pytest.fixture(scope="module")
def c40():
    sol = solve(40, 41)
    return sol, find_nodes(sol)


def test_reference_weights(c40):
    sol, table = c40
    w = weights_direct(sol, table)
    np.testing.assert_allclose(w[:21], WEIGHTS_C40_N41, rtol=1e-11)
    assert w[0] == pytest.approx(0.7602931556894e-02, rel=1e-12)


@pytest.mark.parametrize("c,n", MATRIX)
def test_fast_matches_direct(c, n):
    sol = solve(c, n)
    table = find_nodes(sol)
    fast = weights_fast(sol, table)
    direct = weights_direct(sol, table)
    assert np.max(np.abs(fast - direct)) <= 1e-13
    lam = lambda_value(sol).magnitude
    assert abs(fast.sum() - 2) <= 100 * lam + 1e-13
    assert np.all(fast > 0)
    np.testing.assert_allclose(fast, fast[::-1], atol=1e-12, rtol=0)


@pytest.mark.parametrize("c,n", [(10, 8), (10, 7), (30, 20)])
def test_positive_for_small_n(c, n):
    sol = solve(c, n)
    assert np.all(weights_fast(sol, find_nodes(sol)) > 0)


def test_phi_table_symmetry(c40):
    sol, table = c40
    phi = phi_table(sol, table)
    assert phi.M_phi == 60
    np.testing.assert_allclose(phi.phi, (-1) ** 42 * phi.phi[::-1], atol=1e-12, rtol=0)
    assert phi.dphi_at_tmin == pytest.approx(phi_series(sol, 0.0)[1])


def test_phi_parity():
    for n in (40, 41):
        sol = solve(50, n)
        a, b = phi_series(sol, 0.37)[0], phi_series(sol, -0.37)[0]
        assert b == pytest.approx((-1) ** (n + 1) * a, rel=1e-13)
    # Even n: Phi is odd and vanishes at 0.
    assert phi_series(solve(50, 40), 0.0)[0] == 0.0


@pytest.mark.parametrize("n", [40, 41])
@pytest.mark.parametrize("t", [-0.5, -0.2, 0.2, 0.5])
def test_phi_inhomogeneous_equation(n, t):
    sol = solve(50, n)
    c2 = sol.c**2
    alpha = sol.alpha
    a0 = alpha[0] if n % 2 == 0 else 0.0
    a1 = alpha[0] if n % 2 == 1 else 0.0
    h = 1e-5
    val, der = phi_series(sol, t)
    second = (phi_series(sol, t + h)[1] - phi_series(sol, t - h)[1]) / (2 * h)
    resid = (1 - t * t) * second - 2 * t * der + (sol.chi - c2 * t * t) * val + c2 * (a0 * t + a1 / 3)
    scale = sol.chi * max(abs(val), 1.0)
    assert abs(resid) <= 1e-6 * scale


def test_center_ratio_relation(c40):
    sol, table = c40
    w = weights_fast(sol, table)
    t, d = table.nodes, table.dpsi
    predicted = w[20] * d[20] ** 2 / (d**2 * (1 - t * t))
    assert np.max(np.abs(w - predicted)) <= 1e-8
    assert np.all(np.diff(w[:21]) > 0)


def test_gauss_limit():
    assert gauss_limit_check(5) <= 1e-6
    assert gauss_limit_check(12) <= 1e-6
    sol = solve(1e-8, 5)
    table = find_nodes(sol)
    w = weights_fast(sol, table)
    np.testing.assert_allclose(w[2:], [0.5688888889, 0.4786286705, 0.2369268851], atol=1e-6)
    np.testing.assert_allclose(gauss_weight_formula(table.nodes), gauss_legendre(5)[1], atol=1e-12)
    with pytest.raises(DomainError):
        gauss_limit_check(0)


def test_direct_weights_match_cardinal_integrals():
    sol = solve(10, 12)
    table = find_nodes(sol)
    w = weights_direct(sol, table)
    oracle = [cardinal_weight(sol, t, d) for t, d in zip(table.nodes, table.dpsi)]
    assert np.max(np.abs(w - oracle)) <= 1e-9


def test_phi_domain():
    with pytest.raises(DomainError):
        phi_series(solve(10, 3), 1.0)

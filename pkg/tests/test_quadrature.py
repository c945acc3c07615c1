import math

import numpy as np
import pytest

from prolate.errors import DomainError, PreconditionError
from prolate.pswf import lambda_value, n_for_precision, psi, solve
from prolate.quadrature import (
    build_rule,
    build_rule_parts,
    delta_psi,
    error_bound,
    exact_psi_integral,
    exp_error,
    integrate,
    max_delta,
    partition_bound,
    partition_residual,
    sweep_delta,
)
from prolate.reference import PSI_ERRORS_C50_N40


@pytest.fixture(scope="module")
def rule50():
    return build_rule(50, 40)


def test_rule_fields(rule50):
    assert rule50.n == 40 and len(rule50.nodes) == 40
    assert rule50.lam.magnitude == pytest.approx(0.12915e-3, rel=1e-3)
    assert np.all(rule50.weights > 0)
    assert rule50 == build_rule(50, 40)


def test_integrate_basic():
    rule = build_rule(40, 41)
    assert integrate(rule, lambda t: np.ones_like(t)) == pytest.approx(2, abs=1e-7)
    assert abs(integrate(rule, lambda t: t)) <= 1e-14
    assert integrate(rule, lambda t: np.cos(20 * t)) == pytest.approx(2 * math.sin(20) / 20, abs=1e-13)
    z = integrate(rule, lambda t: np.exp(20j * t))
    assert isinstance(z, complex)
    assert abs(z - 2 * math.sin(20) / 20) <= 1e-13
    # Scalar-only callbacks are evaluated node by node.
    assert integrate(rule, lambda t: math.cos(20 * t)) == pytest.approx(2 * math.sin(20) / 20, abs=1e-13)


def test_psi_errors_against_table(rule50):
    bound = error_bound(rule50)
    for m, (integral, delta) in PSI_ERRORS_C50_N40.items():
        sol = solve(50, m)
        assert exact_psi_integral(sol) == pytest.approx(integral, rel=1e-4)
        d = delta_psi(rule50, m, sol)
        if m >= 18:
            assert abs(d - delta) <= max(1e-13, 0.05 * delta)
        else:
            assert d <= 1e-13
        assert d <= bound


def test_odd_psi_errors_vanish(rule50):
    for m in (1, 3, 17, 39):
        assert delta_psi(rule50, m, solve(50, m)) <= 1e-13


def test_errors_grow_in_even_m(rule50):
    ds = [delta_psi(rule50, m, solve(50, m)) for m in range(18, 40, 2)]
    assert all(a < b for a, b in zip(ds, ds[1:]))
    assert max(ds) <= rule50.lam.magnitude


def test_delta_psi_mismatch(rule50):
    with pytest.raises(DomainError):
        delta_psi(rule50, 4, solve(40, 4))
    with pytest.raises(DomainError):
        delta_psi(rule50, 5, solve(50, 4))


def test_exp_error(rule50):
    assert exp_error(rule50, 0.0) == pytest.approx(abs(2 - rule50.weights.sum()), abs=1e-15)
    assert sweep_delta(rule50, 0.4, 0.4) == exp_error(rule50, 0.4)
    assert exp_error(rule50, np.array([0.1, 0.2])).shape == (2,)
    with pytest.raises(DomainError):
        exp_error(rule50, -0.1)
    with pytest.raises(DomainError):
        sweep_delta(rule50, 1.0, 0.5)


def test_band_limit_sweeps_at_machine_precision():
    rule = build_rule(1000, 682)
    assert sweep_delta(rule, 0.0, 1.0) <= 1e-13
    assert sweep_delta(rule, 1.0, 2.0, open_lo=True) <= 1e-13


def test_exact_below_band_limit_when_lambda_large():
    rule = build_rule(1000, 650)
    lam = rule.lam.magnitude
    assert lam > 1e-7
    assert sweep_delta(rule, 0.0, 1.0, 501) <= max(1e-13, 100 * lam**2 * math.sqrt(650))
    d2 = sweep_delta(rule, 1.0, 2.0, 501, open_lo=True)
    assert lam / 100 <= d2 <= 100 * lam


def test_error_bound_preconditions():
    with pytest.raises(PreconditionError) as err:
        build_rule(10, 2)
    assert "n > 2c/pi + 5" in err.value.hypotheses
    rule = build_rule(10, 12, strict=False)
    with pytest.raises(PreconditionError):
        error_bound(rule)


def test_bound_decreases_with_n():
    bounds = [error_bound(build_rule(250, n)) for n in (184, 198, 216)]
    assert bounds[0] > bounds[1] > bounds[2]


def test_index_selection_coherence():
    c, eps = 250, 1e-10
    assert max_delta(build_rule(c, 198)) < eps
    n1 = n_for_precision(c, eps)
    assert max_delta(build_rule(c, n1)) < eps


def test_partition_of_unity():
    rule, sol, table = build_rule_parts(50, 40)
    t = np.linspace(table.nodes[0], table.nodes[-1], 101)
    resid = np.max(np.abs(partition_residual(sol, table, t)))
    max_psi = np.max(np.abs(psi(sol, np.linspace(-1, 1, 2001))))
    assert resid <= partition_bound(rule.lam.magnitude, rule.chi, max_psi)
    assert partition_residual(sol, table, table.nodes[3])[0] == 0.0

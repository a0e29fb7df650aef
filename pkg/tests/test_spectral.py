import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import epifront as ef
from epifront.errors import PreconditionFailed
from epifront.spectral import assemble_operator, fitted_nodes

from conftest import make_config


def test_fitted_nodes_cover_interval():
    x, dx = fitted_nodes(2.0, 0.05)
    assert x[0] == 0.0 and x[-1] == pytest.approx(2.0)
    assert dx == pytest.approx(0.05)
    x, dx = fitted_nodes(0.02, 0.05)
    assert x.size == 2 and x[-1] == pytest.approx(0.02)


def test_operator_is_linear_and_zero_maps_to_zero(p0):
    op = assemble_operator(p0, 3.0)
    z = np.zeros(2 * op.n)
    assert np.all(op.apply_flat(z) == 0.0)
    rng = np.random.default_rng(3)
    f = rng.uniform(-1, 1, 2 * op.n)
    g = rng.uniform(-1, 1, 2 * op.n)
    assert np.allclose(op.apply_flat(2.0 * f - 0.5 * g), 2.0 * op.apply_flat(f) - 0.5 * op.apply_flat(g), atol=1e-13)


@pytest.mark.parametrize("l", [0.5, 2.0, 10.0])
def test_constant_test_function_inequalities(p0, l):
    # discrete analogue of the proof inequalities: L[(theta_B,1)] >= gamma_B (theta_B,1),
    # L[(theta_A,1)] <= gamma_A (theta_A,1) nodewise
    d = ef.scalar_diagnostics(p0)
    op = assemble_operator(p0, l)
    ones = np.ones(op.n)
    lo1, lo2 = op.apply(d.thetaB * ones, ones)
    assert np.all(lo1 >= d.gammaB * d.thetaB - 1e-12)
    assert np.all(lo2 >= d.gammaB - 1e-12)
    hi1, hi2 = op.apply(d.thetaA * ones, ones)
    assert np.all(hi1 <= d.gammaA * d.thetaA + 1e-12)
    assert np.all(hi2 <= d.gammaA + 1e-12)


def test_limits_toward_gamma_bounds(p0):
    d = ef.scalar_diagnostics(p0)
    lam_small = ef.principal_eigen(p0, 0.01).lambda_p
    assert d.gammaB < lam_small < d.gammaB + 0.05
    lam_large = ef.principal_eigen(p0, 38.0).lambda_p
    assert d.gammaA - 0.05 < lam_large < d.gammaA


def test_monotone_in_length_and_strict_bounds(p0):
    d = ef.scalar_diagnostics(p0)
    lams = [ef.principal_eigen(p0, l).lambda_p for l in (1.0, 2.0, 4.0, 8.0)]
    assert all(a < b for a, b in zip(lams, lams[1:]))
    assert all(d.gammaB < lam < d.gammaA for lam in lams)


def test_translation_invariance(p0):
    base = ef.principal_eigen(p0, 3.0)
    for origin in (0.7, 5.3, 11.0):
        shifted = ef.principal_eigen(p0, 3.0, origin=origin)
        assert abs(shifted.lambda_p - base.lambda_p) <= 1e-10


def test_restart_invariance(p0):
    a = ef.principal_eigen(p0, 2.0)
    rng = np.random.default_rng(11)
    start = rng.uniform(0.5, 2.0, 2 * a.phi1.shape[0])
    b = ef.principal_eigen(p0, 2.0, start=start)
    assert abs(a.lambda_p - b.lambda_p) <= 1e-8
    assert np.max(np.abs(a.phi1 - b.phi1)) <= 1e-6
    assert np.max(np.abs(a.phi2 - b.phi2)) <= 1e-6


def test_eigen_result_contract(p0):
    res = ef.principal_eigen(p0, 2.0)
    assert np.all(res.phi1 > 0) and np.all(res.phi2 > 0)
    assert max(res.phi1.max(), res.phi2.max()) == pytest.approx(1.0)
    assert res.residual <= p0.numerics.eig_tol


def test_power_matches_lanczos(p0):
    pw = ef.principal_eigen(p0, 6.0, method="power")
    lz = ef.principal_eigen(p0, 6.0, method="lanczos")
    assert abs(pw.lambda_p - lz.lambda_p) <= 1e-9
    assert np.max(np.abs(pw.phi1 - lz.phi1)) <= 1e-6


def test_dense_oracle_small_grids():
    rng = np.random.default_rng(0)
    families = ["triangle", "truncated_gaussian", "compact_bump"]
    for trial in range(10):
        cfg = make_config(
            d1=rng.uniform(0.3, 3.0),
            d2=rng.uniform(0.3, 3.0),
            a=rng.uniform(0.3, 2.0),
            b=rng.uniform(0.3, 2.0),
            p=rng.uniform(0.3, 3.0),
            q=rng.uniform(0.3, 3.0),
            r=rng.uniform(0.3, 3.0),
            s=rng.uniform(0.3, 3.0),
            kernel=(families[trial % 3], rng.uniform(0.5, 2.0)),
        )
        l = 3 * cfg.dx  # four nodes per component
        dense = assemble_operator(cfg, l).as_dense()
        oracle = float(np.max(np.linalg.eigvals(dense).real))
        mine = ef.principal_eigen(cfg, l, method="power").lambda_p
        assert abs(mine - oracle) <= 1e-8


@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=25, deadline=None)
def test_collatz_wielandt_sandwich(p0, seed):
    # any positive test function phi sandwiches lambda_p between the min and
    # max nodewise ratio of the shifted operator action
    op = assemble_operator(p0, 1.5)
    sigma = op.shift
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0.2, 3.0, 2 * op.n)
    y = op.apply_flat(phi) + sigma * phi
    ratios = y / phi
    lam = ef.principal_eigen(p0, 1.5).lambda_p + sigma
    assert np.min(ratios) - 1e-8 <= lam <= np.max(ratios) + 1e-8


def test_critical_length_p0(p0, p0_lstar):
    lam_lo = ef.principal_eigen(p0, p0_lstar * 0.99).lambda_p
    lam_hi = ef.principal_eigen(p0, p0_lstar * 1.01).lambda_p
    assert lam_lo < 0.0 < lam_hi
    assert abs(ef.principal_eigen(p0, p0_lstar).lambda_p) <= 1e-6


def test_critical_length_not_applicable():
    res = ef.critical_length(make_config(p=1.0, r=1.0))  # R0 = 1
    assert not res.applicable and res.lstar is None
    res = ef.critical_length(make_config(d1=1.0, d2=1.0))  # Rstar = 1
    assert not res.applicable and res.lstar is None


def test_grid_refinement_second_order(p0):
    from dataclasses import replace
    from epifront.config import NumericsConfig

    lams = []
    for dx in (0.1, 0.05, 0.025):
        cfg = replace(p0, numerics=NumericsConfig(dx=dx))
        lams.append(ef.principal_eigen(cfg, 4.0).lambda_p)
    d1 = abs(lams[0] - lams[1])
    d2 = abs(lams[1] - lams[2])
    assert 3.0 <= d1 / d2 <= 5.0


def test_tent_inequality_examples():
    k = ef.KernelSpec("triangle", 1.0)
    assert ef.tent_inequality_check(k, eps=0.5, l=100.0, dx_target=0.5)
    # domain about one support radius: boundary nodes lose too much mass
    assert not ef.tent_inequality_check(k, eps=0.01, l=1.0)
    assert ef.tent_inequality_check(k, eps=0.999, l=5.0)
    with pytest.raises(ValueError):
        ef.tent_inequality_check(k, eps=1.5, l=5.0)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import epifront as ef
from epifront.errors import DomainExceedsGrid
from epifront.grid import NonlocalOperator, trapezoid_weights


def test_grid_cover_and_front_index():
    g = ef.Grid.cover(40.0, 0.05)
    assert g.n_max == 801
    assert g.L_max == pytest.approx(40.0)
    assert g.front_index(1.0) == 20
    assert g.front_index(1.024) == 20
    assert g.front_index(1.026) == 21
    with pytest.raises(DomainExceedsGrid):
        g.front_index(40.5)


def test_weights_nonnegative_and_normalized():
    for family, width in [("triangle", 1.0), ("compact_bump", 1.5), ("truncated_gaussian", 0.5)]:
        k = ef.KernelSpec(family, width)
        dx = 0.05 * k.support_radius
        op = NonlocalOperator(k, dx)
        assert np.all(op.weights >= 0.0)
        total, err = op.row_sum_bounds()
        assert err <= dx * dx  # trapezoid consistency of the lattice sum


def test_apply_zero_and_constant():
    k = ef.KernelSpec("triangle", 1.0)
    op = NonlocalOperator(k, 0.05)
    n = 400
    assert np.all(op.apply(np.zeros(n)) == 0.0)
    g = op.apply(np.ones(n))
    # interior nodes see the whole kernel: quadrature of a normalized density
    interior = g[op.K : n - op.K]
    assert np.max(np.abs(interior - 1.0)) <= 0.05**2


def test_apply_matches_hand_computed_row():
    # unit mass at one interior node: the output is the sampled kernel row times dx
    k = ef.KernelSpec("triangle", 1.0)
    dx = 0.5
    op = NonlocalOperator(k, dx)
    f = np.zeros(5)
    f[2] = 1.0
    g = op.apply(f)
    x = np.arange(5) * dx
    expected = k.eval(x - x[2]) * dx  # J row [0, 0.5, 1, 0.5, 0] times dx
    assert np.allclose(g, expected, atol=1e-15)
    assert g[2] == pytest.approx(k.eval(0.0) * dx)


def test_end_weights_halved():
    k = ef.KernelSpec("triangle", 1.0)
    dx = 0.5
    op = NonlocalOperator(k, dx)
    f = np.zeros(5)
    f[0] = 1.0  # boundary node carries half weight
    g = op.apply(f)
    assert g[0] == pytest.approx(0.5 * k.eval(0.0) * dx)


@given(
    alpha=st.floats(-3.0, 3.0),
    beta=st.floats(-3.0, 3.0),
    seed=st.integers(0, 2**31 - 1),
)
@settings(max_examples=60, deadline=None)
def test_linearity(alpha, beta, seed):
    rng = np.random.default_rng(seed)
    k = ef.KernelSpec("compact_bump", 1.0)
    op = NonlocalOperator(k, 0.1)
    f = rng.uniform(-1, 1, 80)
    g = rng.uniform(-1, 1, 80)
    lhs = op.apply(alpha * f + beta * g)
    rhs = alpha * op.apply(f) + beta * op.apply(g)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


@given(seed=st.integers(0, 2**31 - 1))
@settings(max_examples=40, deadline=None)
def test_nonnegativity_preserved(seed):
    rng = np.random.default_rng(seed)
    op = NonlocalOperator(ef.KernelSpec("triangle", 1.0), 0.1)
    f = rng.uniform(0, 5, 60)
    assert np.all(op.apply(f) >= 0.0)


def test_fft_agrees_with_direct():
    rng = np.random.default_rng(7)
    for family in ("triangle", "truncated_gaussian", "compact_bump"):
        k = ef.KernelSpec(family, 1.0)
        op = NonlocalOperator(k, 0.02)
        f = rng.uniform(0, 2, 3000)
        tau_f = f * trapezoid_weights(f.shape[0])
        direct = op.convolve(tau_f, method="direct")
        fft = op.convolve(tau_f, method="fft")
        assert np.max(np.abs(direct - fft)) <= 1e-12


def test_refinement_second_order():
    # smooth profile: error vs the exact convolution of cos shrinks ~4x per halving
    k = ef.KernelSpec("triangle", 1.0)
    errors = []
    for dx in (0.1, 0.05, 0.025):
        op = NonlocalOperator(k, dx)
        n = int(round(8.0 / dx)) + 1
        x = np.arange(n) * dx
        f = np.cos(x)
        g = op.apply(f)
        # exact: int J(x-y) cos(y) dy over [0,8] equals hat(J)(1) cos(x) deep inside
        #   hat(J)(1) = 2(1-cos 1) for the unit triangle
        interior = slice(op.K, n - op.K)
        exact = 2.0 * (1.0 - np.cos(1.0)) * np.cos(x[interior])
        errors.append(np.max(np.abs(g[interior] - exact)))
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.3)
    assert errors[1] / errors[2] == pytest.approx(4.0, rel=0.3)


def test_front_flux_zero_cases(p0):
    u = np.zeros(21)
    v = np.zeros(21)
    assert ef.front_flux(u, v, 1.0, 0.05, 1.0, 1.0, p0.kernel1, p0.kernel2) == 0.0
    u = np.ones(21)
    v = np.ones(21)
    assert ef.front_flux(u, v, 1.0, 0.05, 0.0, 0.0, p0.kernel1, p0.kernel2) == 0.0


def test_front_flux_single_interior_node(p0):
    # one-term sum with the exact tail at distance 0.5 from the front
    dx = 0.05
    h = 1.0
    n = 21
    u = np.zeros(n)
    i = 10  # x = 0.5, interior so full trapezoid weight
    u[i] = 1.0
    v = np.zeros(n)
    flux = ef.front_flux(u, v, h, dx, 2.0, 1.0, p0.kernel1, p0.kernel2)
    assert flux == pytest.approx(2.0 * p0.kernel1.tail(0.5) * dx)
    assert flux == pytest.approx(2.0 * 0.125 * dx)


@given(
    mu1=st.floats(0.0, 5.0),
    mu2=st.floats(0.0, 5.0),
    bump=st.floats(0.0, 2.0),
    seed=st.integers(0, 2**31 - 1),
)
@settings(max_examples=60, deadline=None)
def test_front_flux_monotone(mu1, mu2, bump, seed):
    rng = np.random.default_rng(seed)
    k = ef.KernelSpec("triangle", 1.0)
    n = 41
    u = rng.uniform(0, 1, n)
    v = rng.uniform(0, 1, n)
    h = 2.0
    dx = 0.05
    base = ef.front_flux(u, v, h, dx, mu1, mu2, k, k)
    assert ef.front_flux(u, v, h, dx, mu1 + 0.5, mu2, k, k) >= base
    assert ef.front_flux(u + bump, v, h, dx, mu1, mu2, k, k) >= base
    assert ef.front_flux(u, v + bump, h, dx, mu1, mu2, k, k) >= base
    assert base >= 0.0

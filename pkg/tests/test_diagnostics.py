import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import epifront as ef
from epifront.diagnostics import gamma_theta, solve_equilibrium_scalar
from epifront.errors import NoPositiveEquilibrium

from conftest import make_config

pos = st.floats(0.1, 10.0)


def test_p0_reference_scalars(p0):
    d = ef.scalar_diagnostics(p0)
    assert d.R0 == pytest.approx(4.0, abs=0)
    assert d.Rstar == pytest.approx(4.0 / 9.0, abs=1e-15)
    # closed forms: (-2 + sqrt(16))/2 and (-6 + sqrt(16))/2
    assert d.gammaA == pytest.approx(1.0, abs=1e-14)
    assert d.gammaB == pytest.approx(-1.0, abs=1e-14)
    assert d.thetaA == pytest.approx(1.0, abs=1e-14)
    assert d.thetaB == pytest.approx(1.0, abs=1e-14)


def test_symmetric_equilibrium(p0):
    d = ef.scalar_diagnostics(p0)
    # symmetry forces u* = v*, and 2u/(1+u) = u gives u* = 1
    assert d.ustar == pytest.approx(1.0, abs=1e-12)
    assert d.vstar == pytest.approx(1.0, abs=1e-12)
    rp = p0.reactions
    scale = max(1.0, d.ustar, d.vstar)
    assert abs(p0.a * d.ustar - rp.H(d.vstar)) <= 1e-12 * scale
    assert abs(p0.b * d.vstar - rp.G(d.ustar)) <= 1e-12 * scale


def test_asymmetric_equilibrium_closed_form():
    # a=1, b=2, p=r=2, q=s=1: G(H(v)) = 4v/(1+3v) = 2v gives v* = 1/3, u* = 1/2
    cfg = make_config(b=2.0)
    u, v = ef.solve_equilibrium(cfg)
    assert u == pytest.approx(0.5, abs=1e-12)
    assert v == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_no_equilibrium_at_critical_r0():
    cfg = make_config(p=1.0, r=1.0)  # R0 = 1 exactly
    with pytest.raises(NoPositiveEquilibrium):
        ef.solve_equilibrium(cfg)
    assert ef.scalar_diagnostics(cfg).ustar is None


def test_equilibrium_invariant_to_scan_step():
    rp = ef.ReactionPair(p=2.0, q=0.7, r=1.8, s=1.3)
    u1, v1 = solve_equilibrium_scalar(rp, 0.9, 1.1, scan_start=1e-6)
    u2, v2 = solve_equilibrium_scalar(rp, 0.9, 1.1, scan_start=0.5e-6)
    assert abs(u1 - u2) <= 1e-10 and abs(v1 - v2) <= 1e-10


@given(d1=pos, d2=pos, a=pos, b=pos, hp0=pos, gp0=pos)
@settings(max_examples=300, deadline=None)
def test_gamma_ordering_and_matrix_identities(d1, d2, a, b, hp0, gp0):
    ga, gb, ta, tb = gamma_theta(d1, d2, a, b, hp0, gp0)
    assert ga > gb  # strict: the diffusion rates push the damped root down
    assert ga > max(-a, -b)
    assert gb > max(-d1 - a, -d2 - b)
    assert ta > 0 and tb > 0

    A = np.array([[-a, hp0], [gp0, -b]])
    B = np.array([[-d1 - a, hp0], [gp0, -d2 - b]])
    # residuals measured against the magnitude of the terms that cancel
    scale = max(1.0, ta, tb, hp0, gp0, abs(ga), abs(gb), a, b, d1, d2)
    assert np.max(np.abs((ga * np.eye(2) - A) @ np.array([ta, 1.0]))) <= 1e-12 * scale
    assert np.max(np.abs((gb * np.eye(2) - B) @ np.array([tb, 1.0]))) <= 1e-12 * scale

    r0 = hp0 * gp0 / (a * b)
    rstar = hp0 * gp0 / ((a + d1) * (b + d2))
    assert rstar < r0
    # sign correspondence, away from the float-degenerate threshold itself
    if abs(r0 - 1.0) > 1e-12:
        assert np.sign(ga) == np.sign(r0 - 1.0)
    if abs(rstar - 1.0) > 1e-12:
        assert np.sign(gb) == np.sign(rstar - 1.0)


@given(d1=pos, d2=pos, a=pos, b=pos, p=pos, q=pos, r=pos, s=pos)
@settings(max_examples=150, deadline=None)
def test_equilibrium_residuals_when_supercritical(d1, d2, a, b, p, q, r, s):
    cfg = make_config(d1=d1, d2=d2, a=a, b=b, p=p, q=q, r=r, s=s)
    d = ef.scalar_diagnostics(cfg)
    if d.R0 <= 1.0:
        assert d.ustar is None
    else:
        scale = max(1.0, d.ustar, d.vstar)
        assert abs(a * d.ustar - cfg.reactions.H(d.vstar)) <= 1e-12 * scale
        assert abs(b * d.vstar - cfg.reactions.G(d.ustar)) <= 1e-12 * scale
        assert d.ustar > 0 and d.vstar > 0

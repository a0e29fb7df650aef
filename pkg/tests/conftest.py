import pytest

import epifront as ef
from epifront.config import NumericsConfig


def make_config(
    d1=2.0,
    d2=2.0,
    a=1.0,
    b=1.0,
    mu1=1.0,
    mu2=1.0,
    h0=1.0,
    p=2.0,
    q=1.0,
    r=2.0,
    s=1.0,
    kernel=("triangle", 1.0),
    kernel2=None,
    numerics=None,
    **kwargs,
):
    k1 = ef.KernelSpec(*kernel)
    k2 = ef.KernelSpec(*(kernel2 or kernel))
    return ef.ModelConfig(
        d1=d1,
        d2=d2,
        a=a,
        b=b,
        mu1=mu1,
        mu2=mu2,
        h0=h0,
        kernel1=k1,
        kernel2=k2,
        reactions=ef.ReactionPair(p=p, q=q, r=r, s=s),
        numerics=numerics or NumericsConfig(),
        **kwargs,
    )


@pytest.fixture(scope="session")
def p0():
    """Reference symmetric configuration: R0=4, Rstar=4/9, gammaA=1, gammaB=-1."""
    return make_config()


@pytest.fixture(scope="session")
def p0_lstar(p0):
    res = ef.critical_length(p0)
    assert res.applicable
    return res.lstar

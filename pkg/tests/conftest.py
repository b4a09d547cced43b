"""Shared fixtures of the test suite."""
import math
from collections.abc import Callable

import pytest

from fem.mesh import Mesh, build_rect_mesh
from model.params import BatesParams, MarketSpec
from model.presets import PRESETS

PRESET_NAMES = sorted(PRESETS)


@pytest.fixture
def s1() -> BatesParams:
    """Preset S1."""
    return PRESETS["S1"]


@pytest.fixture(params=PRESET_NAMES)
def preset(request: pytest.FixtureRequest) -> BatesParams:
    """Every preset in turn."""
    return PRESETS[request.param]


def standard_market(params: BatesParams, s0: float = 100.0, strike: float = 100.0, maturity: float = 1.0) -> MarketSpec:
    """Market with ``r = 0.05`` and ``y0 = eta``."""
    return MarketSpec(s0=s0, strike=strike, maturity=maturity, rate=0.05, y0=params.eta)


@pytest.fixture
def make_market() -> Callable[..., MarketSpec]:
    """Factory of markets with ``r = 0.05`` and ``y0 = eta``."""
    return standard_market


@pytest.fixture
def s1_market(s1: BatesParams) -> MarketSpec:
    """At-the-money one-year call under S1."""
    return standard_market(s1)


@pytest.fixture
def small_mesh() -> Mesh:
    """8 x 6 mesh on the default domain."""
    return build_rect_mesh(0.0, math.log(400), 1.0, 8, 6)


@pytest.fixture
def no_jumps(s1: BatesParams) -> BatesParams:
    """S1 stochastic-volatility parameters with jumps switched off."""
    return BatesParams(
        xi=s1.xi,
        eta=s1.eta,
        theta=s1.theta,
        rho=s1.rho,
        lambda_=0.0,
        kbar=0.0,
        delta=s1.delta,
    )

"""Tests of the Bates characteristic function."""
import dataclasses
import math

import numpy as np
import pytest

from model.characteristic import auxiliary_root, characteristic_fn, cosh_sinh_bracket, log_cosh_sinh_bracket
from model.exceptions import PreconditionError
from model.params import BatesParams, MarketSpec
from reference.heston import heston_characteristic_fn


def test_zero_horizon_is_spot_transform(s1: BatesParams, s1_market: MarketSpec) -> None:
    u = np.array([0.0, 0.7, -3.2])
    values = characteristic_fn(s1, s1_market, u, 0.0)
    np.testing.assert_allclose(values, np.exp(1j * u * math.log(100)), rtol=1e-15)


def test_zero_argument_is_one(preset: BatesParams, make_market) -> None:
    assert characteristic_fn(preset, make_market(preset), 0.0, 1.0) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("maturity", [0.25, 1.0, 3.0])
def test_martingale(preset: BatesParams, make_market, maturity: float) -> None:
    market = make_market(preset, maturity=maturity)
    value = characteristic_fn(preset, market, -1j, maturity)
    expected = market.s0 * math.exp(market.rate * maturity)
    assert value.real == pytest.approx(expected, rel=1e-8)
    assert abs(value.imag) < 1e-8 * expected


def test_conjugate_symmetry(s1: BatesParams, s1_market: MarketSpec) -> None:
    u = np.linspace(0.1, 40, 25)
    np.testing.assert_allclose(
        characteristic_fn(s1, s1_market, -u, 1.0),
        np.conj(characteristic_fn(s1, s1_market, u, 1.0)),
        rtol=1e-12,
        atol=1e-300,
    )


def test_modulus_at_most_one(preset: BatesParams, make_market) -> None:
    u = np.linspace(-60, 60, 121)
    assert np.all(np.abs(characteristic_fn(preset, make_market(preset), u, 2.0)) <= 1 + 1e-12)


def test_without_jumps_matches_heston(no_jumps: BatesParams, s1_market: MarketSpec) -> None:
    u = np.concatenate([np.linspace(-30, 30, 61), [-2.5j, 5.0 - 2.5j]])
    np.testing.assert_allclose(
        characteristic_fn(no_jumps, s1_market, u, 1.5),
        heston_characteristic_fn(no_jumps, s1_market, u, 1.5),
        rtol=1e-10,
        atol=1e-14,
    )


def test_log_bracket_matches_direct_bracket(s1: BatesParams) -> None:
    u = np.linspace(-5, 5, 11).astype(np.complex128)
    beta = s1.xi - 1j * s1.rho * s1.theta * u
    eps = auxiliary_root(s1, u)
    np.testing.assert_allclose(
        np.exp(log_cosh_sinh_bracket(eps, beta, 1.0)),
        cosh_sinh_bracket(eps, beta, 1.0),
        rtol=1e-12,
    )


def test_large_horizon_stays_finite(s1: BatesParams, s1_market: MarketSpec) -> None:
    u = np.linspace(0, 200, 50)
    assert np.all(np.isfinite(characteristic_fn(s1, s1_market, u, 30.0)))


def test_scalar_argument_returns_complex(s1: BatesParams, s1_market: MarketSpec) -> None:
    assert isinstance(characteristic_fn(s1, s1_market, 1.0, 1.0), complex)


def test_preconditions(s1: BatesParams, s1_market: MarketSpec) -> None:
    with pytest.raises(PreconditionError, match="t >= 0"):
        characteristic_fn(s1, s1_market, 1.0, -0.1)
    with pytest.raises(PreconditionError, match="theta > 0"):
        characteristic_fn(dataclasses.replace(s1, theta=0.0), s1_market, 1.0, 1.0)


def test_bracket_is_even_in_the_auxiliary_root(s1: BatesParams) -> None:
    u = np.array([0.3, 2.0 - 0.5j, -7.5, 1.0 - 3.0j])
    beta = s1.xi - 1j * s1.rho * s1.theta * u
    eps = auxiliary_root(s1, u)
    np.testing.assert_allclose(cosh_sinh_bracket(-eps, beta, 1.0), cosh_sinh_bracket(eps, beta, 1.0), rtol=1e-12)
    np.testing.assert_allclose(
        np.exp(log_cosh_sinh_bracket(-eps, beta, 1.0)),
        np.exp(log_cosh_sinh_bracket(eps, beta, 1.0)),
        rtol=1e-10,
    )


def test_continuous_across_the_square_root_branch_cut(s1: BatesParams, s1_market: MarketSpec) -> None:
    # Along Im u = -3 the radicand of the auxiliary root crosses the negative real axis at Re u = 0.
    u = np.linspace(-0.5, 0.5, 1001) - 3j
    eps = auxiliary_root(s1, u)
    assert eps[0].imag * eps[-1].imag < 0
    values = characteristic_fn(s1, s1_market, u, 1.0)
    assert np.all(np.isfinite(values))
    assert np.all(np.abs(np.diff(values)) < 0.02 * np.abs(values[:-1]))

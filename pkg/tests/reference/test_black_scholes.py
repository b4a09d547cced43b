"""Tests of the Black-Scholes price and implied volatility."""
import math

import numpy as np
import pytest

from reference.black_scholes import bs_price, implied_vol
from reference.exceptions import ImpliedVolDomainError


def test_at_the_money_value() -> None:
    assert bs_price(100, 100, 1, 0, 0.2) == pytest.approx(7.96557, abs=1e-5)


def test_zero_volatility_limit() -> None:
    assert bs_price(100, 100, 1, 0.05, 0) == pytest.approx(100 - 100 * math.exp(-0.05), rel=1e-15)
    assert bs_price(80, 100, 1, 0.05, 0) == 0.0


def test_expiry_payoff() -> None:
    assert bs_price(120, 100, 0, 0.05, 0.3) == 20.0
    assert bs_price(90, 100, 0, 0.05, 0.3) == 0.0


def test_vectorized_spots() -> None:
    values = bs_price(np.array([0.0, 100.0]), 100, 1, 0, 0.2)
    assert values[0] == 0.0
    assert values[1] == pytest.approx(7.96557, abs=1e-5)


def test_monotonicity_on_random_grid() -> None:
    rng = np.random.default_rng(7)
    spots = rng.uniform(50, 150, size=40)
    strikes = rng.uniform(50, 150, size=40)
    sigmas = rng.uniform(0.05, 1.0, size=40)
    for spot, strike, sigma in zip(spots, strikes, sigmas, strict=True):
        base = bs_price(spot, strike, 1.0, 0.03, sigma)
        assert bs_price(spot, strike, 1.0, 0.03, sigma * 1.1) >= base
        assert bs_price(spot * 1.05, strike, 1.0, 0.03, sigma) >= base
        assert bs_price(spot, strike * 1.05, 1.0, 0.03, sigma) <= base


def test_implied_vol_round_trip() -> None:
    price = bs_price(100, 100, 1, 0.05, 0.3)
    assert implied_vol(price, 100, 100, 1, 0.05) == pytest.approx(0.3, abs=1e-9)


@pytest.mark.parametrize("sigma", [0.01, 0.1, 0.5, 1.0, 2.0])
def test_implied_vol_inverts_price(sigma: float) -> None:
    price = bs_price(100, 100, 1, 0, sigma)
    assert implied_vol(price, 100, 100, 1, 0) == pytest.approx(sigma, abs=1e-9)


def test_price_below_intrinsic() -> None:
    with pytest.raises(ImpliedVolDomainError) as error:
        implied_vol(4.0, 100, 100, 1, 0.05)
    assert error.value.bound == "intrinsic"


def test_price_above_spot() -> None:
    with pytest.raises(ImpliedVolDomainError) as error:
        implied_vol(100.0, 100, 100, 1, 0.05)
    assert error.value.bound == "spot"

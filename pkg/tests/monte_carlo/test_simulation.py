"""Tests of the Monte Carlo simulator."""
import dataclasses
import math

import numpy as np
import pytest

from model.characteristic import characteristic_fn
from model.params import BatesParams, MarketSpec
from monte_carlo.exceptions import McConfigError
from monte_carlo.simulation import (
    PATHS_PER_STREAM,
    McConfig,
    mc_price,
    mc_price_jump_only,
    simulate_terminal,
    summarize,
    time_steps,
)
from reference.black_scholes import bs_price
from reference.merton import merton_series_price

FLAT = BatesParams(xi=1.0, eta=0.04, theta=0.0, rho=0.0, lambda_=0.0, kbar=0.0, delta=0.1)
FLAT_MARKET = MarketSpec(s0=100, strike=100, maturity=1, rate=0.0, y0=0.04)


def test_result_does_not_depend_on_workers(s1: BatesParams, s1_market: MarketSpec) -> None:
    serial = McConfig(n_paths=4000, n_steps=20, seed=3, block_size=1000, workers=1)
    threaded = dataclasses.replace(serial, workers=4)
    np.testing.assert_array_equal(
        simulate_terminal(s1, s1_market, serial),
        simulate_terminal(s1, s1_market, threaded),
    )


@pytest.mark.parametrize("block_size", [1, PATHS_PER_STREAM, 3000, 10_000])
def test_result_does_not_depend_on_block_size(s1: BatesParams, s1_market: MarketSpec, block_size: int) -> None:
    reference = McConfig(n_paths=5000, n_steps=10, seed=21, block_size=PATHS_PER_STREAM, workers=1)
    regrouped = dataclasses.replace(reference, block_size=block_size, workers=3)
    np.testing.assert_array_equal(
        simulate_terminal(s1, s1_market, reference),
        simulate_terminal(s1, s1_market, regrouped),
    )


def test_paths_are_a_prefix_of_longer_runs(s1: BatesParams, s1_market: MarketSpec) -> None:
    cfg = McConfig(n_paths=3 * PATHS_PER_STREAM, n_steps=5, seed=4, block_size=2 * PATHS_PER_STREAM)
    shorter = simulate_terminal(s1, s1_market, cfg)
    longer = simulate_terminal(s1, s1_market, dataclasses.replace(cfg, n_paths=5 * PATHS_PER_STREAM))
    np.testing.assert_array_equal(longer[: shorter.size], shorter)


def test_seed_changes_paths(s1: BatesParams, s1_market: MarketSpec) -> None:
    cfg = McConfig(n_paths=100, n_steps=5, seed=1, block_size=50)
    first = simulate_terminal(s1, s1_market, cfg)
    second = simulate_terminal(s1, s1_market, dataclasses.replace(cfg, seed=2))
    assert first.shape == (100,)
    assert not np.array_equal(first, second)


def test_constant_variance_reduces_to_black_scholes() -> None:
    result = mc_price(FLAT, FLAT_MARKET, McConfig(n_paths=40_000, n_steps=20, seed=11))
    assert abs(result.estimate - bs_price(100, 100, 1, 0, 0.2)) < 4 * result.std_error
    assert result.n_effective == 40_000


def test_zero_strike_prices_the_forward(s1: BatesParams, s1_market: MarketSpec) -> None:
    market = dataclasses.replace(s1_market, strike=0.0)
    result = mc_price(s1, market, McConfig(n_paths=20_000, n_steps=50, seed=5))
    assert abs(result.estimate - market.s0) < 4 * result.std_error


def test_discounted_price_is_a_martingale(s1: BatesParams, s1_market: MarketSpec) -> None:
    terminal = simulate_terminal(s1, s1_market, McConfig(n_paths=20_000, n_steps=50, seed=9))
    discounted = np.exp(terminal - s1_market.rate * s1_market.maturity)
    error = discounted.std(ddof=1) / math.sqrt(discounted.size)
    assert abs(discounted.mean() - s1_market.s0) < 4 * error


def test_jump_only_matches_merton_series(s1: BatesParams, s1_market: MarketSpec) -> None:
    result = mc_price_jump_only(s1, s1_market, McConfig(n_paths=200_000, seed=13))
    expected = merton_series_price(s1, 100.0, 100.0, 1.0, 0.05)
    assert abs(result.estimate - expected) < 4 * result.std_error


def test_antithetic_pairs_reduce_error() -> None:
    plain = mc_price(FLAT, FLAT_MARKET, McConfig(n_paths=20_000, n_steps=10, seed=17))
    paired = mc_price(FLAT, FLAT_MARKET, McConfig(n_paths=20_000, n_steps=10, seed=17, antithetic=True))
    assert paired.n_effective == 10_000
    assert paired.std_error < plain.std_error
    assert abs(paired.estimate - bs_price(100, 100, 1, 0, 0.2)) < 4 * paired.std_error


def test_antithetic_paths_mirror_each_other() -> None:
    terminal = simulate_terminal(FLAT, FLAT_MARKET, McConfig(n_paths=8, n_steps=4, antithetic=True, block_size=4))
    centre = math.log(100) - 0.02
    np.testing.assert_allclose(terminal[0::2] - centre, -(terminal[1::2] - centre), atol=1e-12)


def test_operation_cap(s1: BatesParams, s1_market: MarketSpec) -> None:
    with pytest.raises(McConfigError, match="exceeds the cap"):
        simulate_terminal(s1, s1_market, McConfig(n_paths=10**7, n_steps=1000))


@pytest.mark.parametrize(
    "kwargs",
    [{"n_paths": 0}, {"n_steps": 0}, {"workers": 0}, {"antithetic": True, "n_paths": 101}],
)
def test_config_validation(kwargs: dict[str, int]) -> None:
    with pytest.raises(McConfigError):
        McConfig(**kwargs)


def test_time_steps_scale_with_maturity() -> None:
    assert time_steps(McConfig(n_steps=250), 0.25) == 63
    assert time_steps(McConfig(n_steps=250), 1e-9) == 1


def test_summary_of_single_sample() -> None:
    result = summarize(np.array([3.0]), antithetic=False)
    assert result.estimate == 3.0
    assert result.std_error == math.inf


@pytest.mark.slow
@pytest.mark.parametrize("u", [0.5, 1.0, 2.0])
def test_sample_characteristic_function(s1: BatesParams, s1_market: MarketSpec, u: float) -> None:
    market = dataclasses.replace(s1_market, maturity=0.5)
    terminal = simulate_terminal(s1, market, McConfig(n_paths=200_000, n_steps=250, seed=23, workers=4))
    samples = np.exp(1j * u * terminal)
    expected = characteristic_fn(s1, market, u, 0.5)
    for part in (np.real, np.imag):
        error = part(samples).std(ddof=1) / math.sqrt(samples.size)
        assert abs(part(samples).mean() - part(expected)) < 4 * error

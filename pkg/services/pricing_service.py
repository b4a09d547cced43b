"""Module contains the pricing logic shared by the commands.

It dispatches single prices to an engine, prices implied-volatility surfaces and compares the finite
element solution with the FFT reference.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
import numpy.typing as npt

import config
from fem.grid import GridConfig
from fem.stepper import SolverConfig, run
from model.params import BatesParams, MarketSpec
from model.validation import ensure_admissible
from monte_carlo.simulation import McConfig, mc_price
from reference.black_scholes import implied_vol
from reference.exceptions import ImpliedVolDomainError
from reference.fft import FftGrid, price_single_fft, price_strikes_fft
from reference.merton import merton_series_price

type FloatArray = npt.NDArray[np.float64]

logger = logging.getLogger(__name__)


class PricingMethod(Enum):
    """Engine used to price a call.

    Attributes:
        FEM (str): Characteristic Galerkin finite elements.
        FFT (str): Carr-Madan transform of the Bates characteristic function.
        MC (str): Monte Carlo simulation.
        MERTON (str): Merton series of the zero-variance model.
    """

    # WPS ignore, that it is a Enum. It is a valid use case
    FEM = "fem"  # noqa: WPS115
    FFT = "fft"  # noqa: WPS115
    MC = "mc"  # noqa: WPS115
    MERTON = "merton"  # noqa: WPS115


@dataclass(frozen=True)
class EngineSettings:
    """Settings of every engine.

    Attributes:
        grid (GridConfig): Finite element resolution.
        solver (SolverConfig): Time stepping and linear solver.
        mc (McConfig): Monte Carlo settings.
        fft (FftGrid): Carr-Madan grid.
    """

    grid: GridConfig
    solver: SolverConfig
    mc: McConfig
    fft: FftGrid


@dataclass(frozen=True)
class PriceQuote:
    """Single call price.

    Attributes:
        method (PricingMethod): Engine that produced the price.
        price (float): Call price.
        std_error (float | None): Monte Carlo standard error, None for deterministic engines.
    """

    method: PricingMethod
    price: float
    std_error: float | None = None


@dataclass(frozen=True)
class SurfaceRow:
    """One point of an implied-volatility surface.

    Attributes:
        strike (float): Strike.
        maturity (float): Maturity in years.
        price (float): Call price.
        implied_vol (float | None): Black-Scholes implied volatility, None if the inversion failed.
    """

    strike: float
    maturity: float
    price: float
    implied_vol: float | None


@dataclass(frozen=True)
class CompareRow:
    """Finite element and FFT prices at one spot.

    Attributes:
        spot (float): Spot price.
        price_fem (float): Finite element price.
        price_fft (float): FFT price.
        rel_diff (float): ``|fem - fft| / fft``.
    """

    spot: float
    price_fem: float
    price_fft: float
    rel_diff: float


def relative_difference(value: float, reference: float) -> float:
    """Return ``|value - reference| / reference``.

    Args:
        value (float): Compared value.
        reference (float): Reference value, non-zero.

    Returns:
        float: Relative difference.
    """
    return abs(value - reference) / reference


def price_with_method(
    method: PricingMethod,
    params: BatesParams,
    market: MarketSpec,
    settings: EngineSettings,
) -> PriceQuote:
    """Price the call of ``market`` with one engine.

    Args:
        method (PricingMethod): Engine.
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.
        settings (EngineSettings): Engine settings.

    Returns:
        PriceQuote: The price, with a standard error for Monte Carlo.
    """
    ensure_admissible(params, market)
    if method is PricingMethod.FEM:
        quote = PriceQuote(method, run(params, market, settings.grid, settings.solver).price_at(market.s0))
    elif method is PricingMethod.FFT:
        quote = PriceQuote(method, price_single_fft(params, market, market.strike, settings.fft))
    elif method is PricingMethod.MC:
        result = mc_price(params, market, settings.mc)
        quote = PriceQuote(method, result.estimate, result.std_error)
    else:
        price = merton_series_price(params, market.s0, market.strike, market.maturity, market.rate)
        quote = PriceQuote(method, float(price))
    logger.info("%s price: %.10g", method.value, quote.price)
    return quote


def _implied_vol_or_none(price: float, market: MarketSpec) -> float | None:
    """Invert a price, recording a failed inversion as None.

    Args:
        price (float): Call price.
        market (MarketSpec): Spot, strike, maturity and rate of the call.

    Returns:
        float | None: Implied volatility.
    """
    try:
        return implied_vol(price, market.s0, market.strike, market.maturity, market.rate)
    except ImpliedVolDomainError as exc:
        logger.warning("No implied vol at K=%g, T=%g (%s bound): %s", market.strike, market.maturity, exc.bound, exc)
        return None


def _maturity_slice(
    params: BatesParams,
    market: MarketSpec,
    strikes: list[float],
    engine: PricingMethod,
    settings: EngineSettings,
) -> FloatArray:
    """Price every strike at the maturity of ``market`` with one engine solve.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract at the slice maturity.
        strikes (list[float]): Strikes.
        engine (PricingMethod): FFT or FEM.
        settings (EngineSettings): Engine settings.

    Returns:
        FloatArray: Prices in strike order.
    """
    if engine is PricingMethod.FEM:
        surface = run(params, market, settings.grid, settings.solver)
        return np.array([surface.price_at_strike(market.s0, strike) for strike in strikes])
    return price_strikes_fft(params, market, np.asarray(strikes, dtype=float), settings.fft)


def surface_rows(  # noqa: WPS211
    params: BatesParams,
    market: MarketSpec,
    strikes: list[float],
    maturities: list[float],
    engine: PricingMethod,
    settings: EngineSettings,
) -> list[SurfaceRow]:
    """Price an implied-volatility surface.

    Maturity slices are priced in parallel; rows come back ordered by maturity, then strike.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Spot, rate, initial variance and reference strike.
        strikes (list[float]): Strikes.
        maturities (list[float]): Maturities.
        engine (PricingMethod): FFT or FEM.
        settings (EngineSettings): Engine settings.

    Returns:
        list[SurfaceRow]: Surface points.
    """
    slices = [replace(market, maturity=maturity) for maturity in maturities]
    for contract in slices:
        ensure_admissible(params, contract)
    with ThreadPoolExecutor(max_workers=config.WORKERS) as executor:
        prices = list(
            executor.map(lambda contract: _maturity_slice(params, contract, strikes, engine, settings), slices),
        )
    rows = []
    for contract, slice_prices in zip(slices, prices, strict=True):
        for strike, price in zip(strikes, slice_prices, strict=True):
            vol = _implied_vol_or_none(float(price), replace(contract, strike=strike))
            rows.append(SurfaceRow(strike=strike, maturity=contract.maturity, price=float(price), implied_vol=vol))
    return rows


def compare_rows(
    params: BatesParams,
    market: MarketSpec,
    spots: list[float],
    settings: EngineSettings,
) -> list[CompareRow]:
    """Compare finite element prices read off one surface with FFT prices.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract; its spot only fixes the validation.
        spots (list[float]): Spots to compare at.
        settings (EngineSettings): Engine settings.

    Returns:
        list[CompareRow]: One row per spot, in input order.
    """
    ensure_admissible(params, market)
    fem_prices = run(params, market, settings.grid, settings.solver).prices_at(np.asarray(spots, dtype=float))
    rows = []
    for spot, fem_price in zip(spots, fem_prices, strict=True):
        fft_price = price_single_fft(params, replace(market, s0=spot), market.strike, settings.fft)
        rows.append(
            CompareRow(
                spot=spot,
                price_fem=float(fem_price),
                price_fft=fft_price,
                rel_diff=relative_difference(float(fem_price), fft_price),
            ),
        )
    return rows

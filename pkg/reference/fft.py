"""Module implements the Carr-Madan FFT call pricer.

The damped call transform ``psi(v) = e^{-rT} phi(v - (alpha + 1) i) / (alpha^2 + alpha - v^2 + i (2 alpha + 1) v)``
is integrated with Simpson weights by one FFT, giving call prices on a whole log-strike ladder
centred at ``ln s0``.
"""
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import partial

import numpy as np
import numpy.typing as npt
from scipy.interpolate import PchipInterpolator

from model.characteristic import characteristic_fn
from model.params import BatesParams, MarketSpec
from reference.exceptions import FftConfigurationError, StrikeOutOfRangeError

type FloatArray = npt.NDArray[np.float64]
type ComplexArray = npt.NDArray[np.complex128]
type CharacteristicFunction = Callable[[ComplexArray], ComplexArray]
type StrikeLadder = tuple[FloatArray, FloatArray]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FftGrid:
    """Discretization of the Carr-Madan transform.

    Attributes:
        n_points (int): FFT size, a power of two.
        damping (float): Damping exponent ``alpha``, positive and below the moment bound of the model.
        u_spacing (float): Frequency-grid spacing.
    """

    n_points: int = 4096
    damping: float = 1.5
    u_spacing: float = 0.25


def carr_madan_prices(
    params: BatesParams,
    market: MarketSpec,
    grid: FftGrid,
    char_fn: CharacteristicFunction | None = None,
) -> StrikeLadder:
    """Price calls on the full FFT strike ladder.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Spot, maturity, rate and initial variance are used; the strike is not.
        grid (FftGrid): Transform discretization.
        char_fn (CharacteristicFunction | None): Characteristic function of ``ln S_T`` at the
            maturity; the Bates one when omitted.

    Returns:
        StrikeLadder: Increasing strikes and their call prices.

    Raises:
        FftConfigurationError: If the grid is malformed or the damped transform is not integrable.
    """
    _check_grid(grid)
    if char_fn is None:
        char_fn = partial(characteristic_fn, params, market, t=market.maturity)
    _check_damping(grid, char_fn)

    alpha, spacing, size = grid.damping, grid.u_spacing, grid.n_points
    strike_step = 2 * math.pi / (size * spacing)
    lowest_log_strike = math.log(market.s0) - size * strike_step / 2
    frequencies = np.arange(size) * spacing
    log_strikes = lowest_log_strike + strike_step * np.arange(size)

    shifted = frequencies - (alpha + 1) * 1j
    denominator = alpha**2 + alpha - frequencies**2 + 1j * (2 * alpha + 1) * frequencies
    transform = math.exp(-market.rate * market.maturity) * char_fn(shifted) / denominator

    simpson = (3 - (-1.0) ** np.arange(size)) / 3
    simpson[0] = 1 / 3
    summand = np.exp(-1j * frequencies * lowest_log_strike) * transform * spacing * simpson
    prices = np.exp(-alpha * log_strikes) / math.pi * np.real(np.fft.fft(summand))
    logger.debug("Carr-Madan ladder: %d strikes, log-strike step %.6g", size, strike_step)
    return np.exp(log_strikes), prices


def price_strikes_fft(
    params: BatesParams,
    market: MarketSpec,
    strikes: FloatArray,
    grid: FftGrid,
    char_fn: CharacteristicFunction | None = None,
) -> FloatArray:
    """Price calls at arbitrary strikes by monotone cubic interpolation of the FFT ladder.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Spot, maturity, rate and initial variance are used.
        strikes (FloatArray): Target strikes.
        grid (FftGrid): Transform discretization.
        char_fn (CharacteristicFunction | None): Optional characteristic function override.

    Returns:
        FloatArray: Call prices at ``strikes``.

    Raises:
        StrikeOutOfRangeError: If any strike lies outside the ladder.
    """
    ladder_strikes, ladder_prices = carr_madan_prices(params, market, grid, char_fn)
    finite = np.isfinite(ladder_strikes) & np.isfinite(ladder_prices) & (ladder_strikes > 0)
    ladder_strikes, ladder_prices = ladder_strikes[finite], ladder_prices[finite]
    targets = np.asarray(strikes, dtype=float)
    if np.any(targets < ladder_strikes[0]) or np.any(targets > ladder_strikes[-1]):
        raise StrikeOutOfRangeError(
            f"strikes must lie in [{ladder_strikes[0]:.6g}, {ladder_strikes[-1]:.6g}]",
        )
    return PchipInterpolator(ladder_strikes, ladder_prices)(targets)


def price_single_fft(params: BatesParams, market: MarketSpec, k: float, grid: FftGrid) -> float:
    """Price a single call strike from the FFT ladder.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Spot, maturity, rate and initial variance are used.
        k (float): Strike.
        grid (FftGrid): Transform discretization.

    Returns:
        float: Call price at ``k``.
    """
    return float(price_strikes_fft(params, market, np.array([k]), grid)[0])


def _check_grid(grid: FftGrid) -> None:
    """Reject malformed grids.

    Args:
        grid (FftGrid): Transform discretization.

    Raises:
        FftConfigurationError: If the size is not a power of two or a spacing is not positive.
    """
    if grid.n_points < 2 or grid.n_points & (grid.n_points - 1):
        raise FftConfigurationError(f"n_points must be a power of two, got {grid.n_points}")
    if grid.u_spacing <= 0:
        raise FftConfigurationError(f"u_spacing must be positive, got {grid.u_spacing}")
    if grid.damping <= 0:
        raise FftConfigurationError(f"damping must be positive, got {grid.damping}")


def _check_damping(grid: FftGrid, char_fn: CharacteristicFunction) -> None:
    """Check that ``E[S_T^(alpha + 1)]`` is finite so the damped call is integrable.

    Args:
        grid (FftGrid): Transform discretization.
        char_fn (CharacteristicFunction): Characteristic function of ``ln S_T``.

    Raises:
        FftConfigurationError: If the moment is infinite, non-real or non-positive.
    """
    with np.errstate(all="ignore"):
        moment = complex(np.asarray(char_fn(np.array([-(grid.damping + 1) * 1j])))[0])
    if not (np.isfinite(moment.real) and np.isfinite(moment.imag)) or moment.real <= 0:
        raise FftConfigurationError(f"damping {grid.damping} exceeds the moment bound of the model")
    if abs(moment.imag) > 1e-8 * moment.real:
        raise FftConfigurationError(f"damping {grid.damping} exceeds the moment bound of the model")

"""Module implements the Black-Scholes call price and its implied-volatility inversion."""
import math

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq
from scipy.stats import norm

from reference.exceptions import ImpliedVolDomainError

type FloatArray = npt.NDArray[np.float64]

VOL_BRACKET = (1e-6, 5.0)
VOL_TOLERANCE = 1e-10
MAX_ITERATIONS = 200


def bs_price(
    s: float | FloatArray,
    k: float | FloatArray,
    t: float,
    r: float,
    sigma: float,
) -> float | FloatArray:
    """Price a European call under Black-Scholes.

    Args:
        s (float | FloatArray): Spot price(s), non-negative.
        k (float | FloatArray): Strike(s), positive.
        t (float): Time to maturity in years; ``t <= 0`` returns the payoff.
        r (float): Continuously compounded rate.
        sigma (float): Volatility; ``sigma <= 0`` returns the deterministic limit.

    Returns:
        float | FloatArray: Call value(s).
    """
    spot = np.asarray(s, dtype=float)
    strike = np.asarray(k, dtype=float)
    if t <= 0:
        values = np.maximum(spot - strike, 0)
    elif sigma <= 0:
        values = np.maximum(spot - strike * math.exp(-r * t), 0)
    else:
        total_vol = sigma * math.sqrt(t)
        with np.errstate(divide="ignore"):
            d1 = (np.log(spot / strike) + (r + sigma**2 / 2) * t) / total_vol
        d2 = d1 - total_vol
        values = spot * norm.cdf(d1) - strike * math.exp(-r * t) * norm.cdf(d2)
    if np.ndim(values) == 0:
        return float(values)
    return values


def implied_vol(price: float, s: float, k: float, t: float, r: float) -> float:
    """Invert the Black-Scholes call price for the volatility.

    Uses Brent's bracketing bisection-secant hybrid on ``[1e-6, 5]``.

    Args:
        price (float): Observed call price.
        s (float): Spot price.
        k (float): Strike.
        t (float): Time to maturity in years, positive.
        r (float): Continuously compounded rate.

    Returns:
        float: Implied volatility, accurate to ``1e-10``.

    Raises:
        ImpliedVolDomainError: If the price is not strictly inside the no-arbitrage interval or the
            root is not bracketed.
    """
    intrinsic = max(s - k * math.exp(-r * t), 0)
    if price <= intrinsic:
        raise ImpliedVolDomainError(f"price {price} is not above the intrinsic bound {intrinsic}", bound="intrinsic")
    if price >= s:
        raise ImpliedVolDomainError(f"price {price} is not below the spot bound {s}", bound="spot")

    low, high = VOL_BRACKET
    if bs_price(s, k, t, r, low) > price or bs_price(s, k, t, r, high) < price:
        raise ImpliedVolDomainError(f"price {price} is not bracketed by vols {VOL_BRACKET}", bound="bracket")
    return float(
        brentq(
            lambda sigma: bs_price(s, k, t, r, sigma) - price,
            low,
            high,
            xtol=VOL_TOLERANCE,
            maxiter=MAX_ITERATIONS,
        ),
    )

"""Module implements the Merton jump-diffusion series used as the y=0 boundary price.

At zero variance the Bates log-price moves only by its drift and jumps, so the call value is a
Poisson mixture of Black-Scholes prices with per-count variance ``n delta^2 / t``.
"""
import logging

import numpy as np
import numpy.typing as npt
from scipy.stats import poisson

from model.params import BatesParams
from reference.black_scholes import bs_price
from reference.exceptions import SeriesNotConvergedError

type FloatArray = npt.NDArray[np.float64]

MAX_TERMS = 1000

logger = logging.getLogger(__name__)


def merton_series_price(
    params: BatesParams,
    s: float | FloatArray,
    k: float,
    t: float,
    r: float,
    tol: float = 1e-12,
) -> float | FloatArray:
    """Price a call in the zero-diffusion Merton model by its Poisson series.

    Term ``n`` is ``w_n C_BS(s, k, t, sigma_n, r_n)`` with ``sigma_n^2 = n delta^2 / t`` and
    ``r_n = r + lambda (1 - e^{gamma + delta^2/2}) + n (gamma + delta^2/2) / t``. The weights are
    Poisson probabilities of mean ``lambda (1 + kbar) t``, the intensity under which the ``r_n``
    discounting reproduces the risk-neutral expectation. Summation stops when the Poisson tail
    mass drops below ``tol``.

    Args:
        params (BatesParams): Model parameters, only the jump part is used.
        s (float | FloatArray): Spot price(s).
        k (float): Strike.
        t (float): Time to maturity; ``t <= 0`` returns the payoff.
        r (float): Continuously compounded rate.
        tol (float): Tail tolerance, positive.

    Returns:
        float | FloatArray: Call value(s).

    Raises:
        SeriesNotConvergedError: If the tail is still above ``tol`` after 1000 terms.
    """
    if t <= 0:
        return bs_price(s, k, 0, r, 0)

    log_growth = params.gamma_ + params.delta**2 / 2
    mean_count = params.lambda_ * (1 + params.kbar) * t
    base_rate = r + params.lambda_ * (1 - np.exp(log_growth))
    total = np.zeros_like(np.asarray(s, dtype=float))
    for count in range(MAX_TERMS):
        weight = poisson.pmf(count, mean_count)
        sigma_n = np.sqrt(count * params.delta**2 / t)
        rate_n = base_rate + count * log_growth / t
        total = total + weight * np.asarray(bs_price(s, k, t, rate_n, sigma_n))
        if poisson.sf(count, mean_count) < tol:
            logger.debug("Merton series converged after %d terms", count + 1)
            if np.ndim(total) == 0:
                return float(total)
            return total
    raise SeriesNotConvergedError(f"Merton series did not reach tol={tol} within {MAX_TERMS} terms")

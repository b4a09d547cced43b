"""Module implements a stand-alone Heston characteristic function.

It is coded independently of :mod:`model.characteristic` (exponent form with ``C`` and ``D``
coefficients) and serves as a cross-check of the Bates pricer on its jump-free sub-model.
"""
import math

import numpy as np
import numpy.typing as npt

from model.params import BatesParams, MarketSpec

type ComplexArray = npt.NDArray[np.complex128]


def heston_characteristic_fn(
    params: BatesParams,
    market: MarketSpec,
    u: complex | ComplexArray,
    t: float,
) -> complex | ComplexArray:
    """Evaluate ``E[exp(i u ln S_t)]`` in the Heston model, ignoring every jump parameter.

    Args:
        params (BatesParams): Model parameters; ``lambda_``, ``kbar`` and ``delta`` are ignored.
        market (MarketSpec): Spot, rate and initial variance are used.
        u (complex | ComplexArray): Fourier argument(s).
        t (float): Horizon in years.

    Returns:
        complex | ComplexArray: The characteristic function at ``u``.
    """
    iu = 1j * np.asarray(u, dtype=np.complex128)
    kappa, level, vol_of_vol = params.xi, params.eta, params.theta
    beta = kappa - params.rho * vol_of_vol * iu
    root = np.sqrt(beta**2 + vol_of_vol**2 * (iu - iu**2))
    minus = beta - root
    ratio = minus / (beta + root)
    decay = np.exp(-root * t)
    coefficient_c = kappa * level / vol_of_vol**2 * (minus * t - 2 * np.log((1 - ratio * decay) / (1 - ratio)))
    coefficient_d = minus / vol_of_vol**2 * (1 - decay) / (1 - ratio * decay)
    values = np.exp(iu * (math.log(market.s0) + market.rate * t) + coefficient_c + coefficient_d * market.y0)
    if values.ndim == 0:
        return complex(values)
    return values

"""Module implements the closed-form characteristic function of the Bates log-price.

The Heston part is evaluated through the logarithm of the cosh/sinh bracket written with
``exp(-eps t)`` only, which stays on the principal branch for every real or damped argument.
"""
import math

import numpy as np
import numpy.typing as npt

from model.exceptions import PreconditionError
from model.jumps import compensator
from model.params import BatesParams, MarketSpec

type ComplexArray = npt.NDArray[np.complex128]


def characteristic_fn(
    params: BatesParams,
    market: MarketSpec,
    u: complex | ComplexArray,
    t: float,
) -> complex | ComplexArray:
    """Evaluate the risk-neutral characteristic function ``E[exp(i u ln S_t)]``.

    The result is the product of the spot/drift factor, the compound Poisson jump factor and the
    Heston factor. The Heston factor carries ``exp(xi eta t (xi - i rho theta u) / theta^2)`` so
    that ``characteristic_fn(-i) = s0 exp(r t)``.

    Args:
        params (BatesParams): Model parameters, ``theta > 0``.
        market (MarketSpec): Spot, rate and initial variance are used.
        u (complex | ComplexArray): Fourier argument(s).
        t (float): Horizon in years, ``t >= 0``.

    Returns:
        complex | ComplexArray: The characteristic function at ``u``.

    Raises:
        PreconditionError: If ``t < 0`` or ``theta <= 0``.
    """
    if t < 0:
        raise PreconditionError(f"characteristic_fn requires t >= 0, got {t}")
    if params.theta <= 0:
        raise PreconditionError("characteristic_fn requires theta > 0")
    u_array = np.asarray(u, dtype=np.complex128)
    log_spot = math.log(market.s0)
    if t == 0:
        return _as_output(np.exp(1j * u_array * log_spot))

    drift = 1j * u_array * (log_spot + (market.rate - compensator(params)) * t)
    jump = t * params.lambda_ * np.expm1(
        -(params.delta**2) * u_array**2 / 2 + 1j * (math.log1p(params.kbar) - params.delta**2 / 2) * u_array,
    )
    heston = log_heston_factor(params, u_array, t, market.y0)
    return _as_output(np.exp(drift + jump + heston))


def log_heston_factor(params: BatesParams, u: ComplexArray, t: float, y0: float) -> ComplexArray:
    """Return the logarithm of the driftless Heston factor of the characteristic function.

    Args:
        params (BatesParams): Model parameters, only the variance dynamics are used.
        u (ComplexArray): Fourier arguments.
        t (float): Horizon in years, ``t > 0``.
        y0 (float): Initial variance.

    Returns:
        ComplexArray: ``log`` of the Heston factor, including the normalization term.
    """
    beta = params.xi - 1j * params.rho * params.theta * u
    quad = u**2 + 1j * u
    eps = auxiliary_root(params, u)
    decay = np.exp(-eps * t)
    power = -2 * params.xi * params.eta / params.theta**2
    normalization = params.xi * params.eta * t * beta / params.theta**2
    variance_term = -quad * y0 / (eps * (1 + decay) / (1 - decay) + beta)
    return power * log_cosh_sinh_bracket(eps, beta, t) + normalization + variance_term


def auxiliary_root(params: BatesParams, u: ComplexArray) -> ComplexArray:
    """Return ``sqrt(theta^2 (u^2 + i u) + (xi - i rho theta u)^2)`` on the principal branch.

    Args:
        params (BatesParams): Model parameters.
        u (ComplexArray): Fourier arguments.

    Returns:
        ComplexArray: The auxiliary root ``eps``.
    """
    beta = params.xi - 1j * params.rho * params.theta * u
    return np.sqrt(params.theta**2 * (u**2 + 1j * u) + beta**2)


def cosh_sinh_bracket(eps: ComplexArray, beta: ComplexArray, t: float) -> ComplexArray:
    """Evaluate ``cosh(eps t / 2) + beta / eps sinh(eps t / 2)`` directly.

    The expression is even in ``eps``, so either square root gives the same value.

    Args:
        eps (ComplexArray): Auxiliary root.
        beta (ComplexArray): ``xi - i rho theta u``.
        t (float): Horizon in years.

    Returns:
        ComplexArray: The bracket value; overflows for large ``|eps| t``.
    """
    half = eps * t / 2
    return np.cosh(half) + beta / eps * np.sinh(half)


def log_cosh_sinh_bracket(eps: ComplexArray, beta: ComplexArray, t: float) -> ComplexArray:
    """Evaluate the logarithm of :func:`cosh_sinh_bracket` without overflow.

    Uses ``log(bracket) = eps t / 2 + log((1 - g e^{-eps t}) / (1 - g))`` with
    ``g = (beta - eps) / (beta + eps)``.

    Args:
        eps (ComplexArray): Auxiliary root with non-negative real part.
        beta (ComplexArray): ``xi - i rho theta u``.
        t (float): Horizon in years.

    Returns:
        ComplexArray: ``log`` of the bracket, continuous in ``u``.
    """
    ratio = (beta - eps) / (beta + eps)
    return eps * t / 2 + np.log((1 - ratio * np.exp(-eps * t)) / (1 - ratio))


def _as_output(values: ComplexArray) -> complex | ComplexArray:
    if values.ndim == 0:
        return complex(values)
    return values

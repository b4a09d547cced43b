"""Module implements the jump part of the Bates model: cumulant, Lévy density and truncation bounds."""
import math

import numpy as np
import numpy.typing as npt

from model.exceptions import PreconditionError
from model.params import BatesParams

type FloatArray = npt.NDArray[np.float64]


def cumulant(params: BatesParams, z: float | FloatArray) -> float | FloatArray:
    """Evaluate the cumulant of the unit-time compound Poisson jump process.

    ``kappa(z) = lambda (exp(gamma z + delta^2 z^2 / 2) - 1)``; ``kappa(1) = lambda kbar``.

    Args:
        params (BatesParams): Model parameters.
        z (float | FloatArray): Real argument(s).

    Returns:
        float | FloatArray: The cumulant at ``z``.
    """
    exponent = params.gamma_ * np.asarray(z) + params.delta**2 * np.asarray(z) ** 2 / 2
    values = params.lambda_ * np.expm1(exponent)
    if np.ndim(values) == 0:
        return float(values)
    return values


def compensator(params: BatesParams) -> float:
    """Return ``kappa(1)``, the drift compensator of the jumps.

    Computed directly as ``lambda kbar`` so the martingale drift is exact.

    Args:
        params (BatesParams): Model parameters.

    Returns:
        float: ``lambda * kbar``.
    """
    return params.lambda_ * params.kbar


def levy_density(params: BatesParams, u: float | FloatArray) -> float | FloatArray:
    """Evaluate the Lévy density ``W(u)`` of Gaussian log jumps.

    Args:
        params (BatesParams): Model parameters.
        u (float | FloatArray): Log jump size(s).

    Returns:
        float | FloatArray: ``lambda`` times the Normal(gamma, delta^2) density; zero when ``lambda = 0``.

    Raises:
        PreconditionError: If ``delta <= 0`` while jumps are active.
    """
    u_array = np.asarray(u, dtype=float)
    if params.lambda_ == 0:
        values = np.zeros_like(u_array)
    else:
        if params.delta <= 0:
            raise PreconditionError("levy_density requires delta > 0")
        scale = params.lambda_ / (params.delta * math.sqrt(2 * math.pi))
        values = scale * np.exp(-((u_array - params.gamma_) ** 2) / (2 * params.delta**2))
    if np.ndim(values) == 0:
        return float(values)
    return values


def jump_truncation_bounds(params: BatesParams, eps: float) -> tuple[float, float]:
    """Compute the finite integration range of the jump integral.

    The half width is chosen so the standardized jump density falls to ``eps``; the range is
    widened by ``|gamma|`` on both sides, hence ``L_down = -L_up``.

    Args:
        params (BatesParams): Model parameters.
        eps (float): Density tolerance, ``0 < eps < 1 / (delta sqrt(2 pi))``.

    Returns:
        tuple[float, float]: ``(L_down, L_up)``.

    Raises:
        PreconditionError: If ``delta <= 0`` or ``eps`` is outside its admissible range.
    """
    if params.delta <= 0:
        raise PreconditionError("jump truncation requires delta > 0")
    scaled = eps * params.delta * math.sqrt(2 * math.pi)
    if not 0 < scaled < 1:
        raise PreconditionError(
            f"jump_eps must lie in (0, {1 / (params.delta * math.sqrt(2 * math.pi)):.6g}), got {eps}",
        )
    half_width = math.sqrt(-2 * params.delta**2 * math.log(scaled)) + abs(params.gamma_)
    return -half_width, half_width

"""Module traces the feet of the convective characteristics over one time step.

In time to maturity the transported value at node ``X`` is the previous solution at the point reached
by integrating ``dX/ds = a(X)`` forward over ``dt``, with the Bates convection field
``a = [r - kappa(1) - y/2 - rho theta / 2, xi (eta - y) - theta^2 / 2]``.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Final, Protocol

import numpy as np
import numpy.typing as npt

from model.jumps import compensator
from model.params import BatesParams, MarketSpec

type FloatArray = npt.NDArray[np.float64]
type Bounds = tuple[float, float, float, float]

_FIXED_POINT_TOLERANCE: Final = 1e-15
_FIXED_POINT_ITERATIONS: Final = 100


class FootMethod(Enum):
    """Integrator of the characteristic equation.

    Attributes:
        EXACT (str): Closed-form flow of the affine Bates field.
        IMPLICIT_EULER (str): Backward Euler solved by fixed-point iteration.
        RK4 (str): Classical fourth-order Runge-Kutta.
    """

    # WPS ignore, that it is a Enum. It is a valid use case
    EXACT = "exact"  # noqa: WPS115
    IMPLICIT_EULER = "implicit_euler"  # noqa: WPS115
    RK4 = "rk4"  # noqa: WPS115


class VelocityField(Protocol):
    """Convection field with an optional closed-form flow."""

    def velocity(self, points: FloatArray) -> FloatArray:
        """Evaluate the field at points ``(P, 2)``.

        Args:
            points (FloatArray): Evaluation points.
        """

    def flow(self, points: FloatArray, dt: float) -> FloatArray:
        """Integrate the field exactly over ``dt``.

        Args:
            points (FloatArray): Starting points ``(P, 2)``.
            dt (float): Integration length.
        """


@dataclass(frozen=True)
class BatesVelocity:
    """Convection field of the Bates pricing equation in ``(x, y)``."""

    params: BatesParams
    rate: float

    @property
    def x_drift(self) -> float:
        """Variance-free part of the x-component, ``r - kappa(1) - rho theta / 2``."""
        return self.rate - compensator(self.params) - self.params.rho * self.params.theta / 2

    @property
    def stationary_variance(self) -> float:
        """Zero of the y-component, ``eta - theta^2 / (2 xi)``."""
        return self.params.eta - self.params.theta**2 / (2 * self.params.xi)

    def velocity(self, points: FloatArray) -> FloatArray:  # noqa: D102
        y = points[:, 1]
        return np.column_stack([self.x_drift - y / 2, self.params.xi * (self.stationary_variance - y)])

    def flow(self, points: FloatArray, dt: float) -> FloatArray:
        """Integrate the affine field in closed form.

        ``y(s) = m + (y0 - m) e^{-xi s}`` with ``m`` the stationary variance, and ``x`` gains the
        time integral of ``x_drift - y(s) / 2``.

        Args:
            points (FloatArray): Starting points ``(P, 2)``.
            dt (float): Integration length.

        Returns:
            FloatArray: End points.
        """
        xi = self.params.xi
        level = self.stationary_variance
        offset = points[:, 1] - level
        decay = -np.expm1(-xi * dt)
        new_y = level + offset * (1 - decay)
        new_x = points[:, 0] + self.x_drift * dt - (level * dt + offset * decay / xi) / 2
        return np.column_stack([new_x, new_y])


@dataclass(frozen=True)
class ConstantVelocity:
    """Spatially constant convection field."""

    vector: tuple[float, float]

    def velocity(self, points: FloatArray) -> FloatArray:  # noqa: D102
        return np.broadcast_to(np.asarray(self.vector, dtype=float), points.shape).copy()

    def flow(self, points: FloatArray, dt: float) -> FloatArray:  # noqa: D102
        return points + dt * np.asarray(self.vector, dtype=float)


def _implicit_euler(field: VelocityField, points: FloatArray, dt: float) -> FloatArray:
    """Solve ``Z = X + dt a(Z)`` by fixed-point iteration.

    Args:
        field (VelocityField): Convection field.
        points (FloatArray): Starting points.
        dt (float): Step length.

    Returns:
        FloatArray: End points.
    """
    current = points + dt * field.velocity(points)
    for _ in range(_FIXED_POINT_ITERATIONS):
        updated = points + dt * field.velocity(current)
        change = float(np.max(np.abs(updated - current), initial=0))
        current = updated
        if change <= _FIXED_POINT_TOLERANCE * max(1.0, float(np.max(np.abs(current), initial=0))):
            break
    return current


def _rk4(field: VelocityField, points: FloatArray, dt: float) -> FloatArray:
    """Advance one classical Runge-Kutta step.

    Args:
        field (VelocityField): Convection field.
        points (FloatArray): Starting points.
        dt (float): Step length.

    Returns:
        FloatArray: End points.
    """
    k1 = field.velocity(points)
    k2 = field.velocity(points + dt / 2 * k1)
    k3 = field.velocity(points + dt / 2 * k2)
    k4 = field.velocity(points + dt * k3)
    return points + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def trace_feet(
    field: VelocityField,
    points: FloatArray,
    dt: float,
    method: FootMethod,
    bounds: Bounds | None = None,
) -> FloatArray:
    """Trace the characteristic feet of many points.

    Args:
        field (VelocityField): Convection field.
        points (FloatArray): Starting points ``(P, 2)``.
        dt (float): Step length, ``dt = 0`` returns the points.
        method (FootMethod): Integrator.
        bounds (Bounds | None): ``(x_min, x_max, y_min, y_max)`` to clamp the feet into.

    Returns:
        FloatArray: Feet ``(P, 2)``.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if dt == 0:
        feet = points.copy()
    elif method is FootMethod.EXACT:
        feet = field.flow(points, dt)
    elif method is FootMethod.IMPLICIT_EULER:
        feet = _implicit_euler(field, points, dt)
    else:
        feet = _rk4(field, points, dt)
    if bounds is not None:
        x_min, x_max, y_min, y_max = bounds
        feet = np.column_stack([np.clip(feet[:, 0], x_min, x_max), np.clip(feet[:, 1], y_min, y_max)])
    return feet


def trace_foot(  # noqa: WPS211
    params: BatesParams,
    market: MarketSpec,
    point: tuple[float, float],
    dt: float,
    method: FootMethod = FootMethod.EXACT,
    bounds: Bounds | None = None,
) -> tuple[float, float]:
    """Trace the foot of one point under the Bates convection field.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): The rate is used.
        point (tuple[float, float]): Starting point.
        dt (float): Step length.
        method (FootMethod): Integrator.
        bounds (Bounds | None): Domain rectangle to clamp into.

    Returns:
        tuple[float, float]: The foot.
    """
    foot = trace_feet(BatesVelocity(params, market.rate), np.array([point]), dt, method, bounds)[0]
    return float(foot[0]), float(foot[1])

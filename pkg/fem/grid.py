"""Module defines the discretization settings of the finite element solver."""
import math
from dataclasses import dataclass
from enum import Enum

from exceptions import ConfigurationError


class RightBoundary(Enum):
    """Dirichlet value on ``x = x_max``.

    Attributes:
        EXPONENTIAL (str): ``e^{x_max}``, the undiscounted asymptote.
        PAYOFF (str): ``max(e^{x_max} - K e^{-r tau}, 0)``, the discounted payoff asymptote.

    ``RightBoundary("paper")`` is accepted as another name of ``EXPONENTIAL``.
    """

    # WPS ignore, that it is a Enum. It is a valid use case
    EXPONENTIAL = "exponential"  # noqa: WPS115
    PAYOFF = "payoff"  # noqa: WPS115

    @classmethod
    def _missing_(cls, value: object) -> "RightBoundary | None":
        if value == "paper":
            return cls.EXPONENTIAL
        return None


class JumpExtension(Enum):
    """Values assumed by the option price beyond ``x_max`` inside the jump integral.

    Attributes:
        PAYOFF (str): ``e^x - K e^{-r tau}``.
        EXPONENTIAL (str): ``e^x``.
    """

    # WPS ignore, that it is a Enum. It is a valid use case
    PAYOFF = "payoff"  # noqa: WPS115
    EXPONENTIAL = "exponential"  # noqa: WPS115


@dataclass(frozen=True)
class GridConfig:
    """Space, time and quadrature resolution of a finite element run.

    Attributes:
        x_min (float): Left edge of the log-price interval.
        x_max (float): Right edge of the log-price interval.
        y_max (float): Top edge of the variance interval.
        nx (int): Mesh cells along x.
        ny (int): Mesh cells along y.
        n_steps (int): Number of time steps to maturity.
        jump_eps (float): Density tolerance fixing the jump truncation range.
        jump_quad_points (int): Gauss-Legendre nodes of the inner jump integral.
        tri_quad_order (int): Degree of the triangle quadrature rule.
        right_bc (RightBoundary): Dirichlet value on the right edge.
        extension (JumpExtension): Values beyond ``x_max`` in the jump integral.
        impose_bottom_bc (bool): Impose the Merton Dirichlet row on ``y = 0``; only honoured as
            False when the Feller condition holds.
    """

    x_min: float = 0.0
    x_max: float = math.log(400)
    y_max: float = 1.0
    nx: int = 64
    ny: int = 64
    n_steps: int = 50
    jump_eps: float = 1e-10
    jump_quad_points: int = 64
    tri_quad_order: int = 2
    right_bc: RightBoundary = RightBoundary.PAYOFF
    extension: JumpExtension = JumpExtension.PAYOFF
    impose_bottom_bc: bool = True

    def __post_init__(self) -> None:
        """Check the resolution fields.

        Raises:
            ConfigurationError: If a count is below one, or the extents or tolerance are not positive.
        """
        counts = {"nx": self.nx, "ny": self.ny, "n_steps": self.n_steps, "jump_quad_points": self.jump_quad_points}
        for name, count in counts.items():
            if count < 1:
                raise ConfigurationError(f"{name} must be at least 1, got {count}")
        if not self.x_min < self.x_max:
            raise ConfigurationError(f"x_min must be below x_max, got [{self.x_min}, {self.x_max}]")
        if self.y_max <= 0:
            raise ConfigurationError(f"y_max must be positive, got {self.y_max}")
        if self.jump_eps <= 0:
            raise ConfigurationError(f"jump_eps must be positive, got {self.jump_eps}")

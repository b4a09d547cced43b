"""Module defines the domain types of the Bates model and of the priced contract."""
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class BatesParams:
    """Risk-neutral parameters of the Bates stochastic volatility model with lognormal jumps.

    Construction never raises; admissibility is checked by :func:`model.validation.validate`.

    Attributes:
        xi (float): Mean-reversion speed of the variance, per year.
        eta (float): Long-run variance level.
        theta (float): Volatility of the variance process.
        rho (float): Correlation between the price and variance Brownian motions.
        lambda_ (float): Jump intensity, per year.
        kbar (float): Mean relative jump size, ``E[e^J] - 1``.
        delta (float): Standard deviation of the log jump size.
    """

    xi: float
    eta: float
    theta: float
    rho: float
    lambda_: float
    kbar: float
    delta: float

    @property
    def gamma_(self) -> float:
        """Mean of the log jump size, ``ln(1 + kbar) - delta^2 / 2``.

        Returns:
            float: The log jump mean.
        """
        return math.log1p(self.kbar) - self.delta**2 / 2


@dataclass(frozen=True)
class MarketSpec:
    """Contract and market state for a European call.

    The risk-neutral drift is derived from ``rate`` and the jump compensator, it is not stored.

    Attributes:
        s0 (float): Spot price.
        strike (float): Strike price.
        maturity (float): Time to maturity in years.
        rate (float): Continuously compounded risk-free rate.
        y0 (float): Initial variance.
    """

    s0: float
    strike: float
    maturity: float
    rate: float
    y0: float


@dataclass
class ValidationReport:
    """Findings of a parameter validation.

    Attributes:
        hard_errors (list[str]): Violated hard constraints; non-empty means no solver may run.
        warnings (list[str]): Soft findings, notably a violated Feller condition.
    """

    hard_errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def is_admissible(self) -> bool:
        """Whether the parameters are admissible for all solvers.

        Returns:
            bool: True if no hard constraint is violated.
        """
        return not self.hard_errors

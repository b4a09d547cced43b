"""Module validates Bates parameters and market inputs before any solver runs."""
import logging
import math

from model.exceptions import ParameterError
from model.params import BatesParams, MarketSpec, ValidationReport

logger = logging.getLogger(__name__)


def feller_holds(params: BatesParams) -> bool:
    """Check the Feller condition ``theta^2 <= 2 xi eta``.

    Args:
        params (BatesParams): Model parameters.

    Returns:
        bool: True if the variance process stays strictly positive.
    """
    return params.theta**2 <= 2 * params.xi * params.eta


def validate(params: BatesParams, market: MarketSpec) -> ValidationReport:
    """Validate model and market inputs.

    Validation is total: nothing is raised, every finding lands in the report. A violated Feller
    condition is only a warning because the y=0 boundary data keeps the problem well posed.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.

    Returns:
        ValidationReport: Hard errors and warnings.
    """
    report = ValidationReport()
    report.hard_errors.extend(_check_params(params))
    report.hard_errors.extend(_check_market(market))
    if not report.hard_errors and not feller_holds(params):
        report.warnings.append(
            f"Feller violated: theta^2={params.theta**2:.6g} > 2*xi*eta={2 * params.xi * params.eta:.6g}",
        )
    return report


def ensure_admissible(params: BatesParams, market: MarketSpec) -> None:
    """Raise if the inputs violate any hard constraint, log the soft findings otherwise.

    Args:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.

    Raises:
        ParameterError: If at least one hard constraint is violated.
    """
    report = validate(params, market)
    if not report.is_admissible:
        raise ParameterError(report.hard_errors)
    for warning in report.warnings:
        logger.warning(warning)


def _check_params(params: BatesParams) -> list[str]:  # noqa: WPS231
    """Collect the violated hard constraints of the model parameters.

    Args:
        params (BatesParams): Model parameters.

    Returns:
        list[str]: Violations in a fixed order.
    """
    findings = [
        f"{name} must be finite"
        for name, value in vars(params).items()
        if not math.isfinite(value)
    ]
    if findings:
        return findings
    if params.xi <= 0:
        findings.append("mean-reversion speed xi must be positive")
    if params.eta <= 0:
        findings.append("long-run variance eta must be positive")
    if params.theta <= 0:
        findings.append("vol-of-vol theta must be positive")
    if abs(params.rho) > 1:
        findings.append(f"correlation out of range: rho={params.rho}")
    if params.lambda_ < 0:
        findings.append("jump intensity lambda_ must be non-negative")
    if params.kbar <= -1:
        findings.append("mean relative jump size kbar must exceed -1")
    if params.delta < 0 or (params.lambda_ > 0 and params.delta == 0):
        findings.append("jump-size deviation delta must be positive when lambda_ > 0")
    return findings


def _check_market(market: MarketSpec) -> list[str]:
    """Collect the violated hard constraints of the market inputs.

    Args:
        market (MarketSpec): Contract and market state.

    Returns:
        list[str]: Violations in a fixed order.
    """
    findings = [
        f"{name} must be finite"
        for name, value in vars(market).items()
        if not math.isfinite(value)
    ]
    if findings:
        return findings
    positives = {"s0": market.s0, "strike": market.strike, "maturity": market.maturity, "y0": market.y0}
    findings.extend(f"{name} must be positive" for name, value in positives.items() if value <= 0)
    return findings

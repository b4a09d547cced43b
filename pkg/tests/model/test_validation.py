"""Tests of parameter validation and presets."""
import dataclasses
import math

import pytest

from model.exceptions import ParameterError
from model.params import BatesParams, MarketSpec
from model.presets import PRESETS, get_preset
from model.validation import ensure_admissible, feller_holds, validate


def test_s1_feller_warning(s1: BatesParams, s1_market: MarketSpec) -> None:
    """S1 violates the Feller condition: theta^2 = 0.0567773 > 2 xi eta = 0.0212962."""
    report = validate(s1, s1_market)
    assert report.is_admissible
    assert len(report.warnings) == 1
    assert report.warnings[0].startswith("Feller violated")
    assert "0.056777" in report.warnings[0]
    assert "0.021296" in report.warnings[0]


def test_every_preset_is_admissible_and_violates_feller(preset: BatesParams) -> None:
    market = MarketSpec(s0=100, strike=100, maturity=1, rate=0.05, y0=preset.eta)
    report = validate(preset, market)
    assert report.is_admissible
    assert not feller_holds(preset)


def test_correlation_out_of_range(s1: BatesParams, s1_market: MarketSpec) -> None:
    report = validate(dataclasses.replace(s1, rho=1.5), s1_market)
    assert not report.is_admissible
    assert any("correlation out of range" in finding for finding in report.hard_errors)


def test_feller_boundary_gives_no_warning() -> None:
    params = BatesParams(xi=1, eta=0.5, theta=1, rho=0, lambda_=0, kbar=0, delta=0.1)
    market = MarketSpec(s0=100, strike=100, maturity=1, rate=0, y0=0.5)
    assert feller_holds(params)
    assert validate(params, market).warnings == []


@pytest.mark.parametrize(
    ("field", "value"),
    [("xi", 0.0), ("eta", -0.1), ("theta", 0.0), ("lambda_", -1.0), ("kbar", -1.0), ("delta", 0.0)],
)
def test_hard_parameter_errors(s1: BatesParams, s1_market: MarketSpec, field: str, value: float) -> None:
    report = validate(dataclasses.replace(s1, **{field: value}), s1_market)
    assert not report.is_admissible
    assert report.warnings == []


@pytest.mark.parametrize("field", ["s0", "strike", "maturity", "y0"])
def test_market_positivity(s1: BatesParams, s1_market: MarketSpec, field: str) -> None:
    report = validate(s1, dataclasses.replace(s1_market, **{field: 0.0}))
    assert f"{field} must be positive" in report.hard_errors


def test_non_finite_values_are_reported(s1: BatesParams, s1_market: MarketSpec) -> None:
    report = validate(dataclasses.replace(s1, eta=float("nan")), s1_market)
    assert report.hard_errors == ["eta must be finite"]


def test_ensure_admissible_raises_with_all_findings(s1: BatesParams, s1_market: MarketSpec) -> None:
    with pytest.raises(ParameterError, match="correlation out of range") as error:
        ensure_admissible(dataclasses.replace(s1, rho=2.0, xi=-1.0), s1_market)
    assert len(error.value.findings) == 2


def test_preset_values_match_table() -> None:
    s1 = get_preset("S1")
    assert (s1.xi, s1.eta, s1.theta, s1.rho) == (0.21568, 0.04937, 0.23828, -0.44793)
    assert (s1.kbar, s1.delta, s1.lambda_) == (-0.11889, 0.17189, 0.13674)
    s3 = get_preset("s3")
    assert (s3.kbar, s3.delta, s3.lambda_) == (0.080396, 0.057373, 0.05218)


def test_unknown_preset() -> None:
    with pytest.raises(ParameterError, match="unknown preset"):
        get_preset("S9")


def test_gamma_is_derived(s1: BatesParams) -> None:
    assert s1.gamma_ == math.log1p(s1.kbar) - s1.delta**2 / 2
    assert s1.gamma_ == pytest.approx(-0.14134, abs=2e-5)
    assert set(PRESETS) == {"S1", "S2", "S3", "S4"}

"""Tests of the cumulant, the Lévy density and the jump truncation range."""
import dataclasses
import math

import numpy as np
import pytest
from scipy.integrate import quad

from model.exceptions import PreconditionError
from model.jumps import compensator, cumulant, jump_truncation_bounds, levy_density
from model.params import BatesParams


def test_cumulant_at_zero(s1: BatesParams) -> None:
    assert cumulant(s1, 0.0) == 0.0


def test_cumulant_without_jumps(s1: BatesParams) -> None:
    params = dataclasses.replace(s1, lambda_=0.0)
    assert cumulant(params, 2.5) == 0.0


def test_cumulant_at_one_is_compensator(preset: BatesParams) -> None:
    assert cumulant(preset, 1.0) == pytest.approx(preset.lambda_ * preset.kbar, rel=1e-13)
    assert compensator(preset) == preset.lambda_ * preset.kbar


def test_s1_compensator_value(s1: BatesParams) -> None:
    assert cumulant(s1, 1.0) == pytest.approx(-0.0162570186, rel=1e-8)


def test_cumulant_is_vectorized(s1: BatesParams) -> None:
    values = cumulant(s1, np.array([0.0, 1.0]))
    assert isinstance(values, np.ndarray)
    assert values[0] == 0.0


def test_density_mode(s1: BatesParams) -> None:
    expected = s1.lambda_ / (s1.delta * math.sqrt(2 * math.pi))
    assert levy_density(s1, s1.gamma_) == pytest.approx(expected, rel=1e-14)


def test_density_without_jumps(s1: BatesParams) -> None:
    assert levy_density(dataclasses.replace(s1, lambda_=0.0), 0.3) == 0.0


def test_density_integrates_to_intensity(preset: BatesParams) -> None:
    lower, upper = jump_truncation_bounds(preset, 1e-10)
    total, _ = quad(lambda u: levy_density(preset, u), lower, upper, epsabs=1e-14, epsrel=1e-12)
    assert total == pytest.approx(preset.lambda_, abs=1e-8 * preset.lambda_)


def test_s1_truncation_bounds(s1: BatesParams) -> None:
    lower, upper = jump_truncation_bounds(s1, 1e-10)
    assert upper == pytest.approx(1.32897, abs=1e-3)
    assert lower == -upper


def test_smaller_eps_widens_range(s1: BatesParams) -> None:
    assert jump_truncation_bounds(s1, 1e-12)[1] > jump_truncation_bounds(s1, 1e-10)[1]


def test_density_at_bounds_is_small(preset: BatesParams) -> None:
    lower, upper = jump_truncation_bounds(preset, 1e-10)
    bound = preset.lambda_ * 1e-10 * (1 + 1e-9)
    assert levy_density(preset, lower) <= bound
    assert levy_density(preset, upper) <= bound


@pytest.mark.parametrize("eps", [0.0, -1.0, 10.0])
def test_bad_eps(s1: BatesParams, eps: float) -> None:
    with pytest.raises(PreconditionError, match="jump_eps"):
        jump_truncation_bounds(s1, eps)

"""Module holds the calibrated parameter sets S1 to S4 shipped as named presets.

Attributes:
    PRESETS (dict[str, BatesParams]): Preset name to parameters, values exactly as published.
"""
from typing import Final

from model.exceptions import ParameterError
from model.params import BatesParams

PRESETS: Final = {  # noqa: WPS407
    "S1": BatesParams(
        xi=0.21568,
        eta=0.04937,
        theta=0.23828,
        rho=-0.44793,
        lambda_=0.13674,
        kbar=-0.11889,
        delta=0.17189,
    ),
    "S2": BatesParams(
        xi=0.33502,
        eta=0.033582,
        theta=0.26969,
        rho=-0.42404,
        lambda_=0.33785,
        kbar=-0.077973,
        delta=0.11048,
    ),
    "S3": BatesParams(
        xi=0.13279,
        eta=0.18193,
        theta=0.37518,
        rho=-0.59722,
        lambda_=0.05218,
        kbar=0.080396,
        delta=0.057373,
    ),
    "S4": BatesParams(
        xi=0.48443,
        eta=0.022097,
        theta=0.21903,
        rho=-0.40066,
        lambda_=0.15977,
        kbar=-0.12938,
        delta=0.16878,
    ),
}


def get_preset(name: str) -> BatesParams:
    """Look up a preset parameter set by name.

    Args:
        name (str): Preset name, case-insensitive (``"S1"`` to ``"S4"``).

    Returns:
        BatesParams: The preset parameters.

    Raises:
        ParameterError: If no preset has that name.
    """
    try:
        return PRESETS[name.upper()]
    except KeyError as exception:
        raise ParameterError([f"unknown preset {name!r}, expected one of {sorted(PRESETS)}"]) from exception

"""Module configures the process-wide settings of the Bates pricing engine.

Values are read from the environment or a ``.env`` file with python-decouple.

Attributes:
    LOG_LEVEL (str): Logging level name applied to the root logger.
    WORKERS (int): Worker threads used for surface pricing and Monte Carlo blocks.
    MC_BLOCK_SIZE (int): Paths simulated together by one Monte Carlo worker task.
"""
import logging
from typing import Final

from decouple import config

# Pyright is unable to infer the type of the values returned by the decouple config function.
LOG_LEVEL: Final[str] = config("BATES_LOG_LEVEL", default="WARNING")  # pyright: ignore[reportAssignmentType]
WORKERS: Final[int] = config("BATES_WORKERS", default=1, cast=int)  # pyright: ignore[reportAssignmentType]
MC_BLOCK_SIZE: Final[int] = config("BATES_MC_BLOCK_SIZE", default=8192, cast=int)  # pyright: ignore[reportAssignmentType]

logging.basicConfig(
    level=LOG_LEVEL.upper(),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)

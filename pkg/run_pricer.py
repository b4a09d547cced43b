"""Script serves as the entry point of the Bates pricing engine.

Command-line Arguments:
    - ``validate``: check the inputs.
    - ``price --method fem|fft|mc|merton``: price one call.
    - ``surface``: implied-volatility surface CSV.
    - ``compare``: FEM against FFT over spots.
    - ``mesh-info``: mesh statistics and export.
"""
import sys

import config  # noqa: F401
from dispatcher import dp


def main() -> None:
    """Run the command given on the command line and exit with its code."""
    sys.exit(dp.dispatch())


if __name__ == "__main__":
    main()

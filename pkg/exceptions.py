"""Module contains the root exception classes shared by every pricing package.

The command layer maps these classes onto process exit codes, so every error raised by an
engine should derive from one of them.
"""


class PricingError(Exception):
    """Base class for every error raised by the pricing engines."""


class ConfigurationError(PricingError):
    """Raised when inputs or settings are inadmissible before any numerics run.

    Configuration errors are reported with exit code 2 by the command line.
    """


class NumericalError(PricingError):
    """Raised when a numerical procedure fails on admissible inputs.

    Numerical errors are reported with exit code 3 by the command line.
    """

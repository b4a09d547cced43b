"""Module contains exception classes for the reference pricers."""
from exceptions import ConfigurationError, NumericalError


class FftConfigurationError(ConfigurationError):
    """Raised when an FFT grid is malformed or its damping makes the transform non-integrable."""


class StrikeOutOfRangeError(NumericalError):
    """Raised when a strike lies outside the FFT strike ladder."""


class SeriesNotConvergedError(NumericalError):
    """Raised when the Merton series does not reach its tolerance within the term limit."""


class ImpliedVolDomainError(NumericalError):
    """Raised when a price admits no Black-Scholes implied volatility.

    Attributes:
        bound (str): The violated bound: ``"intrinsic"``, ``"spot"`` or ``"bracket"``.
    """

    def __init__(self, message: str, bound: str) -> None:
        """Initialize the error with the violated bound.

        Args:
            message (str): Human readable description.
            bound (str): Name of the violated bound.
        """
        super().__init__(message)
        self.bound = bound

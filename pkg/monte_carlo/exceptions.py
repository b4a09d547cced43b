"""Module contains exception classes for the Monte Carlo package."""
from exceptions import ConfigurationError


class McConfigError(ConfigurationError):
    """Raised when a simulation request is malformed or exceeds the operation cap."""

"""Module contains exception classes for the command line layer."""
from exceptions import ConfigurationError


class ConfigKeyError(ConfigurationError):
    """Raised when a run configuration has an unknown, missing or mistyped key."""

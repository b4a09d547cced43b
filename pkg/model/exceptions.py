"""Module contains exception classes for the model package."""
from exceptions import ConfigurationError


class ParameterError(ConfigurationError):
    """Raised when model or market parameters violate a hard constraint.

    Attributes:
        findings (list[str]): Every violated constraint, in the order they were checked.
    """

    def __init__(self, findings: list[str]) -> None:
        """Initialize the error with the list of violated constraints.

        Args:
            findings (list[str]): Human readable descriptions of the violated constraints.
        """
        super().__init__("; ".join(findings))
        self.findings = findings


class PreconditionError(ConfigurationError):
    """Raised when a function is called outside its documented domain."""

"""Module contains exception classes for the finite element package."""
import numpy as np
import numpy.typing as npt

from exceptions import ConfigurationError, NumericalError


class MeshError(ConfigurationError):
    """Raised when a mesh cannot be built or is geometrically invalid."""


class MeshFormatError(MeshError):
    """Raised when a mesh text file does not follow the expected format."""


class LocationError(NumericalError):
    """Raised when a point cannot be located in the mesh.

    Attributes:
        point (tuple[float, float]): The offending point.
    """

    def __init__(self, message: str, point: tuple[float, float]) -> None:
        """Initialize the error with the offending point.

        Args:
            message (str): Human readable description.
            point (tuple[float, float]): The point that could not be located.
        """
        super().__init__(f"{message}: ({point[0]!r}, {point[1]!r})")
        self.point = point


class AssemblyError(NumericalError):
    """Raised when an operator cannot be assembled.

    Attributes:
        coordinates (tuple[float, float] | None): Quadrature point that caused the failure, if any.
    """

    def __init__(self, message: str, coordinates: tuple[float, float] | None = None) -> None:
        """Initialize the error with the failing coordinates.

        Args:
            message (str): Human readable description.
            coordinates (tuple[float, float] | None): Failing quadrature point.
        """
        super().__init__(message)
        self.coordinates = coordinates


class BoundaryContractError(NumericalError):
    """Raised when boundary data is requested at a point that is not on a tagged boundary."""


class LinearSolverError(NumericalError):
    """Raised when the iterative linear solver does not converge.

    Attributes:
        residuals (npt.NDArray[np.float64]): Residual norm history of the failed solve.
    """

    def __init__(self, message: str, residuals: npt.NDArray[np.float64]) -> None:
        """Initialize the error with the residual history.

        Args:
            message (str): Human readable description.
            residuals (npt.NDArray[np.float64]): Residual norms recorded by the solver.
        """
        super().__init__(message)
        self.residuals = residuals

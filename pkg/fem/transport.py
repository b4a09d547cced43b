"""Module assembles the characteristic Galerkin transport term of a time step.

The value carried into a step is ``integral F_prev(X(x)) psi_i dx`` with ``X(x)`` the foot of the
characteristic through ``x``. The integral uses the triangle rule: every quadrature point is traced,
points whose foot stays in the domain read the previous P1 field there, and points whose path leaves
the domain read the boundary data where the path crosses the boundary, linearly interpolated in time
between the start and the end of the step.
"""
import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import sparse

from fem.boundary import DirichletData
from fem.characteristics import FootMethod, VelocityField, trace_feet
from fem.location import interpolation_matrix
from fem.mesh import Mesh
from fem.quadrature import triangle_rule

type FloatArray = npt.NDArray[np.float64]
type Bounds = tuple[float, float, float, float]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CharacteristicTransport:
    """Transport operator of a fixed velocity field and step length.

    Attributes:
        dt (float): Step length the feet were traced over.
        interior (sparse.csr_matrix): Weights of the previous nodal values read at feet inside the domain.
        inflow_start (sparse.csr_matrix): Weights of the boundary field at the start of the step.
        inflow_end (sparse.csr_matrix): Weights of the boundary field at the end of the step.
        n_inflow (int): Quadrature points whose characteristic leaves the domain within the step.
    """

    dt: float
    interior: sparse.csr_matrix
    inflow_start: sparse.csr_matrix
    inflow_end: sparse.csr_matrix
    n_inflow: int

    def apply(self, values: FloatArray, boundary: DirichletData, tau: float) -> FloatArray:
        """Return ``integral F(X(x), tau) psi_i dx`` for every test function.

        Boundary nodes without a Dirichlet row feed the inflow term with their current values.

        Args:
            values (FloatArray): Nodal values at ``tau``.
            boundary (DirichletData): Dirichlet data of the problem.
            tau (float): Time to maturity at the start of the step.

        Returns:
            FloatArray: Transported load vector.
        """
        load = self.interior @ values
        if self.n_inflow:
            start = np.where(boundary.mask, boundary.values(tau), values)
            end = np.where(boundary.mask, boundary.values(tau + self.dt), values)
            load = load + self.inflow_start @ start + self.inflow_end @ end
        return load


def exit_fraction(points: FloatArray, feet: FloatArray, bounds: Bounds) -> FloatArray:
    """Return the share of the segment from each point to its foot that lies in the rectangle.

    Args:
        points (FloatArray): Starting points ``(P, 2)`` inside the rectangle.
        feet (FloatArray): Unclamped feet ``(P, 2)``.
        bounds (Bounds): ``(x_min, x_max, y_min, y_max)``.

    Returns:
        FloatArray: Fractions in ``[0, 1]``, one where the foot is inside.
    """
    x_min, x_max, y_min, y_max = bounds
    lower = np.array([x_min, y_min])
    upper = np.array([x_max, y_max])
    displacement = feet - points
    with np.errstate(divide="ignore", invalid="ignore"):
        to_upper = np.where(feet > upper, (upper - points) / displacement, 1.0)
        to_lower = np.where(feet < lower, (lower - points) / displacement, 1.0)
    return np.clip(np.minimum(to_upper, to_lower).min(axis=1), 0.0, 1.0)


def assemble_transport(
    mesh: Mesh,
    velocity: VelocityField,
    dt: float,
    method: FootMethod = FootMethod.EXACT,
    tri_quad_order: int = 2,
) -> CharacteristicTransport:
    """Trace the quadrature points of every triangle and assemble the transport operator.

    Args:
        mesh (Mesh): The mesh.
        velocity (VelocityField): Convection field.
        dt (float): Step length.
        method (FootMethod): Integrator of the feet.
        tri_quad_order (int): Degree of the triangle rule.

    Returns:
        CharacteristicTransport: Operator reused by every step of length ``dt``.
    """
    points, weights = triangle_rule(tri_quad_order)
    quad_points = np.einsum("qc,tcd->tqd", points, mesh.nodes[mesh.triangles]).reshape(-1, 2)
    n_points = quad_points.shape[0]
    test_weights = (mesh.signed_areas[:, None] * weights)[:, :, None] * points
    rows = np.broadcast_to(mesh.triangles[:, None, :], test_weights.shape)
    cols = np.broadcast_to(np.arange(n_points).reshape(test_weights.shape[:2])[:, :, None], test_weights.shape)
    quadrature = sparse.csr_matrix(
        (test_weights.ravel(), (rows.ravel(), cols.ravel())), shape=(mesh.n_nodes, n_points),
    )

    feet = trace_feet(velocity, quad_points, dt, method)
    fraction = exit_fraction(quad_points, feet, mesh.bounds)
    leaving = fraction < 1
    landing = np.where(leaving[:, None], quad_points + fraction[:, None] * (feet - quad_points), feet)
    at_landing = interpolation_matrix(mesh, landing)

    def weighted(share: FloatArray) -> sparse.csr_matrix:
        operator = sparse.csr_matrix(quadrature @ sparse.diags(share) @ at_landing)
        operator.eliminate_zeros()
        operator.sort_indices()
        return operator

    n_inflow = int(leaving.sum())
    logger.debug("Traced %d quadrature feet, %d leave the domain", n_points, n_inflow)
    return CharacteristicTransport(
        dt=dt,
        interior=weighted((~leaving).astype(float)),
        inflow_start=weighted(np.where(leaving, fraction, 0.0)),
        inflow_end=weighted(np.where(leaving, 1 - fraction, 0.0)),
        n_inflow=n_inflow,
    )

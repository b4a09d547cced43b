"""Module assembles the P1 finite element operators of the Bates pricing equation.

The step system in time to maturity reads ``(M/dt + A_D + A_J + r M) F_new = M/dt F_feet + g_J(tau)``,
where ``A_D`` is the diffusion form with the variance-dependent matrix ``K(y)``, ``A_J`` minus the
jump integral of the trial function and ``g_J`` the contribution of the price extended beyond ``x_max``.
"""
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Final

import numpy as np
import numpy.typing as npt
from scipy import sparse

from fem.boundary import DirichletData, build_boundary_data
from fem.exceptions import AssemblyError, LocationError
from fem.grid import GridConfig, JumpExtension
from fem.location import locate_prepared, spatial_index
from fem.mesh import Mesh
from fem.quadrature import gauss_legendre, triangle_rule
from model.jumps import jump_truncation_bounds, levy_density
from model.params import BatesParams, MarketSpec

type FloatArray = npt.NDArray[np.float64]
type IntArray = npt.NDArray[np.int64]

_JUMP_POINTS_PER_CHUNK: Final = 200_000

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JumpExtensionWeights:
    """Right-hand side contribution of the extended price inside the jump integral.

    ``g_J(tau) = exponential - K e^{-r tau} constant`` in payoff mode, ``exponential`` otherwise.

    Attributes:
        exponential (FloatArray): Weights of ``e^{x+u}`` per test function.
        constant (FloatArray): Weights of a unit value per test function.
        strike (float): Strike of the priced call.
        rate (float): Discount rate.
        mode (JumpExtension): Extension rule.
    """

    exponential: FloatArray
    constant: FloatArray
    strike: float
    rate: float
    mode: JumpExtension

    def __call__(self, tau: float) -> FloatArray:
        """Evaluate the extension vector.

        Args:
            tau (float): Time to maturity.

        Returns:
            FloatArray: ``g_J(tau)``.
        """
        if self.mode is JumpExtension.EXPONENTIAL:
            return self.exponential.copy()
        return self.exponential - self.strike * math.exp(-self.rate * tau) * self.constant


@dataclass(frozen=True)
class OperatorSet:
    """Assembled operators of one pricing problem.

    Attributes:
        mesh (Mesh): The mesh.
        mass (sparse.csr_matrix): Mass matrix ``M``.
        diffusion (sparse.csr_matrix): Diffusion matrix ``A_D``.
        jump (sparse.csr_matrix): Jump matrix ``A_J``.
        jump_boundary (Callable[[float], FloatArray]): Extension vector ``g_J(tau)``.
        boundary (DirichletData): Dirichlet nodes and values.
    """

    mesh: Mesh
    mass: sparse.csr_matrix
    diffusion: sparse.csr_matrix
    jump: sparse.csr_matrix
    jump_boundary: Callable[[float], FloatArray]
    boundary: DirichletData


def _scatter(mesh: Mesh, local: FloatArray) -> sparse.csr_matrix:
    """Sum element matrices ``(M, 3, 3)`` into a global CSR matrix in element order.

    Args:
        mesh (Mesh): The mesh.
        local (FloatArray): Element matrices.

    Returns:
        sparse.csr_matrix: Global matrix.
    """
    rows = np.broadcast_to(mesh.triangles[:, :, None], local.shape).ravel()
    cols = np.broadcast_to(mesh.triangles[:, None, :], local.shape).ravel()
    matrix = sparse.coo_matrix((local.ravel(), (rows, cols)), shape=(mesh.n_nodes, mesh.n_nodes)).tocsr()
    matrix.sort_indices()
    return matrix


def assemble_mass(mesh: Mesh) -> sparse.csr_matrix:
    """Assemble the exact P1 mass matrix, ``area / 12 (1 + delta_ij)`` per element.

    Args:
        mesh (Mesh): The mesh.

    Returns:
        sparse.csr_matrix: Symmetric positive definite mass matrix.
    """
    pattern = (np.ones((3, 3)) + np.eye(3)) / 12
    return _scatter(mesh, mesh.signed_areas[:, None, None] * pattern)


def assemble_diffusion(mesh: Mesh, params: BatesParams, tri_quad_order: int = 2) -> sparse.csr_matrix:
    """Assemble ``A_D[i, j] = integral of K(y) grad psi_j . grad psi_i``.

    ``K(y) = y / 2 [[1, rho theta], [rho theta, theta^2]]`` is linear in ``y`` so only the
    quadrature mean of ``y`` per element enters.

    Args:
        mesh (Mesh): The mesh.
        params (BatesParams): Model parameters.
        tri_quad_order (int): Triangle quadrature degree.

    Returns:
        sparse.csr_matrix: Symmetric positive semidefinite diffusion matrix.
    """
    points, weights = triangle_rule(tri_quad_order)
    node_y = mesh.nodes[mesh.triangles][:, :, 1]
    mean_y = (node_y @ points.T) @ weights
    correlation = params.rho * params.theta
    shape = np.array([[1, correlation], [correlation, params.theta**2]])
    grads = mesh.gradients
    local = np.einsum("tia,ab,tjb->tij", grads, shape, grads)
    return _scatter(mesh, (mesh.signed_areas * mean_y / 2)[:, None, None] * local)


def assemble_jump(
    mesh: Mesh,
    params: BatesParams,
    market: MarketSpec,
    grid: GridConfig,
) -> tuple[sparse.csr_matrix, JumpExtensionWeights]:
    """Assemble ``A_J`` and the extension weights of the jump integral.

    For test function ``psi_i`` the form is ``-integral psi_i integral [F(x+u, y) - F(x, y)] W(u) du``.
    The outer integral uses the triangle rule, the inner one Gauss-Legendre nodes on the truncated
    jump range. ``F(x+u, y)`` is the P1 field inside the domain, zero left of ``x_min`` and the
    extension rule right of ``x_max``; the latter lands in the extension weights.

    Args:
        mesh (Mesh): The mesh.
        params (BatesParams): Model parameters.
        market (MarketSpec): Strike and rate are used by the extension.
        grid (GridConfig): Quadrature resolution and extension rule.

    Returns:
        tuple[sparse.csr_matrix, JumpExtensionWeights]: Jump matrix and extension weights.

    Raises:
        AssemblyError: If a shifted quadrature point cannot be located.
    """
    n_nodes = mesh.n_nodes
    exponential = np.zeros(n_nodes)
    constant = np.zeros(n_nodes)
    extension = JumpExtensionWeights(exponential, constant, market.strike, market.rate, grid.extension)
    if params.lambda_ == 0:
        return sparse.csr_matrix((n_nodes, n_nodes)), extension

    lower, upper = jump_truncation_bounds(params, grid.jump_eps)
    jumps, jump_weights = gauss_legendre(grid.jump_quad_points, lower, upper)
    jump_weights = jump_weights * np.asarray(levy_density(params, jumps))
    intensity = float(jump_weights.sum())
    points, tri_weights = triangle_rule(grid.tri_quad_order)

    # The intensity term uses the same quadrature as the shifted term so constants cancel exactly.
    local_mass = np.einsum("q,qi,qj->ij", tri_weights, points, points)
    jump_matrix = _scatter(mesh, intensity * mesh.signed_areas[:, None, None] * local_mass)

    index = spatial_index(mesh)
    x_min, x_max = mesh.bounds[0], mesh.bounds[1]
    chunk = max(1, _JUMP_POINTS_PER_CHUNK // (points.shape[0] * jumps.size))
    for start in range(0, mesh.n_triangles, chunk):
        triangles = mesh.triangles[start : start + chunk]
        quad_points = np.einsum("qc,tcd->tqd", points, mesh.nodes[triangles])
        weight = (mesh.signed_areas[start : start + chunk, None] * tri_weights)[:, :, None] * jump_weights
        shifted = quad_points[:, :, 0, None] + jumps
        above = shifted > x_max
        inside = (shifted >= x_min) & ~above

        np.add.at(exponential, triangles, np.einsum("tqk,qc->tc", weight * np.exp(shifted) * above, points))
        np.add.at(constant, triangles, np.einsum("tqk,qc->tc", weight * above, points))

        tri_index, quad_index, _ = np.nonzero(inside)
        heights = np.broadcast_to(quad_points[:, :, 1, None], shifted.shape)[inside]
        query = np.column_stack([shifted[inside], heights])
        try:
            found, target_weights = locate_prepared(index, query)
        except LocationError as exc:
            raise AssemblyError(f"jump quadrature point not located: {exc}", exc.point) from exc
        coefficient = weight[inside][:, None, None] * points[quad_index][:, :, None] * target_weights[:, None, :]
        rows = np.broadcast_to(triangles[tri_index][:, :, None], coefficient.shape).ravel()
        cols = np.broadcast_to(mesh.triangles[found][:, None, :], coefficient.shape).ravel()
        jump_matrix = jump_matrix - sparse.coo_matrix(
            (coefficient.ravel(), (rows, cols)), shape=(n_nodes, n_nodes),
        ).tocsr()

    jump_matrix = jump_matrix.tocsr()
    jump_matrix.sort_indices()
    logger.info("Assembled jump operator: nnz=%d, truncation [%.6g, %.6g]", jump_matrix.nnz, lower, upper)
    return jump_matrix, extension


def assemble_operators(
    mesh: Mesh,
    params: BatesParams,
    market: MarketSpec,
    grid: GridConfig,
) -> OperatorSet:
    """Assemble every time-independent operator of a pricing problem.

    Args:
        mesh (Mesh): The mesh.
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.
        grid (GridConfig): Quadrature and boundary settings.

    Returns:
        OperatorSet: Operators and Dirichlet data.
    """
    mass = assemble_mass(mesh)
    diffusion = assemble_diffusion(mesh, params, grid.tri_quad_order)
    jump, jump_boundary = assemble_jump(mesh, params, market, grid)
    logger.info("Assembled operators: mass nnz=%d, diffusion nnz=%d, jump nnz=%d", mass.nnz, diffusion.nnz, jump.nnz)
    return OperatorSet(
        mesh=mesh,
        mass=mass,
        diffusion=diffusion,
        jump=jump,
        jump_boundary=jump_boundary,
        boundary=build_boundary_data(mesh, params, market, grid),
    )


def _selector(indices: IntArray, size: int) -> sparse.csr_matrix:
    """Diagonal 0/1 matrix with ones at ``indices`` only.

    Args:
        indices (IntArray): Selected rows.
        size (int): Matrix size.

    Returns:
        sparse.csr_matrix: The selector.
    """
    return sparse.csr_matrix((np.ones(indices.size), (indices, indices)), shape=(size, size))


def apply_dirichlet(
    ops: OperatorSet,
    matrix: sparse.csr_matrix,
    rhs: FloatArray,
    tau: float,
    *,
    symmetric: bool = False,
) -> tuple[sparse.csr_matrix, FloatArray]:
    """Replace the Dirichlet rows by identity rows carrying the boundary values at ``tau``.

    Interior rows are left bit-exact unless ``symmetric`` also eliminates the Dirichlet columns.
    Applying the constraints twice gives the same system as applying them once.

    Args:
        ops (OperatorSet): Operators carrying the Dirichlet data.
        matrix (sparse.csr_matrix): System matrix.
        rhs (FloatArray): Right-hand side.
        tau (float): Time to maturity of the unknown.
        symmetric (bool): Also move Dirichlet columns to the right-hand side.

    Returns:
        tuple[sparse.csr_matrix, FloatArray]: Constrained matrix and right-hand side.
    """
    mask = ops.boundary.mask
    size = mask.shape[0]
    values = ops.boundary.values(tau)
    fixed = _selector(np.flatnonzero(mask), size)
    free = _selector(np.flatnonzero(~mask), size)
    constrained_rhs = np.where(mask, values, rhs)
    if symmetric:
        constrained_rhs = constrained_rhs - free @ (matrix @ np.where(mask, values, 0))
        constrained = free @ matrix @ free + fixed
    else:
        constrained = free @ matrix + fixed
    constrained = sparse.csr_matrix(constrained)
    constrained.sort_indices()
    return constrained, constrained_rhs

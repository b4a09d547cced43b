"""Tests of the characteristic Galerkin transport operator."""
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import pytest

from fem.assembly import assemble_mass
from fem.characteristics import BatesVelocity, ConstantVelocity
from fem.mesh import Mesh, build_rect_mesh
from fem.transport import assemble_transport, exit_fraction
from model.params import BatesParams

VELOCITY = (0.3, -0.2)


def _linear(points: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return 2.0 + 0.5 * points[:, 0] - 3.0 * points[:, 1]


@dataclass(frozen=True)
class MovingLinearBoundary:
    """Values of a linear field carried by a constant velocity, prescribed on the boundary nodes."""

    nodes: npt.NDArray[np.float64]
    mask: npt.NDArray[np.bool_]

    def values(self, tau: float) -> npt.NDArray[np.float64]:
        return _linear(self.nodes + tau * np.asarray(VELOCITY))


def test_zero_velocity_gives_the_mass_matrix(small_mesh: Mesh) -> None:
    transport = assemble_transport(small_mesh, ConstantVelocity((0.0, 0.0)), 0.1)
    assert transport.n_inflow == 0
    difference = transport.interior - assemble_mass(small_mesh)
    assert abs(difference).max() < 1e-14
    assert transport.inflow_start.nnz == 0
    assert transport.inflow_end.nnz == 0


def test_linear_field_is_transported_exactly_across_the_boundary() -> None:
    mesh = build_rect_mesh(0.0, 4.0, 1.0, 8, 8)
    boundary = MovingLinearBoundary(mesh.nodes, mesh.boundary_tags != 0)
    transport = assemble_transport(mesh, ConstantVelocity(VELOCITY), 0.05)
    assert transport.n_inflow > 0
    load = transport.apply(boundary.values(0.3), boundary, 0.3)
    np.testing.assert_allclose(load, assemble_mass(mesh) @ boundary.values(0.35), atol=1e-13)


def test_quadrature_feet_stay_inside_for_small_steps(s1: BatesParams, small_mesh: Mesh) -> None:
    transport = assemble_transport(small_mesh, BatesVelocity(s1, 0.05), 1e-12)
    assert transport.n_inflow == 0
    np.testing.assert_allclose(transport.interior.toarray(), assemble_mass(small_mesh).toarray(), atol=1e-10)


def test_exit_fraction() -> None:
    points = np.array([[0.5, 0.5], [0.5, 0.5], [0.9, 0.5], [0.5, 0.1]])
    feet = np.array([[0.6, 0.4], [1.5, 0.5], [1.1, 0.9], [0.5, -0.3]])
    fraction = exit_fraction(points, feet, (0.0, 1.0, 0.0, 1.0))
    np.testing.assert_allclose(fraction, [1.0, 0.5, 0.5, 0.25])


@pytest.mark.parametrize("order", [2, 4])
def test_rows_integrate_constants(small_mesh: Mesh, s1: BatesParams, order: int) -> None:
    transport = assemble_transport(small_mesh, BatesVelocity(s1, 0.05), 0.1, tri_quad_order=order)
    ones = np.ones(small_mesh.n_nodes)
    total = transport.interior @ ones + transport.inflow_start @ ones + transport.inflow_end @ ones
    np.testing.assert_allclose(total, assemble_mass(small_mesh) @ ones, rtol=1e-12)

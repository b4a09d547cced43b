"""Tests of point location and P1 interpolation."""
import numpy as np
import pytest

from fem.exceptions import LocationError
from fem.location import (
    LocationPolicy,
    PointLocator,
    interpolate,
    interpolate_many,
    interpolation_matrix,
    locate_point,
    locate_points,
)
from fem.mesh import Mesh


def _affine(points: np.ndarray) -> np.ndarray:
    return 1.5 - 0.7 * points[:, 0] + 4.0 * points[:, 1]


def test_centroid_is_found_in_its_triangle(small_mesh: Mesh) -> None:
    for triangle in (0, 17, 95):
        centroid = small_mesh.nodes[small_mesh.triangles[triangle]].mean(axis=0)
        location = locate_point(small_mesh, (float(centroid[0]), float(centroid[1])))
        assert location.triangle_index == triangle
        assert location.barycentric == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-12)


def test_vertex_has_unit_weight(small_mesh: Mesh) -> None:
    vertex = small_mesh.nodes[30]
    location = locate_point(small_mesh, (float(vertex[0]), float(vertex[1])))
    corners = list(small_mesh.triangles[location.triangle_index])
    assert 30 in corners
    assert location.barycentric[corners.index(30)] == pytest.approx(1.0, abs=1e-12)


def test_exterior_point_is_clamped(small_mesh: Mesh) -> None:
    clamped = locate_point(small_mesh, (-1.0, 0.55))
    on_edge = locate_point(small_mesh, (0.0, 0.55))
    assert clamped == on_edge


def test_strict_policy_rejects_exterior_point(small_mesh: Mesh) -> None:
    with pytest.raises(LocationError, match="outside the domain") as error:
        locate_point(small_mesh, (0.5, 1.5), LocationPolicy.STRICT)
    assert error.value.point == (0.5, 1.5)


def test_batch_and_walk_agree(small_mesh: Mesh) -> None:
    rng = np.random.default_rng(3)
    points = np.column_stack([rng.uniform(0, np.log(400), 200), rng.uniform(0, 1, 200)])
    triangles, weights = locate_points(small_mesh, points)
    locator = PointLocator(small_mesh)
    for point, triangle, weight in zip(points, triangles, weights, strict=True):
        location = locator.locate((float(point[0]), float(point[1])))
        np.testing.assert_allclose(
            np.dot(location.barycentric, small_mesh.nodes[small_mesh.triangles[location.triangle_index]]),
            np.dot(weight, small_mesh.nodes[small_mesh.triangles[triangle]]),
            atol=1e-12,
        )


def test_affine_field_is_reproduced(small_mesh: Mesh) -> None:
    rng = np.random.default_rng(11)
    points = np.column_stack([rng.uniform(0, np.log(400), 50), rng.uniform(0, 1, 50)])
    nodal = _affine(small_mesh.nodes)
    expected = _affine(points)
    np.testing.assert_allclose(interpolate_many(small_mesh, nodal, points), expected, atol=1e-12)
    np.testing.assert_allclose(interpolation_matrix(small_mesh, points) @ nodal, expected, atol=1e-12)
    locator = PointLocator(small_mesh)
    for point, value in zip(points, expected, strict=True):
        assert interpolate(small_mesh, nodal, (float(point[0]), float(point[1])), locator=locator) == pytest.approx(
            value,
            abs=1e-12,
        )


def test_interpolation_matrix_rows_sum_to_one(small_mesh: Mesh) -> None:
    points = np.array([[0.1, 0.1], [3.0, 0.5], [5.9, 0.99], [10.0, -1.0]])
    matrix = interpolation_matrix(small_mesh, points)
    assert matrix.shape == (4, small_mesh.n_nodes)
    np.testing.assert_allclose(np.asarray(matrix.sum(axis=1)).ravel(), 1.0, atol=1e-12)

"""Module locates points in a mesh and evaluates P1 fields at arbitrary points.

Single points use a walking search that starts from the last triangle found by the same locator;
batches use a uniform bin grid whose cells list every triangle whose bounding box overlaps them.
Exterior points are either projected onto the domain rectangle (``clamp``) or rejected (``strict``).
"""
import math
import weakref
from dataclasses import dataclass
from enum import Enum
from typing import Final

import numpy as np
import numpy.typing as npt
from scipy import sparse

from fem.exceptions import LocationError
from fem.mesh import Mesh

type FloatArray = npt.NDArray[np.float64]
type IntArray = npt.NDArray[np.int64]

BARYCENTRIC_TOLERANCE: Final = 1e-12
_ACCEPT_TOLERANCE: Final = 1e-9
_BATCH_SIZE: Final = 65536


class LocationPolicy(Enum):
    """Treatment of points outside the domain rectangle.

    Attributes:
        CLAMP (str): Project the point onto the boundary before locating it.
        STRICT (str): Raise :class:`LocationError`.
    """

    # WPS ignore, that it is a Enum. It is a valid use case
    CLAMP = "clamp"  # noqa: WPS115
    STRICT = "strict"  # noqa: WPS115


@dataclass(frozen=True)
class PointLocation:
    """Triangle containing a point and the point's barycentric weights in it.

    Attributes:
        triangle_index (int): Index of the containing triangle.
        barycentric (tuple[float, float, float]): Weights of the triangle's corners, summing to one.
    """

    triangle_index: int
    barycentric: tuple[float, float, float]


class SpatialIndex:
    """Uniform bin grid over the mesh plus per-triangle affine maps to barycentric coordinates."""

    def __init__(self, mesh: Mesh) -> None:
        """Build the bin grid and the affine maps.

        Args:
            mesh (Mesh): Mesh to index.
        """
        self.mesh = mesh
        x_min, x_max, y_min, y_max = mesh.bounds
        self.bounds = mesh.bounds
        bins_per_side = max(1, math.ceil(math.sqrt(mesh.n_triangles / 2)))
        self.n_bins_x = bins_per_side
        self.n_bins_y = bins_per_side
        self.bin_width = (x_max - x_min) / self.n_bins_x
        self.bin_height = (y_max - y_min) / self.n_bins_y

        coords = mesh.nodes[mesh.triangles]
        self.origins = coords[:, 0, :]
        edges = np.stack([coords[:, 1, :] - self.origins, coords[:, 2, :] - self.origins], axis=2)
        self.inverse_maps = np.linalg.inv(edges)
        self.candidates = self._bin_triangles(coords)

    def bin_of(self, points: FloatArray) -> IntArray:
        """Return the flat bin index of every point.

        Args:
            points (FloatArray): Points ``(P, 2)`` inside the bounding rectangle.

        Returns:
            IntArray: Bin indices ``(P,)``.
        """
        x_min, _, y_min, _ = self.bounds
        column = np.clip(np.floor((points[:, 0] - x_min) / self.bin_width), 0, self.n_bins_x - 1)
        row = np.clip(np.floor((points[:, 1] - y_min) / self.bin_height), 0, self.n_bins_y - 1)
        return (row * self.n_bins_x + column).astype(np.int64)

    def barycentric(self, triangles: IntArray, points: FloatArray) -> FloatArray:
        """Barycentric coordinates of points with respect to given triangles.

        Args:
            triangles (IntArray): Triangle indices, any shape ``S``.
            points (FloatArray): Points of shape ``S + (2,)``.

        Returns:
            FloatArray: Weights of shape ``S + (3,)``.
        """
        offset = points - self.origins[triangles]
        local = np.einsum("...ij,...j->...i", self.inverse_maps[triangles], offset)
        first = 1 - local[..., 0] - local[..., 1]
        return np.concatenate([first[..., None], local], axis=-1)

    def _bin_triangles(self, coords: FloatArray) -> IntArray:
        """List, for every bin, the triangles whose bounding box overlaps it.

        Args:
            coords (FloatArray): Triangle corner coordinates ``(M, 3, 2)``.

        Returns:
            IntArray: Padded candidate table ``(n_bins, max_count)``, ``-1`` marks padding.
        """
        x_min, _, y_min, _ = self.bounds
        slack = 1e-9 * max(self.mesh.diameter, 1.0)
        low = coords.min(axis=1) - slack
        high = coords.max(axis=1) + slack
        first_column = np.clip(np.floor((low[:, 0] - x_min) / self.bin_width), 0, self.n_bins_x - 1).astype(int)
        last_column = np.clip(np.floor((high[:, 0] - x_min) / self.bin_width), 0, self.n_bins_x - 1).astype(int)
        first_row = np.clip(np.floor((low[:, 1] - y_min) / self.bin_height), 0, self.n_bins_y - 1).astype(int)
        last_row = np.clip(np.floor((high[:, 1] - y_min) / self.bin_height), 0, self.n_bins_y - 1).astype(int)

        triangle_ids = np.arange(coords.shape[0])
        bin_parts, triangle_parts = [], []
        for column_offset in range(int((last_column - first_column).max()) + 1):
            for row_offset in range(int((last_row - first_row).max()) + 1):
                covered = (first_column + column_offset <= last_column) & (first_row + row_offset <= last_row)
                bins = (first_row + row_offset) * self.n_bins_x + first_column + column_offset
                bin_parts.append(bins[covered])
                triangle_parts.append(triangle_ids[covered])
        bins = np.concatenate(bin_parts)
        triangles = np.concatenate(triangle_parts)
        order = np.lexsort((triangles, bins))
        bins, triangles = bins[order], triangles[order]

        n_bins = self.n_bins_x * self.n_bins_y
        counts = np.bincount(bins, minlength=n_bins)
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        table = np.full((n_bins, max(int(counts.max()), 1)), -1, dtype=np.int64)
        table[bins, np.arange(bins.size) - starts[bins]] = triangles
        return table


_INDEX_CACHE: "weakref.WeakKeyDictionary[Mesh, SpatialIndex]" = weakref.WeakKeyDictionary()


def spatial_index(mesh: Mesh) -> SpatialIndex:
    """Return the spatial index of a mesh, building it on first use.

    Args:
        mesh (Mesh): The mesh.

    Returns:
        SpatialIndex: Shared read-only index.
    """
    index = _INDEX_CACHE.get(mesh)
    if index is None:
        index = SpatialIndex(mesh)
        _INDEX_CACHE[mesh] = index
    return index


class PointLocator:
    """Per-caller point locator holding the walking-search start triangle."""

    def __init__(self, mesh: Mesh) -> None:
        """Create a locator on a mesh.

        Args:
            mesh (Mesh): The mesh to search.
        """
        self.mesh = mesh
        self.index = spatial_index(mesh)
        self._last_triangle: int | None = None

    def locate(self, point: tuple[float, float], policy: LocationPolicy = LocationPolicy.CLAMP) -> PointLocation:
        """Locate a single point by walking from the cached start triangle.

        Args:
            point (tuple[float, float]): Query point.
            policy (LocationPolicy): Treatment of exterior points.

        Returns:
            PointLocation: Containing triangle and barycentric weights.
        """
        query = prepare_points(self.mesh, np.array([point], dtype=float), policy)[0]
        start = self._last_triangle
        if start is None:
            start = int(self.index.candidates[self.index.bin_of(query[None, :])[0], 0])
        found = self._walk(start, query) if start >= 0 else None
        if found is None:
            triangles, weights = locate_prepared(self.index, query[None, :])
            found = (int(triangles[0]), weights[0])
        triangle, weights = found
        self._last_triangle = triangle
        barycentric = (float(weights[0]), float(weights[1]), float(weights[2]))
        return PointLocation(triangle_index=triangle, barycentric=barycentric)

    def _walk(self, start: int, query: FloatArray) -> tuple[int, FloatArray] | None:
        """Walk across edges towards the query point.

        Args:
            start (int): Starting triangle.
            query (FloatArray): Query point ``(2,)``.

        Returns:
            tuple[int, FloatArray] | None: Triangle and weights, or None if the walk hit the boundary.
        """
        triangle = start
        for _ in range(self.mesh.n_triangles):
            weights = self.index.barycentric(np.array(triangle), query)
            worst = int(np.argmin(weights))
            if weights[worst] >= -BARYCENTRIC_TOLERANCE:
                return triangle, weights
            triangle = int(self.mesh.neighbors[triangle, worst])
            if triangle < 0:
                return None
        return None


def prepare_points(mesh: Mesh, points: FloatArray, policy: LocationPolicy) -> FloatArray:
    """Apply the exterior-point policy.

    Args:
        mesh (Mesh): The mesh.
        points (FloatArray): Query points ``(P, 2)``.
        policy (LocationPolicy): Treatment of exterior points.

    Returns:
        FloatArray: Points inside the bounding rectangle.

    Raises:
        LocationError: If ``policy`` is strict and a point lies outside.
    """
    x_min, x_max, y_min, y_max = mesh.bounds
    if policy is LocationPolicy.STRICT:
        slack = BARYCENTRIC_TOLERANCE * max(mesh.diameter, 1.0)
        outside = (
            (points[:, 0] < x_min - slack)
            | (points[:, 0] > x_max + slack)
            | (points[:, 1] < y_min - slack)
            | (points[:, 1] > y_max + slack)
        )
        if np.any(outside):
            bad = points[int(np.argmax(outside))]
            raise LocationError("point outside the domain", (float(bad[0]), float(bad[1])))
    return np.column_stack([np.clip(points[:, 0], x_min, x_max), np.clip(points[:, 1], y_min, y_max)])


def locate_prepared(index: SpatialIndex, points: FloatArray) -> tuple[IntArray, FloatArray]:
    """Locate in-domain points with the bin grid.

    Among the candidate triangles of a point's bin the one with the largest minimum barycentric
    weight is kept, the first one on ties.

    Args:
        index (SpatialIndex): Spatial index of the mesh.
        points (FloatArray): Points ``(P, 2)`` inside the bounding rectangle.

    Returns:
        tuple[IntArray, FloatArray]: Triangle indices ``(P,)`` and barycentric weights ``(P, 3)``.

    Raises:
        LocationError: If a point is not inside any triangle, e.g. in a hole of an imported mesh.
    """
    triangles = np.empty(points.shape[0], dtype=np.int64)
    weights = np.empty((points.shape[0], 3))
    for start in range(0, points.shape[0], _BATCH_SIZE):
        chunk = points[start : start + _BATCH_SIZE]
        candidates = index.candidates[index.bin_of(chunk)]
        valid = candidates >= 0
        safe = np.where(valid, candidates, 0)
        candidate_weights = index.barycentric(safe, np.broadcast_to(chunk[:, None, :], (*safe.shape, 2)))
        worst = np.where(valid, candidate_weights.min(axis=-1), -np.inf)
        best = np.argmax(worst, axis=1)
        rows = np.arange(chunk.shape[0])
        if np.any(worst[rows, best] < -_ACCEPT_TOLERANCE):
            bad = chunk[int(np.argmin(worst[rows, best]))]
            raise LocationError("point not covered by any triangle", (float(bad[0]), float(bad[1])))
        triangles[start : start + chunk.shape[0]] = safe[rows, best]
        weights[start : start + chunk.shape[0]] = candidate_weights[rows, best]
    return triangles, weights


def locate_point(
    mesh: Mesh,
    point: tuple[float, float],
    policy: LocationPolicy = LocationPolicy.CLAMP,
    locator: PointLocator | None = None,
) -> PointLocation:
    """Locate a single point.

    Args:
        mesh (Mesh): The mesh.
        point (tuple[float, float]): Query point.
        policy (LocationPolicy): Treatment of exterior points.
        locator (PointLocator | None): Caller-owned locator whose start cache is reused.

    Returns:
        PointLocation: Containing triangle and barycentric weights.
    """
    if locator is None:
        locator = PointLocator(mesh)
    return locator.locate(point, policy)


def locate_points(
    mesh: Mesh,
    points: FloatArray,
    policy: LocationPolicy = LocationPolicy.CLAMP,
) -> tuple[IntArray, FloatArray]:
    """Locate many points at once.

    Args:
        mesh (Mesh): The mesh.
        points (FloatArray): Query points ``(P, 2)``.
        policy (LocationPolicy): Treatment of exterior points.

    Returns:
        tuple[IntArray, FloatArray]: Triangle indices ``(P,)`` and barycentric weights ``(P, 3)``.
    """
    prepared = prepare_points(mesh, np.asarray(points, dtype=float).reshape(-1, 2), policy)
    return locate_prepared(spatial_index(mesh), prepared)


def interpolate(
    mesh: Mesh,
    nodal_values: FloatArray,
    point: tuple[float, float],
    policy: LocationPolicy = LocationPolicy.CLAMP,
    locator: PointLocator | None = None,
) -> float:
    """Evaluate the P1 field ``sum(F_i psi_i)`` at a point.

    Args:
        mesh (Mesh): The mesh.
        nodal_values (FloatArray): One value per node.
        point (tuple[float, float]): Evaluation point.
        policy (LocationPolicy): Treatment of exterior points.
        locator (PointLocator | None): Caller-owned locator.

    Returns:
        float: Interpolated value.
    """
    location = locate_point(mesh, point, policy, locator)
    corners = mesh.triangles[location.triangle_index]
    return float(np.dot(location.barycentric, np.asarray(nodal_values)[corners]))


def interpolate_many(
    mesh: Mesh,
    nodal_values: FloatArray,
    points: FloatArray,
    policy: LocationPolicy = LocationPolicy.CLAMP,
) -> FloatArray:
    """Evaluate a P1 field at many points.

    Args:
        mesh (Mesh): The mesh.
        nodal_values (FloatArray): One value per node.
        points (FloatArray): Evaluation points ``(P, 2)``.
        policy (LocationPolicy): Treatment of exterior points.

    Returns:
        FloatArray: Interpolated values ``(P,)``.
    """
    triangles, weights = locate_points(mesh, points, policy)
    return np.einsum("pi,pi->p", weights, np.asarray(nodal_values)[mesh.triangles[triangles]])


def interpolation_matrix(
    mesh: Mesh,
    points: FloatArray,
    policy: LocationPolicy = LocationPolicy.CLAMP,
) -> sparse.csr_matrix:
    """Build the sparse matrix mapping nodal values to values at the given points.

    Args:
        mesh (Mesh): The mesh.
        points (FloatArray): Evaluation points ``(P, 2)``.
        policy (LocationPolicy): Treatment of exterior points.

    Returns:
        sparse.csr_matrix: Matrix of shape ``(P, N)`` with barycentric weights.
    """
    triangles, weights = locate_points(mesh, points, policy)
    rows = np.repeat(np.arange(weights.shape[0]), 3)
    return sparse.csr_matrix(
        (weights.ravel(), (rows, mesh.triangles[triangles].ravel())),
        shape=(weights.shape[0], mesh.n_nodes),
    )

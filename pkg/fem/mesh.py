"""Module defines the triangular mesh of the localized pricing rectangle.

The rectangle is ``[x_min, x_max] x [0, y_max]`` in (log-price, variance) coordinates. Meshes are
immutable once built; geometric data is computed lazily and cached.
"""
import logging
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property

import numpy as np
import numpy.typing as npt

from fem.exceptions import MeshError

type FloatArray = npt.NDArray[np.float64]
type IntArray = npt.NDArray[np.int64]

AREA_TOLERANCE = 1e-14

logger = logging.getLogger(__name__)


class BoundaryTag(IntEnum):
    """Per-node boundary tag.

    Corner nodes carry the bottom or top tag so Dirichlet data is single valued.

    Attributes:
        INTERIOR (int): Node inside the domain.
        LEFT (int): Node on ``x = x_min``.
        RIGHT (int): Node on ``x = x_max``.
        BOTTOM (int): Node on ``y = 0``.
        TOP (int): Node on ``y = y_max``.
    """

    # WPS ignore, that it is a Enum. It is a valid use case
    INTERIOR = 0  # noqa: WPS115
    LEFT = 1  # noqa: WPS115
    RIGHT = 2  # noqa: WPS115
    BOTTOM = 3  # noqa: WPS115
    TOP = 4  # noqa: WPS115


@dataclass(frozen=True, eq=False)
class Mesh:
    """P1 triangulation with boundary tags.

    Attributes:
        nodes (FloatArray): Node coordinates ``(N, 2)`` as ``(x, y)``.
        triangles (IntArray): Counter-clockwise node index triples ``(M, 3)``.
        boundary_tags (IntArray): :class:`BoundaryTag` code per node ``(N,)``.
    """

    nodes: FloatArray
    triangles: IntArray
    boundary_tags: IntArray

    def __post_init__(self) -> None:
        """Freeze the arrays and check the geometric invariants.

        Raises:
            MeshError: If indices are out of range or a triangle is not positively oriented.
        """
        for array in (self.nodes, self.triangles, self.boundary_tags):
            array.setflags(write=False)
        if self.nodes.ndim != 2 or self.nodes.shape[1] != 2:
            raise MeshError(f"nodes must have shape (N, 2), got {self.nodes.shape}")
        if self.triangles.ndim != 2 or self.triangles.shape[1] != 3:
            raise MeshError(f"triangles must have shape (M, 3), got {self.triangles.shape}")
        if self.boundary_tags.shape != (self.n_nodes,):
            raise MeshError("boundary_tags must have one entry per node")
        if self.triangles.size and (self.triangles.min() < 0 or self.triangles.max() >= self.n_nodes):
            raise MeshError("triangle node index out of range")
        scale = max(self.diameter**2, 1.0)
        if np.any(self.signed_areas <= AREA_TOLERANCE * scale):
            bad = int(np.argmin(self.signed_areas))
            raise MeshError(f"triangle {bad} is degenerate or clockwise")

    @property
    def n_nodes(self) -> int:
        """Number of nodes."""
        return int(self.nodes.shape[0])

    @property
    def n_triangles(self) -> int:
        """Number of triangles."""
        return int(self.triangles.shape[0])

    @cached_property
    def bounds(self) -> tuple[float, float, float, float]:
        """Bounding rectangle ``(x_min, x_max, y_min, y_max)`` of the nodes."""
        x_min, y_min = self.nodes.min(axis=0)
        x_max, y_max = self.nodes.max(axis=0)
        return float(x_min), float(x_max), float(y_min), float(y_max)

    @cached_property
    def diameter(self) -> float:
        """Diagonal length of the bounding rectangle."""
        x_min, x_max, y_min, y_max = self.bounds
        return float(np.hypot(x_max - x_min, y_max - y_min))

    @cached_property
    def signed_areas(self) -> FloatArray:
        """Signed area of every triangle, positive for counter-clockwise ordering."""
        first, second, third = (self.nodes[self.triangles[:, corner]] for corner in range(3))
        edge_a = second - first
        edge_b = third - first
        return (edge_a[:, 0] * edge_b[:, 1] - edge_a[:, 1] * edge_b[:, 0]) / 2

    @cached_property
    def gradients(self) -> FloatArray:
        """Constant gradients of the three P1 basis functions per triangle, shape ``(M, 3, 2)``."""
        coords = self.nodes[self.triangles]
        x, y = coords[:, :, 0], coords[:, :, 1]
        twice_area = 2 * self.signed_areas
        grads = np.empty((self.n_triangles, 3, 2))
        for corner in range(3):
            following = (corner + 1) % 3
            opposite = (corner + 2) % 3
            grads[:, corner, 0] = (y[:, following] - y[:, opposite]) / twice_area
            grads[:, corner, 1] = (x[:, opposite] - x[:, following]) / twice_area
        return grads

    @cached_property
    def neighbors(self) -> IntArray:
        """Triangle across the edge opposite each corner, ``-1`` on the boundary, shape ``(M, 3)``."""
        corners = np.arange(3)
        first = self.triangles[:, (corners + 1) % 3]
        second = self.triangles[:, (corners + 2) % 3]
        low = np.minimum(first, second).ravel()
        high = np.maximum(first, second).ravel()
        keys = low * self.n_nodes + high
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        neighbors = np.full(3 * self.n_triangles, -1, dtype=np.int64)
        shared = np.flatnonzero(sorted_keys[1:] == sorted_keys[:-1])
        left, right = order[shared], order[shared + 1]
        neighbors[left] = right // 3
        neighbors[right] = left // 3
        return neighbors.reshape(self.n_triangles, 3)

    def total_area(self) -> float:
        """Return the summed triangle area.

        Returns:
            float: Area covered by the mesh.
        """
        return float(self.signed_areas.sum())


def build_rect_mesh(x_min: float, x_max: float, y_max: float, nx: int, ny: int) -> Mesh:
    """Triangulate ``[x_min, x_max] x [0, y_max]`` with a structured criss-cross pattern.

    Each cell is split along alternating diagonals, giving ``(nx+1)(ny+1)`` nodes and
    ``2 nx ny`` counter-clockwise triangles.

    Args:
        x_min (float): Left edge in log-price.
        x_max (float): Right edge in log-price.
        y_max (float): Top edge in variance.
        nx (int): Cells along x.
        ny (int): Cells along y.

    Returns:
        Mesh: The triangulation with boundary tags.

    Raises:
        MeshError: If the extents are degenerate or a resolution is below one.
    """
    if not x_min < x_max:
        raise MeshError(f"x_min must be below x_max, got [{x_min}, {x_max}]")
    if y_max <= 0:
        raise MeshError(f"y_max must be positive, got {y_max}")
    if nx < 1 or ny < 1:
        raise MeshError(f"nx and ny must be at least 1, got {nx}, {ny}")

    xs = np.linspace(x_min, x_max, nx + 1)
    ys = np.linspace(0, y_max, ny + 1)
    grid_x, grid_y = np.meshgrid(xs, ys)
    nodes = np.column_stack([grid_x.ravel(), grid_y.ravel()])

    column, row = np.meshgrid(np.arange(nx), np.arange(ny))
    column, row = column.ravel(), row.ravel()
    lower_left = row * (nx + 1) + column
    lower_right = lower_left + 1
    upper_left = lower_left + nx + 1
    upper_right = upper_left + 1
    rising = (column + row) % 2 == 0
    first = np.where(
        rising[:, None],
        np.column_stack([lower_left, lower_right, upper_right]),
        np.column_stack([lower_left, lower_right, upper_left]),
    )
    second = np.where(
        rising[:, None],
        np.column_stack([lower_left, upper_right, upper_left]),
        np.column_stack([lower_right, upper_right, upper_left]),
    )
    triangles = np.stack([first, second], axis=1).reshape(-1, 3).astype(np.int64)

    node_column = np.tile(np.arange(nx + 1), ny + 1)
    node_row = np.repeat(np.arange(ny + 1), nx + 1)
    tags = np.full(nodes.shape[0], BoundaryTag.INTERIOR, dtype=np.int64)
    tags[node_column == 0] = BoundaryTag.LEFT
    tags[node_column == nx] = BoundaryTag.RIGHT
    tags[node_row == 0] = BoundaryTag.BOTTOM
    tags[node_row == ny] = BoundaryTag.TOP

    mesh = Mesh(nodes=nodes, triangles=triangles, boundary_tags=tags)
    logger.info("Built %d x %d mesh: %d nodes, %d triangles", nx, ny, mesh.n_nodes, mesh.n_triangles)
    return mesh

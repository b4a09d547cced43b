"""Module reads and writes meshes and sparse matrices in plain text.

Mesh format: a header line ``nodes N triangles M``, then ``N`` lines ``x y tag``, then ``M`` lines
``i j k`` with 0-based node indices. Floats are written with ``repr`` so a round trip is bit exact.
"""
import logging
from pathlib import Path

import numpy as np
from scipy import sparse

from fem.exceptions import MeshError, MeshFormatError
from fem.mesh import BoundaryTag, Mesh

logger = logging.getLogger(__name__)

_HEADER_FIELDS = 4
_VALID_TAGS = frozenset(int(tag) for tag in BoundaryTag)


def format_mesh(mesh: Mesh) -> str:
    """Serialize a mesh.

    Args:
        mesh (Mesh): Mesh to serialize.

    Returns:
        str: Text in the mesh format, ending with a newline.
    """
    lines = [f"nodes {mesh.n_nodes} triangles {mesh.n_triangles}"]
    lines.extend(
        f"{float(x)!r} {float(y)!r} {int(tag)}"
        for (x, y), tag in zip(mesh.nodes, mesh.boundary_tags, strict=True)
    )
    lines.extend(" ".join(str(int(index)) for index in triangle) for triangle in mesh.triangles)
    return "\n".join(lines) + "\n"


def parse_mesh(text: str) -> Mesh:
    """Parse a mesh from text.

    Args:
        text (str): Text in the mesh format.

    Returns:
        Mesh: The parsed mesh.

    Raises:
        MeshFormatError: If the text is malformed or describes an invalid mesh.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MeshFormatError("empty mesh file")
    header = lines[0].split()
    if len(header) != _HEADER_FIELDS or header[0] != "nodes" or header[2] != "triangles":
        raise MeshFormatError(f"bad header line: {lines[0]!r}")
    try:
        n_nodes, n_triangles = int(header[1]), int(header[3])
    except ValueError as exc:
        raise MeshFormatError(f"bad header counts: {lines[0]!r}") from exc
    if len(lines) != 1 + n_nodes + n_triangles:
        raise MeshFormatError(f"expected {n_nodes + n_triangles} body lines, found {len(lines) - 1}")

    nodes = np.empty((n_nodes, 2))
    tags = np.empty(n_nodes, dtype=np.int64)
    for row, line in enumerate(lines[1 : 1 + n_nodes]):
        fields = line.split()
        try:
            nodes[row] = float(fields[0]), float(fields[1])
            tags[row] = int(fields[2])
        except (ValueError, IndexError) as exc:
            raise MeshFormatError(f"bad node line {row + 2}: {line!r}") from exc
        if len(fields) != 3 or tags[row] not in _VALID_TAGS:
            raise MeshFormatError(f"bad node line {row + 2}: {line!r}")

    triangles = np.empty((n_triangles, 3), dtype=np.int64)
    for row, line in enumerate(lines[1 + n_nodes :]):
        fields = line.split()
        if len(fields) != 3:
            raise MeshFormatError(f"bad triangle line {row + n_nodes + 2}: {line!r}")
        try:
            triangles[row] = [int(field) for field in fields]
        except ValueError as exc:
            raise MeshFormatError(f"bad triangle line {row + n_nodes + 2}: {line!r}") from exc

    try:
        return Mesh(nodes=nodes, triangles=triangles, boundary_tags=tags)
    except MeshError as exc:
        raise MeshFormatError(f"invalid mesh: {exc}") from exc


def write_mesh(mesh: Mesh, path: Path) -> None:
    """Write a mesh file.

    Args:
        mesh (Mesh): Mesh to write.
        path (Path): Destination.
    """
    path.write_text(format_mesh(mesh), encoding="utf-8", newline="\n")
    logger.info("Wrote mesh with %d nodes to %s", mesh.n_nodes, path)


def read_mesh(path: Path) -> Mesh:
    """Read a mesh file.

    Args:
        path (Path): Source.

    Returns:
        Mesh: The parsed mesh.
    """
    mesh = parse_mesh(path.read_text(encoding="utf-8"))
    logger.info("Read mesh with %d nodes, %d triangles from %s", mesh.n_nodes, mesh.n_triangles, path)
    return mesh


def format_matrix(matrix: sparse.spmatrix | sparse.sparray) -> str:
    """Serialize a sparse matrix as ``row col value`` lines in row-major order.

    Args:
        matrix (sparse.spmatrix | sparse.sparray): Matrix to export.

    Returns:
        str: One line per stored entry.
    """
    coo = sparse.coo_matrix(matrix)
    order = np.lexsort((coo.col, coo.row))
    return "".join(
        f"{int(row)} {int(col)} {float(value)!r}\n"
        for row, col, value in zip(coo.row[order], coo.col[order], coo.data[order], strict=True)
    )


def write_matrix(matrix: sparse.spmatrix | sparse.sparray, path: Path) -> None:
    """Write a sparse matrix in coordinate text format.

    Args:
        matrix (sparse.spmatrix | sparse.sparray): Matrix to export.
        path (Path): Destination.
    """
    path.write_text(format_matrix(matrix), encoding="utf-8", newline="\n")

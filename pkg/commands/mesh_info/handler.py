"""Handler for the ``mesh-info`` command: mesh statistics and optional mesh export."""
import argparse
import sys
from collections import Counter
from pathlib import Path

from commands.config_parser import parse_grid_config
from commands.error_utils import EXIT_OK
from commands.router import Router
from fem.mesh import BoundaryTag, build_rect_mesh
from fem.mesh_io import read_mesh, write_mesh

mesh_info_router = Router()


def configure_mesh_info(parser: argparse.ArgumentParser) -> None:
    """Add the ``mesh-info`` arguments.

    Args:
        parser (argparse.ArgumentParser): Sub-command parser.
    """
    parser.add_argument("--config", type=Path, help="Sectioned key=value config file.")
    parser.add_argument("--nx", help="Mesh cells along log-price.")
    parser.add_argument("--ny", help="Mesh cells along variance.")
    parser.add_argument("--input-mesh", dest="input_mesh", type=Path, help="Mesh file to describe instead.")
    parser.add_argument("--write-mesh", dest="write_mesh", type=Path, help="Write the mesh to this file.")
    parser.add_argument("--set", dest="overrides", action="append", default=[], metavar="SECTION.KEY=VALUE")


@mesh_info_router.command("mesh-info", "Describe the finite element mesh.", configure_mesh_info)
def mesh_info_handler(args: argparse.Namespace) -> int:
    """Print node and triangle counts, the boundary tag histogram and the total area.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: Exit code.
    """
    flags = {f"grid.{name}": str(getattr(args, name)) for name in ("nx", "ny") if getattr(args, name) is not None}
    for override in args.overrides:
        key, _, raw = override.partition("=")
        flags[key.strip()] = raw.strip()
    grid, outputs = parse_grid_config(args.config, flags)

    if args.input_mesh is not None:
        mesh = read_mesh(args.input_mesh)
    else:
        mesh = build_rect_mesh(grid.x_min, grid.x_max, grid.y_max, grid.nx, grid.ny)
    histogram = Counter(BoundaryTag(int(tag)).name.lower() for tag in mesh.boundary_tags)

    sys.stdout.write(f"nodes {mesh.n_nodes}\n")
    sys.stdout.write(f"triangles {mesh.n_triangles}\n")
    for tag in BoundaryTag:
        sys.stdout.write(f"{tag.name.lower()} {histogram.get(tag.name.lower(), 0)}\n")
    sys.stdout.write(f"area {mesh.total_area()!r}\n")

    destination = args.write_mesh or outputs.mesh
    if destination is not None and destination != args.input_mesh:
        write_mesh(mesh, destination)
    return EXIT_OK

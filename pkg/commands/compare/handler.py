"""Handler for the ``compare`` command: finite element prices against the FFT reference."""
import argparse

from commands.csv_utils import COMPARE_HEADER, emit, format_rows
from commands.error_utils import EXIT_OK
from commands.handlers_utils import add_common_arguments, engine_settings, float_list, load_run_config
from commands.router import Router
from services.pricing_service import compare_rows

DEFAULT_SPOTS = "80,85,90,95,100,105,110,115,120"

compare_router = Router()


def configure_compare(parser: argparse.ArgumentParser) -> None:
    """Add the ``compare`` arguments.

    Args:
        parser (argparse.ArgumentParser): Sub-command parser.
    """
    add_common_arguments(parser)
    parser.add_argument(
        "--s-values",
        dest="s_values",
        type=float_list,
        default=float_list(DEFAULT_SPOTS),
        help="Comma list of spots.",
    )


@compare_router.command("compare", "Compare FEM and FFT prices over spots.", configure_compare)
def compare_handler(args: argparse.Namespace) -> int:
    """Run one finite element solve and emit ``S,price_fem,price_fft,rel_diff`` rows.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: Exit code.
    """
    config = load_run_config(args)
    rows = compare_rows(config.params, config.market, list(args.s_values), engine_settings(config))
    emit(
        format_rows(COMPARE_HEADER, [(row.spot, row.price_fem, row.price_fft, row.rel_diff) for row in rows]),
        config.outputs.output,
    )
    return EXIT_OK

"""Handler for the ``surface`` command: implied-volatility surface over strikes and maturities."""
import argparse

from commands.csv_utils import SURFACE_HEADER, emit, format_rows
from commands.error_utils import EXIT_OK
from commands.handlers_utils import add_common_arguments, engine_settings, float_list, load_run_config
from commands.router import Router
from services.pricing_service import PricingMethod, surface_rows

DEFAULT_STRIKES = "80,85,90,95,100,105,110,115,120"
DEFAULT_MATURITIES = "0.25,0.5,1,2,3"

surface_router = Router()


def configure_surface(parser: argparse.ArgumentParser) -> None:
    """Add the ``surface`` arguments.

    Args:
        parser (argparse.ArgumentParser): Sub-command parser.
    """
    add_common_arguments(parser)
    parser.add_argument("--strikes", type=float_list, default=float_list(DEFAULT_STRIKES), help="Comma list.")
    parser.add_argument(
        "--maturities",
        type=float_list,
        default=float_list(DEFAULT_MATURITIES),
        help="Comma list of maturities in years.",
    )
    parser.add_argument(
        "--engine",
        type=PricingMethod,
        choices=[PricingMethod.FFT, PricingMethod.FEM],
        default=PricingMethod.FFT,
        help="Engine pricing the surface.",
    )


@surface_router.command("surface", "Price an implied-volatility surface.", configure_surface)
def surface_handler(args: argparse.Namespace) -> int:
    """Price the surface and emit ``K,T,price,implied_vol`` rows.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: Exit code.
    """
    config = load_run_config(args)
    rows = surface_rows(
        config.params,
        config.market,
        list(args.strikes),
        list(args.maturities),
        args.engine,
        engine_settings(config),
    )
    emit(
        format_rows(SURFACE_HEADER, [(row.strike, row.maturity, row.price, row.implied_vol) for row in rows]),
        config.outputs.output,
    )
    return EXIT_OK

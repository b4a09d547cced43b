"""Handler for the ``price`` command: one call price by a chosen engine."""
import argparse
import sys

from commands.csv_utils import PRICE_HEADER, emit, format_rows
from commands.error_utils import EXIT_OK
from commands.handlers_utils import add_common_arguments, engine_settings, load_run_config
from commands.router import Router
from services.pricing_service import PricingMethod, price_with_method

price_router = Router()


def configure_price(parser: argparse.ArgumentParser) -> None:
    """Add the ``price`` arguments.

    Args:
        parser (argparse.ArgumentParser): Sub-command parser.
    """
    add_common_arguments(parser)
    parser.add_argument(
        "--method",
        type=PricingMethod,
        choices=list(PricingMethod),
        default=PricingMethod.FFT,
        help="Pricing engine.",
    )


@price_router.command("price", "Price one European call.", configure_price)
def price_handler(args: argparse.Namespace) -> int:
    """Price the configured call and emit one CSV row.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: Exit code.
    """
    config = load_run_config(args)
    quote = price_with_method(args.method, config.params, config.market, engine_settings(config))
    market = config.market
    row = (
        quote.method.value,
        market.s0,
        market.strike,
        market.maturity,
        market.rate,
        market.y0,
        quote.price,
        quote.std_error,
    )
    emit(format_rows(PRICE_HEADER, [row]), config.outputs.output)
    if config.outputs.output is not None:
        sys.stdout.write(f"{quote.method.value} price: {quote.price!r}\n")
    return EXIT_OK

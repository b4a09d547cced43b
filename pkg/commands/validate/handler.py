"""Handler for the ``validate`` command: reports hard errors and warnings of a configuration."""
import argparse
import sys

from commands.error_utils import EXIT_CONFIGURATION, EXIT_OK
from commands.handlers_utils import add_common_arguments, load_run_config
from commands.router import Router
from model.validation import validate

validate_router = Router()


@validate_router.command("validate", "Check model and market inputs.", add_common_arguments)
def validate_handler(args: argparse.Namespace) -> int:
    """Print every finding of the parameter validation.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: 0 when admissible, 2 otherwise.
    """
    config = load_run_config(args)
    report = validate(config.params, config.market)
    for finding in report.hard_errors:
        sys.stdout.write(f"error: {finding}\n")
    for warning in report.warnings:
        sys.stdout.write(f"warning: {warning}\n")
    if not report.is_admissible:
        return EXIT_CONFIGURATION
    sys.stdout.write("admissible\n")
    return EXIT_OK

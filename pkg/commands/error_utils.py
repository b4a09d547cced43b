"""Module maps engine failures onto process exit codes.

Configuration errors exit with 2, numerical errors with 3 and I/O errors with 4. The error is logged
and a one-line message goes to stderr.
"""
import argparse
import logging
import sys

from commands.router import Handler
from exceptions import ConfigurationError, NumericalError, PricingError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIGURATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

logger = logging.getLogger(__name__)


def exit_code_for(error: Exception) -> int:
    """Return the exit code of an error class.

    Args:
        error (Exception): Raised error.

    Returns:
        int: Exit code.
    """
    if isinstance(error, ConfigurationError):
        return EXIT_CONFIGURATION
    if isinstance(error, NumericalError):
        return EXIT_NUMERICAL
    if isinstance(error, OSError):
        return EXIT_IO
    return EXIT_FAILURE


def run_safely(handler: Handler, args: argparse.Namespace) -> int:
    """Run a command handler and turn pricing and I/O errors into exit codes.

    Args:
        handler (Handler): Command handler.
        args (argparse.Namespace): Parsed arguments.

    Returns:
        int: The handler's exit code, or the code of the error it raised.
    """
    try:
        return handler(args)
    except (PricingError, OSError) as error:
        logger.debug("Command failed", exc_info=error)
        sys.stderr.write(f"error: {error}\n")
        return exit_code_for(error)

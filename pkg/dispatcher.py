"""Module builds the command-line dispatcher of the Bates pricing engine.

It includes the routers of every command into one argparse tree and runs the selected handler,
turning engine failures into exit codes.

Usage:
    This module is imported by ``run_pricer.py``; ``dp.dispatch(argv)`` returns the exit code.
"""
import argparse
from collections.abc import Sequence
from dataclasses import dataclass, field

from commands.compare.handler import compare_router
from commands.error_utils import run_safely
from commands.mesh_info.handler import mesh_info_router
from commands.price.handler import price_router
from commands.router import Command, Router
from commands.surface.handler import surface_router
from commands.validate.handler import validate_router


@dataclass
class Dispatcher:
    """Collects routers and dispatches command lines to their handlers.

    Attributes:
        commands (dict[str, Command]): Registered commands by name.
    """

    commands: dict[str, Command] = field(default_factory=dict)

    def include_router(self, router: Router) -> None:
        """Register every command of a router.

        Args:
            router (Router): Router to include.
        """
        for command in router.commands:
            self.commands[command.name] = command

    def build_parser(self) -> argparse.ArgumentParser:
        """Build the argparse tree of the registered commands.

        Returns:
            argparse.ArgumentParser: Top-level parser.
        """
        parser = argparse.ArgumentParser(prog="bates-pricer", description="Price European calls in the Bates model.")
        subparsers = parser.add_subparsers(dest="command", required=True)
        for command in self.commands.values():
            command.configure(subparsers.add_parser(command.name, help=command.help))
        return parser

    def dispatch(self, argv: Sequence[str] | None = None) -> int:
        """Parse a command line and run its handler.

        Args:
            argv (Sequence[str] | None): Arguments without the program name; ``sys.argv`` when omitted.

        Returns:
            int: Exit code.
        """
        args = self.build_parser().parse_args(argv)
        return run_safely(self.commands[args.command].handler, args)


dp = Dispatcher()

# inspection commands
dp.include_router(validate_router)
dp.include_router(mesh_info_router)

# pricing commands
dp.include_router(price_router)
dp.include_router(surface_router)
dp.include_router(compare_router)

"""Module defines the router that collects command handlers for the dispatcher."""
import argparse
from collections.abc import Callable
from dataclasses import dataclass, field

type Handler = Callable[[argparse.Namespace], int]
type Configure = Callable[[argparse.ArgumentParser], None]


@dataclass(frozen=True)
class Command:
    """A sub-command of the command line.

    Attributes:
        name (str): Sub-command name.
        help (str): One-line description.
        configure (Configure): Adds the command's arguments to its parser.
        handler (Handler): Runs the command and returns the exit code.
    """

    name: str
    help: str
    configure: Configure
    handler: Handler


@dataclass
class Router:
    """Group of commands registered with the :meth:`command` decorator.

    Attributes:
        commands (list[Command]): Registered commands in registration order.
    """

    commands: list[Command] = field(default_factory=list)

    def command(self, name: str, help_text: str, configure: Configure) -> Callable[[Handler], Handler]:
        """Register the decorated function as the handler of a sub-command.

        Args:
            name (str): Sub-command name.
            help_text (str): One-line description.
            configure (Configure): Adds the command's arguments to its parser.

        Returns:
            Callable[[Handler], Handler]: Decorator returning the handler unchanged.
        """

        def register(handler: Handler) -> Handler:
            self.commands.append(Command(name=name, help=help_text, configure=configure, handler=handler))
            return handler

        return register

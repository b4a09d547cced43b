"""Utility functions shared by the command handlers: common flags and run-config loading."""
import argparse
from pathlib import Path

from decouple import Csv

from commands.config_parser import RunConfig, parse_config
from services.pricing_service import EngineSettings

_DIRECT_FLAGS = {  # noqa: WPS407
    "preset": "model.preset",
    "s0": "market.s0",
    "strike": "market.strike",
    "maturity": "market.maturity",
    "rate": "market.rate",
    "y0": "market.y0",
    "nx": "grid.nx",
    "ny": "grid.ny",
    "n_steps": "grid.n_steps",
    "right_bc": "grid.right_bc",
    "paths": "mc.n_paths",
    "seed": "mc.seed",
    "output": "outputs.output",
}

float_list = Csv(cast=float)


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the configuration flags every pricing command accepts.

    Args:
        parser (argparse.ArgumentParser): Sub-command parser.
    """
    parser.add_argument("--config", type=Path, help="Sectioned key=value config file.")
    parser.add_argument("--preset", help="Parameter set S1, S2, S3 or S4.")
    parser.add_argument("--s0", help="Spot price.")
    parser.add_argument("--strike", help="Strike price.")
    parser.add_argument("--maturity", help="Maturity in years.")
    parser.add_argument("--rate", help="Risk-free rate.")
    parser.add_argument("--y0", help="Initial variance, or 'eta'.")
    parser.add_argument("--nx", help="Mesh cells along log-price.")
    parser.add_argument("--ny", help="Mesh cells along variance.")
    parser.add_argument("--n-steps", dest="n_steps", help="Finite element time steps.")
    parser.add_argument(
        "--right-bc",
        dest="right_bc",
        choices=["exponential", "paper", "payoff"],
        help="Dirichlet value on the right edge; paper is another name of exponential.",
    )
    parser.add_argument("--paths", help="Monte Carlo paths.")
    parser.add_argument("--seed", help="Monte Carlo seed.")
    parser.add_argument("--output", help="CSV destination, stdout when omitted.")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="Override any config key; may be repeated.",
    )


def collect_flags(args: argparse.Namespace) -> dict[str, str]:
    """Gather the ``section.key`` overrides given on the command line.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        dict[str, str]: Overrides, ``--set`` entries last.
    """
    flags = {
        key: str(getattr(args, name))
        for name, key in _DIRECT_FLAGS.items()
        if getattr(args, name, None) is not None
    }
    for override in args.overrides:
        key, _, raw = override.partition("=")
        flags[key.strip()] = raw.strip()
    return flags


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """Resolve the run configuration of a command invocation.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        RunConfig: Resolved configuration.
    """
    return parse_config(args.config, collect_flags(args))


def engine_settings(config: RunConfig) -> EngineSettings:
    """Extract the engine settings of a run configuration.

    Args:
        config (RunConfig): Resolved configuration.

    Returns:
        EngineSettings: Settings of every engine.
    """
    return EngineSettings(grid=config.grid, solver=config.solver, mc=config.mc, fft=config.fft)

"""Module resolves run configurations from defaults, a config file and command-line flags.

The config file is sectioned ``key = value`` text with the sections ``[model]``, ``[market]``,
``[grid]``, ``[solver]``, ``[mc]``, ``[fft]`` and ``[outputs]``. Flags are passed as
``section.key`` overrides and win over the file, which wins over the built-in defaults.
"""
import configparser
import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass, fields
from enum import Enum
from pathlib import Path
from typing import Any, Final

from decouple import strtobool

from commands.exceptions import ConfigKeyError
from fem.characteristics import FootMethod
from fem.grid import GridConfig, JumpExtension, RightBoundary
from fem.stepper import SolverConfig
from model.params import BatesParams, MarketSpec
from model.presets import get_preset
from monte_carlo.simulation import McConfig
from reference.fft import FftGrid

logger = logging.getLogger(__name__)

type RawConfig = dict[str, dict[str, str]]
type Cast = Callable[[str], Any]


def _to_bool(raw: str) -> bool:
    return bool(strtobool(raw))


def _to_optional_float(raw: str) -> float | None:
    return None if raw.strip().lower() in {"", "none"} else float(raw)


def _to_optional_path(raw: str) -> Path | None:
    return Path(raw) if raw.strip() else None


def _enum_cast(enum_type: type[Enum]) -> Cast:
    def cast(raw: str) -> Enum:
        return enum_type(raw.strip().lower())

    return cast


_MODEL_FIELDS: Final = {  # noqa: WPS407
    "xi": "xi",
    "eta": "eta",
    "theta": "theta",
    "rho": "rho",
    "lambda": "lambda_",
    "kbar": "kbar",
    "delta": "delta",
}

SCHEMA: Final[dict[str, dict[str, Cast]]] = {  # noqa: WPS407
    "model": {"preset": str, **dict.fromkeys(_MODEL_FIELDS, float)},
    "market": {"s0": float, "strike": float, "maturity": float, "rate": float, "y0": str},
    "grid": {
        "x_min": float,
        "x_max": float,
        "y_max": float,
        "nx": int,
        "ny": int,
        "n_steps": int,
        "jump_eps": float,
        "jump_quad_points": int,
        "tri_quad_order": int,
        "right_bc": _enum_cast(RightBoundary),
        "extension": _enum_cast(JumpExtension),
        "impose_bottom_bc": _to_bool,
    },
    "solver": {
        "method": _enum_cast(FootMethod),
        "linear_tol": float,
        "linear_maxit": int,
        "restart": int,
        "explicit_jump": _to_bool,
        "dt": _to_optional_float,
    },
    "mc": {"n_paths": int, "n_steps": int, "seed": int, "antithetic": _to_bool},
    "fft": {"n_points": int, "damping": float, "u_spacing": float},
    "outputs": {"output": _to_optional_path, "mesh": _to_optional_path},
}

DEFAULTS: Final[RawConfig] = {  # noqa: WPS407
    "market": {"s0": "100", "strike": "100", "maturity": "1"},
}

REQUIRED: Final = (("market", "rate"), ("market", "y0"))


@dataclass(frozen=True)
class OutputPaths:
    """Files written by the commands; stdout is used where a path is missing.

    Attributes:
        output (Path | None): CSV destination.
        mesh (Path | None): Mesh file to read or write.
    """

    output: Path | None = None
    mesh: Path | None = None


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings of one command invocation.

    Attributes:
        params (BatesParams): Model parameters.
        market (MarketSpec): Contract and market state.
        grid (GridConfig): Finite element resolution.
        solver (SolverConfig): Time stepping and linear solver.
        mc (McConfig): Monte Carlo settings.
        fft (FftGrid): Carr-Madan grid.
        outputs (OutputPaths): Output files.
        preset (str | None): Name of the preset the model started from.
    """

    params: BatesParams
    market: MarketSpec
    grid: GridConfig
    solver: SolverConfig
    mc: McConfig
    fft: FftGrid
    outputs: OutputPaths
    preset: str | None = None


def read_config_file(path: Path) -> RawConfig:
    """Read a sectioned config file into raw strings.

    Args:
        path (Path): Config file.

    Returns:
        RawConfig: Section to key to raw value.

    Raises:
        ConfigKeyError: If the file is not sectioned ``key = value`` text.
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    try:
        parser.read_string(path.read_text(encoding="utf-8"), source=str(path))
    except configparser.Error as exc:
        raise ConfigKeyError(f"malformed config file {path}: {exc}") from exc
    return {section: dict(parser.items(section)) for section in parser.sections()}


def _merge(*layers: Mapping[str, Mapping[str, str]]) -> RawConfig:
    merged: RawConfig = {}
    for layer in layers:
        for section, entries in layer.items():
            merged.setdefault(section, {}).update(entries)
    return merged


def _split_flags(flags: Mapping[str, str]) -> RawConfig:
    """Turn ``section.key`` flag overrides into a raw layer.

    Args:
        flags (Mapping[str, str]): Overrides.

    Returns:
        RawConfig: The overrides by section.

    Raises:
        ConfigKeyError: If a flag name has no section.
    """
    layer: RawConfig = {}
    for name, raw in flags.items():
        section, dot, key = name.partition(".")
        if not dot:
            raise ConfigKeyError(f"override {name!r} must look like section.key")
        layer.setdefault(section, {})[key] = raw
    return layer


def _typed(raw: RawConfig) -> dict[str, dict[str, Any]]:
    """Check every key against the schema and cast it.

    Args:
        raw (RawConfig): Merged raw configuration.

    Returns:
        dict[str, dict[str, Any]]: Typed values.

    Raises:
        ConfigKeyError: If a section or key is unknown or a value does not cast.
    """
    typed: dict[str, dict[str, Any]] = {section: {} for section in SCHEMA}
    for section, entries in raw.items():
        if section not in SCHEMA:
            raise ConfigKeyError(f"unknown section [{section}], expected one of {sorted(SCHEMA)}")
        for key, value in entries.items():
            cast = SCHEMA[section].get(key)
            if cast is None:
                raise ConfigKeyError(f"unknown key {section}.{key}")
            try:
                typed[section][key] = cast(value)
            except ValueError as exc:
                raise ConfigKeyError(f"bad value for {section}.{key}: {value!r}") from exc
    return typed


def _check_required(typed: dict[str, dict[str, Any]]) -> None:
    for section, key in REQUIRED:
        if key not in typed[section]:
            raise ConfigKeyError(f"missing required key {section}.{key}")


def _resolve_params(model: dict[str, Any]) -> BatesParams:
    """Start from the preset, if any, and apply the explicit model fields.

    Args:
        model (dict[str, Any]): Typed ``[model]`` section.

    Returns:
        BatesParams: Model parameters.

    Raises:
        ConfigKeyError: If no preset is given and a field is missing.
    """
    explicit = {_MODEL_FIELDS[key]: value for key, value in model.items() if key != "preset"}
    if "preset" in model:
        base = vars(get_preset(model["preset"]))
    else:
        missing = [key for key, name in _MODEL_FIELDS.items() if name not in explicit]
        if missing:
            raise ConfigKeyError(f"missing required key model.{missing[0]} (or give model.preset)")
        base = {}
    return BatesParams(**{**base, **explicit})


def _resolve_market(market: dict[str, Any], params: BatesParams) -> MarketSpec:
    y0_raw = str(market["y0"]).strip().lower()
    try:
        y0 = params.eta if y0_raw == "eta" else float(y0_raw)
    except ValueError as exc:
        raise ConfigKeyError(f"bad value for market.y0: {market['y0']!r}") from exc
    return MarketSpec(
        s0=market["s0"],
        strike=market["strike"],
        maturity=market["maturity"],
        rate=market["rate"],
        y0=y0,
    )


def parse_config(path: Path | None = None, flags: Mapping[str, str] | None = None) -> RunConfig:
    """Resolve a run configuration: defaults, then the file, then the flags.

    Args:
        path (Path | None): Optional config file.
        flags (Mapping[str, str] | None): ``section.key`` overrides from the command line.

    Returns:
        RunConfig: Resolved configuration.
    """
    file_layer = read_config_file(path) if path is not None else {}
    typed = _typed(_merge(DEFAULTS, file_layer, _split_flags(flags or {})))
    _check_required(typed)
    params = _resolve_params(typed["model"])
    config = RunConfig(
        params=params,
        market=_resolve_market(typed["market"], params),
        grid=GridConfig(**typed["grid"]),
        solver=SolverConfig(**typed["solver"]),
        mc=McConfig(**typed["mc"]),
        fft=FftGrid(**typed["fft"]),
        outputs=OutputPaths(**typed["outputs"]),
        preset=typed["model"].get("preset"),
    )
    logger.debug("Resolved run configuration: %s", config)
    return config


def parse_grid_config(
    path: Path | None = None,
    flags: Mapping[str, str] | None = None,
) -> tuple[GridConfig, OutputPaths]:
    """Resolve only the mesh-related sections; market keys are not required.

    Args:
        path (Path | None): Optional config file.
        flags (Mapping[str, str] | None): ``section.key`` overrides from the command line.

    Returns:
        tuple[GridConfig, OutputPaths]: Grid settings and output files.
    """
    file_layer = read_config_file(path) if path is not None else {}
    typed = _typed(_merge(file_layer, _split_flags(flags or {})))
    return GridConfig(**typed["grid"]), OutputPaths(**typed["outputs"])


def _format_value(value: Any) -> str:  # noqa: ANN401
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def format_config(config: RunConfig) -> str:
    """Serialize a configuration so that :func:`parse_config` reads it back unchanged.

    The model is written field by field, so preset values round-trip bit exactly.

    Args:
        config (RunConfig): Configuration to write.

    Returns:
        str: Sectioned config text.
    """
    sections: dict[str, dict[str, Any]] = {
        "model": {key: getattr(config.params, name) for key, name in _MODEL_FIELDS.items()},
        "market": vars(config.market),
        "grid": {item.name: getattr(config.grid, item.name) for item in fields(config.grid)},
        "solver": {item.name: getattr(config.solver, item.name) for item in fields(config.solver)},
        "mc": {key: getattr(config.mc, key) for key in SCHEMA["mc"]},
        "fft": {item.name: getattr(config.fft, item.name) for item in fields(config.fft)},
        "outputs": {item.name: getattr(config.outputs, item.name) for item in fields(config.outputs)},
    }
    lines: list[str] = []
    for section, entries in sections.items():
        lines.append(f"[{section}]")
        lines.extend(f"{key} = {_format_value(value)}" for key, value in entries.items())
        lines.append("")
    return "\n".join(lines)

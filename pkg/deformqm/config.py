"""Configuration schemas and run records for the deformqm command line."""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import asdict, dataclass, field
import json
import logging
import math
from pathlib import Path
from typing import Any

import voluptuous as vol

from .const import (
    DEFAULT_QFOCK_DIM,
    ENV_THREADS,
    FAMILY_NAMES,
    FORMAT_CSV,
    FORMAT_JSON,
    MIN_GRID_POINTS,
    SPECTRUM_SYSTEMS,
    SYSTEM_GENERIC,
    SYSTEM_MORSE,
    SYSTEM_MORSE_FIRST_ORDER,
    SYSTEM_OSC_FIELD,
    SYSTEM_PT_HYP,
    SYSTEM_PT_TRIG,
    VERIFY_SYSTEMS,
    WAVEFUNCTION_SYSTEMS,
)
from .exceptions import InvalidParameters

_LOGGER = logging.getLogger(__name__)

CMD_CANONICALIZE = "canonicalize"
CMD_SPECTRUM = "spectrum"
CMD_VERIFY = "verify"
CMD_WAVEFUNCTION = "wavefunction"
COMMANDS = (CMD_CANONICALIZE, CMD_SPECTRUM, CMD_VERIFY, CMD_WAVEFUNCTION)

CONF_ALPHA = "alpha"
CONF_BETA = "beta"
CONF_KAPPA = "kappa"
CONF_KAPPA_RE = "kappa_re"
CONF_KAPPA_IM = "kappa_im"
CONF_MEAN_X = "mean_x"
CONF_MEAN_P = "mean_p"
CONF_FIELD = "field"
CONF_A = "A"
CONF_B = "B"
CONF_SYSTEM = "system"
CONF_LEVELS = "levels"
CONF_GRID_POINTS = "grid_points"
CONF_DOMAIN = "domain"
CONF_DIM = "dim"
CONF_N = "n"
CONF_SAMPLES = "samples"
CONF_FAMILY = "family"
CONF_RICCATI = "riccati"
CONF_G = "g"
CONF_S = "s"
CONF_R = "r"
CONF_EPS0 = "eps0"

DEFAULT_LEVELS = 5
DEFAULT_VERIFY_LEVELS = 1
DEFAULT_SAMPLES = 401

# Parameters each system needs beyond its schema defaults
SYSTEM_PARAMS: dict[str, tuple[str, ...]] = {
    SYSTEM_OSC_FIELD: (CONF_ALPHA, CONF_BETA),
    SYSTEM_PT_HYP: (CONF_A, CONF_BETA),
    SYSTEM_PT_TRIG: (CONF_A, CONF_BETA),
    SYSTEM_MORSE: (CONF_A, CONF_B, CONF_BETA),
    SYSTEM_MORSE_FIRST_ORDER: (CONF_A, CONF_B, CONF_BETA),
    SYSTEM_GENERIC: (CONF_FAMILY, CONF_BETA, CONF_G, CONF_S, CONF_EPS0),
}


def finite_float(value: Any) -> float:
    """Coerce to a finite float."""
    number = vol.Coerce(float)(value)
    if not math.isfinite(number):
        raise vol.Invalid(f"{value!r} is not finite")
    return number


def domain(value: Any) -> tuple[float, float]:
    """Parse a domain given as 'lo:hi' or a two-element list."""
    if isinstance(value, str):
        parts = value.split(":")
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise vol.Invalid(f"domain {value!r} must be 'lo:hi'")
    if len(parts) != 2:
        raise vol.Invalid(f"domain {value!r} must have two ends")
    lo, hi = (finite_float(p) for p in parts)
    if not hi > lo:
        raise vol.Invalid(f"domain {value!r} is empty")
    return lo, hi


def riccati(value: Any) -> tuple[float, float, float]:
    """Parse Riccati coefficients given as 'a:b:c' or a three-element list."""
    if isinstance(value, str):
        parts = value.split(":")
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise vol.Invalid(f"riccati {value!r} must be 'a:b:c'")
    if len(parts) != 3:
        raise vol.Invalid(f"riccati {value!r} needs three coefficients")
    a, b, c = (finite_float(p) for p in parts)
    return a, b, c


_POS_INT = vol.All(vol.Coerce(int), vol.Range(min=1))
_NONNEG_INT = vol.All(vol.Coerce(int), vol.Range(min=0))

CANONICALIZE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_ALPHA): finite_float,
        vol.Required(CONF_BETA): finite_float,
        vol.Optional(CONF_KAPPA_RE, default=0.0): finite_float,
        vol.Optional(CONF_KAPPA_IM, default=0.0): finite_float,
        vol.Optional(CONF_MEAN_X, default=0.0): finite_float,
        vol.Optional(CONF_MEAN_P, default=0.0): finite_float,
    }
)

_SYSTEM_PARAM_SCHEMA = {
    vol.Optional(CONF_ALPHA): finite_float,
    vol.Optional(CONF_BETA): finite_float,
    vol.Optional(CONF_KAPPA, default=0.0): finite_float,
    vol.Optional(CONF_FIELD, default=0.0): finite_float,
    vol.Optional(CONF_A): finite_float,
    vol.Optional(CONF_B): finite_float,
}

SPECTRUM_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_SYSTEM): vol.In(SPECTRUM_SYSTEMS),
        vol.Optional(CONF_LEVELS, default=DEFAULT_LEVELS): _POS_INT,
        **_SYSTEM_PARAM_SCHEMA,
    }
)

VERIFY_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_SYSTEM): vol.In(VERIFY_SYSTEMS),
        vol.Optional(CONF_LEVELS, default=DEFAULT_VERIFY_LEVELS): _POS_INT,
        vol.Optional(CONF_GRID_POINTS): vol.All(
            vol.Coerce(int), vol.Range(min=MIN_GRID_POINTS)
        ),
        vol.Optional(CONF_DOMAIN): domain,
        vol.Optional(CONF_DIM, default=DEFAULT_QFOCK_DIM): vol.All(
            vol.Coerce(int), vol.Range(min=2)
        ),
        vol.Optional(CONF_FAMILY): vol.In(FAMILY_NAMES),
        vol.Optional(CONF_RICCATI): riccati,
        vol.Optional(CONF_G): finite_float,
        vol.Optional(CONF_S): finite_float,
        vol.Optional(CONF_R): finite_float,
        vol.Optional(CONF_EPS0): finite_float,
        **_SYSTEM_PARAM_SCHEMA,
    }
)

WAVEFUNCTION_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_SYSTEM): vol.In(WAVEFUNCTION_SYSTEMS),
        vol.Optional(CONF_N, default=0): _NONNEG_INT,
        vol.Optional(CONF_SAMPLES, default=DEFAULT_SAMPLES): vol.All(
            vol.Coerce(int), vol.Range(min=2)
        ),
        vol.Optional(CONF_DOMAIN): domain,
        **_SYSTEM_PARAM_SCHEMA,
    }
)

COMMAND_SCHEMAS: dict[str, vol.Schema] = {
    CMD_CANONICALIZE: CANONICALIZE_SCHEMA,
    CMD_SPECTRUM: SPECTRUM_SCHEMA,
    CMD_VERIFY: VERIFY_SCHEMA,
    CMD_WAVEFUNCTION: WAVEFUNCTION_SCHEMA,
}

CONFIG_FILE_SCHEMA = vol.Schema({vol.Optional(cmd): dict for cmd in COMMANDS})

THREADS_SCHEMA = vol.Schema(_POS_INT)


def _path_of(err: vol.Invalid) -> str | None:
    return ".".join(str(p) for p in err.path) or None


def validate_params(command: str, data: Mapping[str, Any]) -> dict[str, Any]:
    """Validate one command's parameter record.

    Raises InvalidParameters naming the first failing key.
    """
    if command not in COMMAND_SCHEMAS:
        raise InvalidParameters(f"unknown command {command!r}", field="command")
    try:
        params = COMMAND_SCHEMAS[command](dict(data))
    except vol.MultipleInvalid as err:
        first = err.errors[0]
        raise InvalidParameters(str(first), field=_path_of(first)) from err

    system = params.get(CONF_SYSTEM)
    for key in SYSTEM_PARAMS.get(system, ()):
        if key not in params:
            raise InvalidParameters(
                f"system {system!r} needs parameter {key!r}", field=key
            )
    return params


def load_config(path: str | Path) -> dict[str, dict[str, Any]]:
    """Load a JSON config file keyed by command name."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise InvalidParameters(f"cannot read config {path}: {err}", field="config") from err
    except json.JSONDecodeError as err:
        raise InvalidParameters(f"config {path} is not JSON: {err}", field="config") from err
    try:
        return CONFIG_FILE_SCHEMA(raw)
    except vol.Invalid as err:
        raise InvalidParameters(f"config {path}: {err}", field="config") from err


def merge_params(
    defaults: Mapping[str, Any], overrides: Mapping[str, Any]
) -> dict[str, Any]:
    """Overlay command-line values that were actually given onto config values."""
    merged = dict(defaults)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return merged


def threads_from_env(environ: Mapping[str, str]) -> int | None:
    """Return the validated thread cap from the environment, if set."""
    raw = environ.get(ENV_THREADS)
    if raw is None or raw == "":
        return None
    try:
        return THREADS_SCHEMA(raw)
    except vol.Invalid as err:
        raise InvalidParameters(
            f"{ENV_THREADS}={raw!r} must be a positive integer", field=ENV_THREADS
        ) from err


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one command's output."""

    command: str
    params: dict[str, Any] = field(default_factory=dict)
    output_format: str = FORMAT_CSV
    output: str | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.output_format not in (FORMAT_CSV, FORMAT_JSON):
            raise InvalidParameters(
                f"unknown format {self.output_format!r}", field="format"
            )

    def to_json(self) -> str:
        """Serialize with sorted keys; floats keep their shortest repr."""
        data = asdict(self)
        for key in (CONF_DOMAIN, CONF_RICCATI):
            if key in data["params"]:
                data["params"][key] = list(data["params"][key])
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        """Rebuild a run config, revalidating its parameters."""
        data = json.loads(text)
        params = validate_params(data["command"], data.get("params", {}))
        return cls(
            command=data["command"],
            params=params,
            output_format=data.get("output_format", FORMAT_CSV),
            output=data.get("output"),
            seed=int(data.get("seed", 0)),
        )

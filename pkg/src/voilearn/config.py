"""Run configuration: flat key=value files plus flag overrides.

Precedence: built-in defaults < per-experiment defaults < config file <
flags, with ``--full-scale`` applied last as a preset (paper-scale trials and
grid). The fully resolved configuration is echoed next to the outputs so any
artifact can be reproduced from its directory alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .belief import MetricKind
from .teachers import TeacherPool

__all__ = ["ConfigError", "EXPERIMENTS", "RunConfig", "parse_config", "write_resolved_config"]

EXPERIMENTS = ("phase_map", "compare", "beta_trace", "converge", "learn")

FULL_SCALE_TRIALS = 100
FULL_SCALE_GRID_POINTS = 21


class ConfigError(ValueError):
    """A configuration key is unknown, malformed, or out of range."""


def _parse_bool(text):
    if isinstance(text, bool):
        return text
    key = str(text).strip().lower()
    if key in ("1", "true", "yes", "on"):
        return True
    if key in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_axis(text) -> tuple[float, ...]:
    """Either ``lo:hi:n`` (inclusive linspace) or a comma-separated list."""
    if isinstance(text, (tuple, list)):
        if len(text) == 3:
            lo, hi, n = float(text[0]), float(text[1]), int(text[2])
            return tuple(float(v) for v in np.linspace(lo, hi, n))
        return tuple(float(v) for v in text)
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected lo:hi:n, got {text!r}")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise ValueError(f"axis needs at least one point, got {n}")
        return tuple(float(v) for v in np.linspace(lo, hi, n))
    return tuple(float(v) for v in text.split(","))


_CONVERTERS = {
    "experiment": str,
    "dims": int,
    "lower": float,
    "upper": float,
    "grid_points": int,
    "pool": _parse_axis,
    "trials": int,
    "steps": int,
    "metric": MetricKind.parse,
    "epsilon": float,
    "seed": int,
    "out": str,
    "full_scale": _parse_bool,
    "beta": float,
    "queries": int,
    "mu": _parse_axis,
    "sigma": _parse_axis,
}

_DEFAULTS = {
    "dims": 3,
    "lower": -10.0,
    "upper": 10.0,
    "grid_points": 21,
    "pool": "0:4:21",
    "trials": 100,
    "steps": 100,
    "metric": "mse",
    "epsilon": 0.1,
    "seed": 0,
    "out": "voilearn_out",
    "full_scale": False,
    "beta": 2.0,
    "queries": 2000,
    "mu": "-4:4:33",
    "sigma": "0.2:5:25",
}

_EXPERIMENT_DEFAULTS = {
    "phase_map": {"dims": 1, "grid_points": 201, "pool": "0.05:4:40"},
    "converge": {"dims": 1, "grid_points": 11},
}


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    dims: int
    lower: float
    upper: float
    grid_points: int
    pool: TeacherPool
    trials: int
    steps: int
    metric: MetricKind
    epsilon: float
    seed: int
    out: Path
    full_scale: bool
    beta: float
    queries: int
    mu_axis: tuple[float, ...]
    sigma_axis: tuple[float, ...]


def _read_config_file(path) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONVERTERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _convert(key: str, value):
    try:
        return _CONVERTERS[key](value)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"field {key!r}: {exc}") from exc


def parse_config(experiment: str, config_path=None, overrides=None) -> RunConfig:
    """Resolve an experiment's configuration from file and flag overrides.

    ``overrides`` maps config keys to raw (string or typed) values; ``None``
    entries are ignored so flag parsers can pass everything through.
    """
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"field 'experiment': unknown experiment {experiment!r}")
    raw = dict(_DEFAULTS)
    raw.update(_EXPERIMENT_DEFAULTS.get(experiment, {}))
    if config_path is not None:
        file_values = _read_config_file(config_path)
        file_values.pop("experiment", None)  # the subcommand names the experiment
        raw.update(file_values)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _CONVERTERS or key == "experiment":
            raise ConfigError(f"unknown override key {key!r}")
        raw[key] = value

    values = {key: _convert(key, value) for key, value in raw.items()}
    if values["full_scale"]:
        values["trials"] = FULL_SCALE_TRIALS
        values["grid_points"] = FULL_SCALE_GRID_POINTS

    _require(values["dims"] >= 1, "dims", "must be >= 1")
    _require(values["grid_points"] >= 1, "grid_points", "must be >= 1")
    _require(values["lower"] <= values["upper"], "lower", "must not exceed upper")
    _require(values["trials"] >= 1, "trials", "must be >= 1")
    _require(values["steps"] >= 0, "steps", "must be >= 0")
    _require(values["epsilon"] >= 0, "epsilon", "must be >= 0")
    _require(values["queries"] >= 0, "queries", "must be >= 0")
    _require(len(values["pool"]) >= 1, "pool", "must contain at least one teacher")
    if experiment == "converge":
        _require(values["beta"] > 0, "beta", "must be > 0 for the convergence check")

    try:
        pool = TeacherPool(tuple(values["pool"]))
    except ValueError as exc:
        raise ConfigError(f"field 'pool': {exc}") from exc

    return RunConfig(
        experiment=experiment,
        dims=values["dims"],
        lower=values["lower"],
        upper=values["upper"],
        grid_points=values["grid_points"],
        pool=pool,
        trials=values["trials"],
        steps=values["steps"],
        metric=values["metric"],
        epsilon=values["epsilon"],
        seed=values["seed"],
        out=Path(values["out"]),
        full_scale=values["full_scale"],
        beta=values["beta"],
        queries=values["queries"],
        mu_axis=values["mu"],
        sigma_axis=values["sigma"],
    )


def _require(condition: bool, field: str, message: str) -> None:
    if not condition:
        raise ConfigError(f"field {field!r}: {message}")


def write_resolved_config(config: RunConfig, path) -> None:
    lines = [
        f"experiment = {config.experiment}",
        f"dims = {config.dims}",
        f"lower = {config.lower!r}",
        f"upper = {config.upper!r}",
        f"grid_points = {config.grid_points}",
        "pool = " + ",".join(f"{b!r}" for b in config.pool.betas),
        f"trials = {config.trials}",
        f"steps = {config.steps}",
        f"metric = {config.metric.value}",
        f"epsilon = {config.epsilon!r}",
        f"seed = {config.seed}",
        f"out = {config.out}",
        f"full_scale = {config.full_scale}",
        f"beta = {config.beta!r}",
        f"queries = {config.queries}",
        "mu = " + ",".join(f"{m!r}" for m in config.mu_axis),
        "sigma = " + ",".join(f"{s!r}" for s in config.sigma_axis),
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

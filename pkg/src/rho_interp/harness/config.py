"""Experiment configs: strict schemas, unknown keys rejected."""

from __future__ import annotations

import dataclasses
import json
import math
import typing
from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "parse_params"]

TOP_KEYS = {"check", "seed", "params", "constants", "output"}


class ConfigError(ValueError):
    """Schema violation or unusable config; maps to exit code 2."""


@dataclass(frozen=True)
class ExperimentConfig:
    check: str
    seed: int
    params: dict = field(default_factory=dict)
    constants: str | None = None
    output: str = "reports"
    base_dir: str = "."

    def resolve(self, path: str) -> Path:
        p = Path(path)
        return p if p.is_absolute() else Path(self.base_dir) / p


def _coerce(name, tp, value):
    origin = typing.get_origin(tp)
    if origin is typing.Union:
        args = [a for a in typing.get_args(tp) if a is not type(None)]
        if value is None:
            return None
        return _coerce(name, args[0], value)
    if tp is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{name}: expected a boolean, got {value!r}")
        return value
    if tp is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name}: expected an integer, got {value!r}")
        return value
    if tp is float:
        if value in ("inf", "Infinity"):
            return math.inf
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name}: expected a number, got {value!r}")
        return float(value)
    if tp is str:
        if not isinstance(value, str):
            raise ConfigError(f"{name}: expected a string, got {value!r}")
        return value
    if origin in (list, tuple) or tp in (list, tuple):
        if not isinstance(value, list):
            raise ConfigError(f"{name}: expected a list, got {value!r}")
        args = typing.get_args(tp)
        if args:
            return tuple(_coerce(f"{name}[{i}]", args[0], v) for i, v in enumerate(value))
        return tuple(value)
    if origin is dict or tp is dict:
        if not isinstance(value, dict):
            raise ConfigError(f"{name}: expected an object, got {value!r}")
        return value
    return value


def parse_params(cls, raw: dict):
    """Build the params dataclass ``cls`` from a dict, strictly."""
    if not isinstance(raw, dict):
        raise ConfigError("params must be an object")
    hints = typing.get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(raw) - names
    if unknown:
        raise ConfigError(f"unknown params for {cls.__name__}: {sorted(unknown)}")
    kw = {k: _coerce(k, hints[k], v) for k, v in raw.items()}
    try:
        return cls(**kw)
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e


def config_from_dict(raw: dict, base_dir: str = ".") -> ExperimentConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "check" not in raw or not isinstance(raw["check"], str):
        raise ConfigError("config needs a string 'check'")
    seed = raw.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ConfigError("seed must be an integer in [0, 2^64)")
    params = raw.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    constants = raw.get("constants")
    if constants is not None and not isinstance(constants, str):
        raise ConfigError("constants must be a path")
    output = raw.get("output", "reports")
    if not isinstance(output, str):
        raise ConfigError("output must be a path")
    return ExperimentConfig(raw["check"], seed, params, constants, output, base_dir)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON: {e}") from e
    return config_from_dict(raw, str(path.parent))

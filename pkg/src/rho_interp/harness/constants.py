"""Frozen suite constants with a calibration digest.

File layout::

    {"schema": 1,
     "constants": {key: value},
     "calibration": {"seeds": [...], "margin": m, "raw": {key: value}},
     "digest": sha256 over the canonical JSON of (constants, calibration)}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..reports import canonical_json, digest
from .config import ConfigError

__all__ = ["ConstantsFile", "load_constants", "default_constants_path", "MARGIN"]

SCHEMA = 1
MARGIN = 1.25


@dataclass(frozen=True)
class ConstantsFile:
    constants: dict
    seeds: tuple
    margin: float = MARGIN
    raw: dict = field(default_factory=dict)

    def body(self) -> dict:
        return {"constants": self.constants,
                "calibration": {"seeds": list(self.seeds), "margin": self.margin,
                                "raw": self.raw}}

    @property
    def digest(self) -> str:
        return digest(self.body())

    def get(self, key: str) -> float:
        if key not in self.constants:
            raise ConfigError(f"constants file has no entry {key!r}")
        return float(self.constants[key])

    def to_json(self) -> str:
        data = dict(schema=SCHEMA, **self.body(), digest=self.digest)
        return json.dumps(json.loads(canonical_json(data)), sort_keys=True, indent=1) + "\n"

    def write(self, path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_raw(cls, raw: dict, seeds, margin: float = MARGIN) -> "ConstantsFile":
        return cls({k: margin * float(v) for k, v in sorted(raw.items())}, tuple(seeds),
                   margin, {k: float(v) for k, v in sorted(raw.items())})


def default_constants_path() -> Path:
    return Path(str(resources.files("rho_interp") / "data" / "constants.json"))


def load_constants(path=None) -> ConstantsFile:
    """Load and verify; any mismatch is a config error."""
    path = default_constants_path() if path is None else Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"missing constants file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON: {e}") from e
    try:
        if data["schema"] != SCHEMA:
            raise ConfigError(f"{path}: unsupported schema {data['schema']}")
        cal = data["calibration"]
        cf = ConstantsFile(dict(data["constants"]), tuple(cal["seeds"]), float(cal["margin"]),
                           dict(cal["raw"]))
        stored = data["digest"]
    except (KeyError, TypeError) as e:
        raise ConfigError(f"{path}: malformed constants file ({e})") from e
    if cf.digest != stored:
        raise ConfigError(f"{path}: calibration digest mismatch")
    return cf

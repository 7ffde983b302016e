"""Check reports: canonical JSON and CSV emission."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA_VERSION = 1


def to_jsonable(obj):
    """Convert numpy scalars/arrays and tuples into plain JSON values.

    Non-finite floats become the strings "inf", "-inf" and "nan".
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def canonical_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


@dataclass
class CheckReport:
    """Result of one verification run.

    ``measurements`` is a list of flat records; ``tables`` maps a CSV name to
    {"columns": [...], "rows": [[...], ...]}; ``summary`` carries the
    (constant, worst_ratio) pair used by the aggregate table.
    """

    check: str
    inputs: dict
    constants: dict = field(default_factory=dict)
    measurements: list = field(default_factory=list)
    passed: bool = False
    summary: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def inputs_digest(self) -> str:
        return digest(self.inputs)

    def to_dict(self) -> dict:
        return to_jsonable({
            "schema": SCHEMA_VERSION,
            "check": self.check,
            "inputs": self.inputs,
            "inputs_digest": self.inputs_digest,
            "constants": self.constants,
            "measurements": self.measurements,
            "summary": self.summary,
            "tables": self.tables,
            "notes": self.notes,
            "pass": bool(self.passed),
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    def table_csv(self, name: str) -> str:
        tab = self.tables[name]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(tab["columns"])
        for row in tab["rows"]:
            w.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()


def _csv_cell(v):
    v = to_jsonable(v)
    if isinstance(v, float):
        return repr(v)
    return v


REQUIRED_KEYS = ("check", "inputs_digest", "constants", "measurements", "pass")


def load_report(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or any(k not in data for k in REQUIRED_KEYS):
        raise ValueError(f"{path}: not a check report")
    return data

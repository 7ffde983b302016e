"""Config-driven execution: single checks, the full suite, calibration."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..reports import CheckReport, canonical_json, load_report
from . import suite as suite_mod
from .config import ConfigError, ExperimentConfig, parse_params
from .constants import MARGIN, ConstantsFile, load_constants

__all__ = ["execute", "calibrate", "write_report", "summary_rows", "summary_csv",
           "SUMMARY_COLUMNS"]

SUMMARY_COLUMNS = ("check", "constant", "worst_ratio", "pass")


@dataclass(frozen=True)
class SuiteRunParams:
    alt_workers: int = 3
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.alt_workers < 2:
            raise ValueError("alt_workers must be at least 2")


@dataclass(frozen=True)
class CalibrateParams:
    seeds: tuple[int, ...] = (101, 202, 303)
    checks: tuple[str, ...] = ()
    margin: float = MARGIN
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.seeds:
            raise ValueError("calibration needs at least one seed")
        if not self.margin >= 1.0:
            raise ValueError("margin must be >= 1")


def _constants_for(cfg: ExperimentConfig) -> ConstantsFile:
    cf = load_constants(None if cfg.constants is None else cfg.resolve(cfg.constants))
    if cfg.seed in cf.seeds:
        raise ConfigError(f"seed {cfg.seed} was used for calibration; verify on fresh seeds")
    return cf


def execute(cfg: ExperimentConfig, progress=None) -> list[CheckReport]:
    """Run the check named in ``cfg``; returns the reports (not yet written)."""
    if cfg.check == "calibrate":
        raise ConfigError("use the calibrate command for calibration configs")
    if cfg.check == "suite":
        p = parse_params(SuiteRunParams, cfg.params)
        suite_mod.suite_params(p.overrides)  # validate before any work
        return suite_mod.run_suite(cfg.seed, _constants_for(cfg), p.overrides, p.alt_workers,
                                   progress)
    if cfg.check not in suite_mod.SUITE:
        known = sorted(suite_mod.SUITE) + ["suite", "calibrate"]
        raise ConfigError(f"unknown check {cfg.check!r}; expected one of {known}")
    params = parse_params(suite_mod.SUITE[cfg.check].params, cfg.params)
    needs = suite_mod.constant_keys(cfg.check, params)
    constants = _constants_for(cfg) if needs else None
    if progress:
        progress(cfg.check, None)
    return [suite_mod.run_check(cfg.check, params, cfg.seed, constants)]


def calibrate(cfg: ExperimentConfig, progress=None) -> ConstantsFile:
    """Max measured ratio per constant key over the seeds, times the margin."""
    if cfg.check != "calibrate":
        raise ConfigError("calibration configs must have check 'calibrate'")
    p = parse_params(CalibrateParams, cfg.params)
    params = suite_mod.suite_params(p.overrides)
    names = list(p.checks) or [n for n in suite_mod.SUITE
                               if suite_mod.constant_keys(n, params[n])]
    unknown = [n for n in names if n not in suite_mod.SUITE]
    if unknown:
        raise ConfigError(f"unknown checks {unknown}")
    raw = {}
    for seed in p.seeds:
        for n in names:
            if progress:
                progress(n, seed)
            rep = suite_mod.SUITE[n].fn(params[n], seed, None)
            for k, v in rep.summary["measured"].items():
                if not math.isfinite(v):
                    raise RuntimeError(f"calibration of {k} produced {v}")
                raw[k] = max(raw.get(k, 0.0), float(v))
    return ConstantsFile.from_raw(raw, p.seeds, p.margin)


# ---------------------------------------------------------------------------
# output


def _flat_rows(records):
    cols = []
    for r in records:
        for k in r:
            if k not in cols:
                cols.append(k)
    rows = []
    for r in records:
        row = []
        for k in cols:
            v = r.get(k)
            row.append(canonical_json(v) if isinstance(v, (dict, list, tuple)) else v)
        rows.append(row)
    return cols, rows


def _csv_text(columns, rows) -> str:
    from ..reports import _csv_cell

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def write_report(rep: CheckReport, outdir) -> list[Path]:
    """<check>.json, one CSV per table and <check>.measurements.csv."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / f"{rep.check}.json"]
    paths[0].write_text(rep.to_json(), encoding="utf-8")
    for name in sorted(rep.tables):
        p = out / f"{rep.check}.{name}.csv"
        p.write_text(rep.table_csv(name), encoding="utf-8")
        paths.append(p)
    if rep.measurements and all(isinstance(m, dict) for m in rep.measurements):
        p = out / f"{rep.check}.measurements.csv"
        p.write_text(_csv_text(*_flat_rows(rep.measurements)), encoding="utf-8")
        paths.append(p)
    return paths


def summary_rows(paths) -> list[list]:
    rows = []
    for path in paths:
        try:
            data = load_report(path)
        except (OSError, ValueError) as e:
            raise ConfigError(f"unreadable report {path}: {e}") from e
        s = data.get("summary", {})
        rows.append([data["check"], s.get("constant"), s.get("worst_ratio"), bool(data["pass"])])
    return rows


def summary_csv(paths) -> str:
    return _csv_text(SUMMARY_COLUMNS, summary_rows(paths))

import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rho_interp import rng
from rho_interp.harness import suite as S
from rho_interp.harness.cli import main
from rho_interp.harness.config import ConfigError, config_from_dict, load_config, parse_params
from rho_interp.harness.constants import ConstantsFile, default_constants_path, load_constants
from rho_interp.harness.runner import SUMMARY_COLUMNS, summary_csv
from rho_interp.reports import CheckReport, canonical_json

SMALL31 = {"tensors": 3, "budget": 2, "reconstruction_cases": 2}


def write(path, obj):
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def constants_file(tmp_path, value, keys=("theorem31.unit", "theorem31.weighted"), seeds=(1,)):
    cf = ConstantsFile.from_raw({k: value for k in keys}, seeds, margin=1.0)
    p = tmp_path / "constants.json"
    cf.write(p)
    return str(p)


# ---------------------------------------------------------------------------
# rng


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**64 - 1), st.text(max_size=8), st.integers(0, 1000))
def test_streams_reproducible(seed, name, i):
    a = rng.stream(seed, name, i).random(4)
    b = rng.stream(seed, name, i).random(4)
    np.testing.assert_array_equal(a, b)
    assert 0 <= rng.derive_seed(seed, name, i) < 2**63


def test_streams_differ_by_key():
    assert rng.stream(1, "a", 0).random() != rng.stream(1, "a", 1).random()
    assert rng.stream(1, "a").random() != rng.stream(1, "b").random()


def test_parallel_map_order_and_workers(monkeypatch):
    monkeypatch.setenv(rng.WORKERS_ENV, "4")
    assert rng.workers() == 4
    with rng.using_workers(1):
        assert rng.workers() == 1
    assert rng.parallel_map(lambda v: v * v, range(20)) == [v * v for v in range(20)]
    monkeypatch.setenv(rng.WORKERS_ENV, "lots")
    with pytest.raises(ValueError):
        rng.workers()


# ---------------------------------------------------------------------------
# reports


def test_report_json_canonical():
    rep = CheckReport("x", {"a": np.array([1.0, math.inf])}, measurements=[{"v": np.float64(2)}],
                      passed=True, summary={"constant": None, "worst_ratio": 0.5})
    data = json.loads(rep.to_json())
    assert data["inputs"]["a"] == [1.0, "inf"]
    assert data["pass"] is True and len(data["inputs_digest"]) == 64
    assert canonical_json({"b": 1, "a": (1, 2)}) == '{"a":[1,2],"b":1}'


# ---------------------------------------------------------------------------
# configs


@pytest.mark.parametrize("raw", [
    [],
    {"seed": 1},
    {"check": "cutting", "seed": -1},
    {"check": "cutting", "seed": 2**64},
    {"check": "cutting", "seed": True},
    {"check": "cutting", "extra": 1},
    {"check": "cutting", "params": []},
    {"check": "cutting", "constants": 3},
])
def test_config_schema_errors(raw):
    with pytest.raises(ConfigError):
        config_from_dict(raw)


@pytest.mark.parametrize("params", [
    {"window": "12"},
    {"window": 1.5},
    {"unknown": 1},
    {"dim": True},
])
def test_params_schema_errors(params):
    with pytest.raises(ConfigError):
        parse_params(S.CuttingParams, params)


def test_params_coercion():
    p = parse_params(S.EquivalenceParams, {"qs": [1, "inf"], "w0": [1, 2], "w1": [3, 4]})
    assert p.qs == (1.0, math.inf) and p.w0 == (1.0, 2.0)
    with pytest.raises(ConfigError):
        parse_params(S.EquivalenceParams, {"w0": [1, 2, 3], "w1": [3, 4]})


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    with pytest.raises(ConfigError):
        load_config(write(tmp_path / "bad.json", "{not json"))


# ---------------------------------------------------------------------------
# constants


def test_packaged_constants_cover_suite_keys():
    cf = load_constants()
    params = S.suite_params({})
    keys = {k for n in S.SUITE for k in S.constant_keys(n, params[n])}
    assert keys == set(cf.constants)
    assert cf.margin == 1.25
    for k, v in cf.raw.items():
        assert cf.constants[k] == pytest.approx(1.25 * v, rel=1e-15)
    assert str(default_constants_path()).endswith("constants.json")


def test_constants_digest_tamper(tmp_path):
    p = constants_file(tmp_path, 0.5)
    assert load_constants(p).get("theorem31.unit") == 0.5
    data = json.loads(open(p).read())
    data["constants"]["theorem31.unit"] = 9.0
    write(tmp_path / "constants.json", data)
    with pytest.raises(ConfigError, match="digest"):
        load_constants(p)
    with pytest.raises(ConfigError):
        load_constants(tmp_path / "none.json")
    with pytest.raises(ConfigError):
        ConstantsFile({}, (1,)).get("missing")


# ---------------------------------------------------------------------------
# CLI


def test_run_cheap_check(tmp_path, capsys):
    cfg = write(tmp_path / "c.json", {"check": "cutting", "seed": 3, "output": "out"})
    assert main(["run", cfg]) == 0
    out = tmp_path / "out"
    data = json.loads((out / "cutting.json").read_text())
    assert data["pass"] is True
    rows = list(csv.reader(io.StringIO((out / "summary.csv").read_text())))
    assert rows[0] == list(SUMMARY_COLUMNS) and rows[1][0] == "cutting"
    assert (out / "cutting.measurements.csv").exists()
    assert "PASS" in capsys.readouterr().out


@pytest.mark.parametrize("raw", [
    {"check": "nope", "seed": 1},
    {"check": "equivalence", "seed": 1, "params": {"w0": [1, 2, 3], "w1": [1, 2]}},
    {"check": "sequence_spaces", "seed": 1, "params": {"w0": [1], "w1": [1, 2]}},
    {"check": "cutting", "seed": 1, "params": {"window": 3, "n_max": 10}},
    {"check": "theorem52", "seed": 1, "params": {"dims": [8]}},
    {"check": "steps", "seed": 1, "params": {"presets": ["spiral"]}},
    {"check": "suite", "seed": 1, "params": {"overrides": {"nope": {}}}},
])
def test_run_config_errors_exit_2(tmp_path, raw):
    assert main(["run", write(tmp_path / "c.json", raw), "-o", str(tmp_path)]) == 2


def test_run_needs_constants(tmp_path):
    raw = {"check": "theorem31", "seed": 9, "params": SMALL31,
           "constants": str(tmp_path / "missing.json")}
    assert main(["run", write(tmp_path / "c.json", raw), "-o", str(tmp_path)]) == 2


def test_run_rejects_calibration_seed(tmp_path):
    p = constants_file(tmp_path, 10.0, seeds=(9,))
    raw = {"check": "theorem31", "seed": 9, "params": SMALL31, "constants": p}
    assert main(["run", write(tmp_path / "c.json", raw), "-o", str(tmp_path)]) == 2


@pytest.mark.parametrize("value,code", [(10.0, 0), (1e-9, 1)])
def test_run_exit_code_follows_constant(tmp_path, value, code):
    p = constants_file(tmp_path, value)
    raw = {"check": "theorem31", "seed": 9, "params": SMALL31, "constants": p}
    assert main(["run", write(tmp_path / "c.json", raw), "-o", str(tmp_path / "r")]) == code
    data = json.loads((tmp_path / "r" / "theorem31.json").read_text())
    assert data["summary"]["constant"] == value
    assert (tmp_path / "r" / "theorem31.ratios.csv").exists()


def test_calibrate_then_verify(tmp_path):
    raw = {"check": "calibrate", "params": {"seeds": [1, 2], "checks": ["theorem31"],
                                            "overrides": {"theorem31": SMALL31}},
           "output": "consts.json"}
    assert main(["calibrate", write(tmp_path / "cal.json", raw)]) == 0
    cf = load_constants(tmp_path / "consts.json")
    assert cf.seeds == (1, 2) and set(cf.constants) == {"theorem31.unit", "theorem31.weighted"}
    # calibrating is idempotent
    assert main(["run", str(tmp_path / "cal.json"), "-o", str(tmp_path / "again.json")]) == 0
    assert (tmp_path / "again.json").read_text() == (tmp_path / "consts.json").read_text()


def test_calibrate_rejects_bad_configs(tmp_path):
    bad = {"check": "calibrate", "params": {"seeds": []}}
    assert main(["calibrate", write(tmp_path / "a.json", bad)]) == 2
    bad = {"check": "calibrate", "params": {"checks": ["nope"]}}
    assert main(["calibrate", write(tmp_path / "b.json", bad)]) == 2
    bad = {"check": "cutting"}
    assert main(["calibrate", write(tmp_path / "c.json", bad)]) == 2


def test_summary_command(tmp_path, capsys):
    assert main(["summary"]) == 0
    assert capsys.readouterr().out.strip() == ",".join(SUMMARY_COLUMNS)
    cfg = write(tmp_path / "c.json", {"check": "boyd_class", "seed": 1, "output": "o"})
    assert main(["run", cfg]) == 0
    capsys.readouterr()
    out = tmp_path / "s.csv"
    assert main(["summary", str(tmp_path / "o" / "boyd_class.json"), "-o", str(out)]) == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[1][0] == "boyd_class" and rows[1][3] == "True"
    assert main(["summary", write(tmp_path / "bad.json", {"check": "x"})]) == 2
    assert main(["summary", str(tmp_path / "missing.json")]) == 2


def test_usage_errors_exit_2():
    assert main([]) == 2
    assert main(["frobnicate"]) == 2


# ---------------------------------------------------------------------------
# determinism


def test_reports_identical_across_worker_counts():
    p = parse_params(S.EquivalenceParams, {"thetas": [0.5], "qs": [2], "samples": 6,
                                           "degenerate_samples": 4})
    cf = ConstantsFile.from_raw({"equivalence.theta=0.5.q=2": 5.0}, (1,))
    out = []
    for n in (1, 3):
        with rng.using_workers(n):
            out.append(S.run_check("equivalence", p, 77, cf).to_json())
    assert out[0] == out[1]


def test_summary_csv_empty():
    assert summary_csv([]) == ",".join(SUMMARY_COLUMNS) + "\n"

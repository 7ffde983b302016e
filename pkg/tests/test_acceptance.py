"""The twelve acceptance criteria, evaluated on one verify run of the suite.

The suite runs once per session (fresh seed, packaged frozen constants), first
with one worker and then with three; criteria 1-11 read the first run and
criterion 12 compares the two byte for byte.  Each criterion prints one
PASS/FAIL line in the terminal summary.  Run this file directly to get the
same lines without pytest.
"""

import json
import sys

import pytest

ACCEPT_SEED = 20261015
RESULTS = {}


def _rows(rep, table):
    t = rep.tables[table]
    return [dict(zip(t["columns"], r)) for r in t["rows"]]


def c1(r):
    s = r["k_oracle"].summary
    ok = s["worst_rel_conic"] <= 1e-6 and s["worst_rel_grid"] <= 1e-6 \
        and s["worst_rel_closed"] <= 1e-9 and len(r["k_oracle"].measurements) == 500
    return ok, (f"conic {s['worst_rel_conic']:.1e}, grid {s['worst_rel_grid']:.1e} "
                f"({s['grid_cases']} cases), closed form {s['worst_rel_closed']:.1e}")


def c2(r):
    v = r["k_properties"].summary["violations"]
    return sum(v.values()) == 0, "violations " + json.dumps(v, sort_keys=True)


def c3(r):
    s = r["boyd_class"].summary
    ok = s["worst_ratio"] <= 1e-3 and s["endpoints_rejected"] and abs(s["integral"] - 4) <= 1e-3
    return ok, (f"index error {s['worst_ratio']:.1e}, endpoints rejected "
                f"{s['endpoints_rejected']}, integral {s['integral']:.6f}")


def _within(rep):
    s = rep.summary
    frozen = rep.constants
    bad = [k for k, v in s["measured"].items() if not v <= frozen[k]]
    return bad


def c4(r):
    rep = r["equivalence"]
    bad = _within(rep)
    s = rep.summary
    ok = not bad and s["degenerate_worst"] <= 1e-6 and len(s["measured"]) == 9
    return ok, (f"9 spreads within frozen constants (tightest {s['worst_ratio']:.3f} <= "
                f"{s['constant']:.3f}), degenerate deviation {s['degenerate_worst']:.1e}"
                + (f"; over: {bad}" if bad else ""))


def c5(r):
    rep = r["sequence_spaces"]
    bad = _within(rep)
    s = rep.summary
    ok = not bad and s["one_hot_worst"] <= 1e-9
    return ok, (f"6 ratios within frozen constants, one-hot error {s['one_hot_worst']:.1e}"
                + (f"; over: {bad}" if bad else ""))


def c6(r):
    rep = r["cutting"]
    rows = _rows(rep, "norms")
    exact = all(x["plus_0_to_1"] == x["expected"] == 2.0 ** -(x["n"] + 1)
                and x["minus_1_to_0"] == x["expected"] for x in rows)
    ns = sorted(x["n"] for x in rows)
    ok = exact and ns == list(range(11)) and rep.summary["identity_exact"]
    return ok, f"n = 0..10 exact {exact}, identity exact {rep.summary['identity_exact']}"


def c7(r):
    rep = r["theorem31"]
    bad = _within(rep)
    s = rep.summary
    ok = not bad and s["reconstruction_error"] <= 1e-12
    return ok, (f"unit {s['measured']['theorem31.unit']:.4f}, weighted "
                f"{s['measured']['theorem31.weighted']:.4f} vs frozen C_suite; reconstruction "
                f"{s['reconstruction_error']:.1e}" + (f"; over: {bad}" if bad else ""))


def c8(r):
    s = r["theorem41"].summary
    cov = _rows(r["theorem41"], "covering")
    ok = s["modulus_ok"] and s["transfer_ok"] and s["pair_ok"] and len(cov) > 0
    return ok, (f"modulus decreasing {s['modulus_ok']}, transfer at {len(cov)} grid points "
                f"{s['transfer_ok']}, pair ratio {s['worst_ratio']:.3f} <= C {s['constant']:.3f}")


def c9(r):
    rep = r["steps"]
    diag = [m for m in rep.measurements if ".diagonal" in m["key"]]
    ok = bool(diag) and all(m["decay_ok"] and m["bound_ok"] for m in diag) and not _within(rep)
    return ok, (f"{len(diag)} diagonal runs: decay below 1e-3 and bounds hold "
                f"{all(m['decay_ok'] and m['bound_ok'] for m in diag)}")


def c10(r):
    s = r["theorem52"].summary
    ok = s["worst_ratio"] <= 2.0 and s["nonincreasing"]
    return ok, f"worst factor {s['worst_ratio']:.6f}, nonincreasing {s['nonincreasing']}"


def c11(r):
    s = r["persson"].summary
    dim = r["persson"].inputs["params"]["N"]
    first = s["first_below_tol"]
    ok = s["decreasing"] and s["zero_at_dim"] and first is not None and first < dim
    return ok, f"decreasing {s['decreasing']}, zero at r = {dim} {s['zero_at_dim']}, below 1e-3 at r = {first}"


def c12(r):
    s = r["determinism"].summary
    return s["identical"] and s["compared"] == 11, \
        f"{s['compared']} reports identical across worker counts 1 and 3: {s['identical']}"


CRITERIA = [
    (1, "k_oracle", "K-functional oracle equivalence", c1),
    (2, "k_properties", "K-functional properties", c2),
    (3, "boyd_class", "Boyd indices and classes", c3),
    (4, "equivalence", "J/K equivalence", c4),
    (5, "sequence_spaces", "sequence spaces and embedding", c5),
    (6, "cutting", "cutting operators", c6),
    (7, "theorem31", "bilinear interpolation bound", c7),
    (8, "theorem41", "Cauchy and covering transfer", c8),
    (9, "steps", "cut-term trajectories", c9),
    (10, "theorem52", "entropy profile stability", c10),
    (11, "persson", "Persson residuals", c11),
    (12, "determinism", "determinism", c12),
]


def evaluate(reports, n):
    _, check, title, fn = CRITERIA[n - 1]
    by_name = {rep.check: rep for rep in reports}
    ok, detail = fn(by_name)
    # the check's own verdict must agree
    ok = bool(ok and by_name[check].passed)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d} {title}: {detail}"
    RESULTS[n] = line
    return ok, line


@pytest.mark.acceptance
@pytest.mark.parametrize("n", [c[0] for c in CRITERIA], ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(suite_reports, n):
    ok, line = evaluate(suite_reports, n)
    assert ok, line


def run_suite_once():
    from rho_interp.harness.constants import load_constants
    from rho_interp.harness.suite import run_suite

    return run_suite(ACCEPT_SEED, load_constants())


if __name__ == "__main__":
    reports = run_suite_once()
    results = [evaluate(reports, n)[0] for n, *_ in CRITERIA]
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if all(results) else 1)

"""The verification suite: twelve checks, each reduced to one report.

Every suite check takes a params dataclass, a root seed and (optionally)
frozen constants.  Checks with empirical constants report their measured
worst ratios under ``summary["measured"]``; ``calibrate`` collects those over
a seed set and the verify run compares them with the frozen values.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .. import rng as rng_mod
from ..bilinear import (BilinearMap, convolution_decay, convolution_representation,
                        diagonal_decay, random_tensor, reconstruction_error, theorem31_check)
from ..compactness import (diagonal_model, persson_check, theorem41_check, theorem43_steps,
                           theorem51_ordered_variant, theorem52_check)
from ..couples import FiniteCouple, WeightedNorm, l1_linf, random_couple
from ..interp import InterpolationSpec, equivalence_check, k_method_norms
from ..oracles import k_conic, k_grid, k_rearrangement, one_hot_power_norm
from ..params import boyd_indices, classify, power
from ..reports import CheckReport
from ..seqspaces import (DeltaNormFamily, SequenceCouple, VectorSequence, cutting,
                         cutting_norm_bounds, embedding_check, one_hot, theorem21_check)
from .config import ConfigError, parse_params

__all__ = ["SUITE", "SuiteCheck", "constant_keys", "run_check", "run_suite",
           "determinism_report"]


def _qname(q: float) -> str:
    return "inf" if math.isinf(q) else f"{q:g}"


def _finish(name, params, seed, constants, keys, measured, ok, extra, rows, tables=None,
            notes=()):
    """Aggregate report; the summary pair is the tightest constant."""
    used = {}
    if constants is not None:
        for k in keys:
            used[k] = constants.get(k)
            ok = ok and measured[k] <= used[k]
    if used:
        def slack(k):
            if used[k] > 0:
                return measured[k] / used[k]
            return 0.0 if measured[k] == 0 else math.inf

        k = max(used, key=slack)
        constant, worst = used[k], measured[k]
    else:
        constant, worst = extra.pop("constant", None), extra.pop("worst_ratio", None)
    rep = CheckReport(
        name, dict(params=asdict(params), seed=seed), used, rows, bool(ok),
        dict(constant=constant, worst_ratio=worst, measured=measured, **extra),
    )
    rep.tables.update(tables or {})
    rep.notes.extend(notes)
    return rep


# ---------------------------------------------------------------------------
# 1. K-functional against independent oracles


@dataclass(frozen=True)
class KOracleParams:
    cases: int = 500
    max_dim: int = 6
    grid_max_dim: int = 3
    rel_tol: float = 1e-6
    closed_cases: int = 500
    closed_tol: float = 1e-9


def k_oracle(p: KOracleParams, seed, constants=None):
    if not 1 <= p.max_dim <= 6 or p.grid_max_dim > 3:
        raise ConfigError("k_oracle supports dim <= 6 and grid oracle dim <= 3")
    cases = []
    for i in range(p.cases):
        c = random_couple(rng_mod.stream(seed, "k_oracle.couple", i), max_dim=p.max_dim)
        g = rng_mod.stream(seed, "k_oracle.x", i)
        x = g.normal(size=c.dim) * np.exp(g.uniform(-1, 1, c.dim))
        t = float(np.exp(g.uniform(-3, 3)))
        cases.append((c, x, t))
    prod = rng_mod.parallel_map(lambda a: float(a[0].k_many(a[1][None, :], [a[2]])[0, 0]),
                                cases)
    rows, worst_conic, worst_grid = [], 0.0, 0.0
    for i, ((c, x, t), kv) in enumerate(zip(cases, prod)):
        conic = k_conic(c, x, t)
        e_c = abs(kv - conic) / conic
        grid = k_grid(c, x, t) if c.dim <= p.grid_max_dim else None
        e_g = abs(kv - grid) / grid if grid is not None else None
        worst_conic = max(worst_conic, e_c)
        if e_g is not None:
            worst_grid = max(worst_grid, e_g)
        rows.append(dict(index=i, dim=c.dim, p0=c.norm0.p, p1=c.norm1.p, t=t, k=kv,
                         conic=conic, grid=grid, rel_conic=e_c, rel_grid=e_g))
    worst_closed = 0.0
    for i in range(p.closed_cases):
        g = rng_mod.stream(seed, "k_oracle.closed", i)
        n = int(g.integers(1, 7))
        x = g.normal(size=n)
        # integer t exercise the breakpoints of the rearrangement formula
        t = float(g.integers(1, n + 2)) if i % 4 == 0 else float(np.exp(g.uniform(-2, 2.5)))
        ref = k_rearrangement(x, t)
        kv = float(l1_linf(n).k_many(x[None, :], [t])[0, 0])
        worst_closed = max(worst_closed, abs(kv - ref) / ref)
    ok = worst_conic <= p.rel_tol and worst_grid <= p.rel_tol and worst_closed <= p.closed_tol
    worst = max(worst_conic, worst_grid)
    return _finish("k_oracle", p, seed, None, (), {}, ok,
                   dict(constant=p.rel_tol, worst_ratio=worst, worst_rel_conic=worst_conic,
                        worst_rel_grid=worst_grid, worst_rel_closed=worst_closed,
                        grid_cases=sum(r["grid"] is not None for r in rows)), rows)


# ---------------------------------------------------------------------------
# 2. K-functional properties


@dataclass(frozen=True)
class KPropertiesParams:
    instances: int = 1000
    max_dim: int = 6
    tol: float = 1e-9


def k_properties(p: KPropertiesParams, seed, constants=None):
    def one(i):
        c = random_couple(rng_mod.stream(seed, "k_properties.couple", i), max_dim=p.max_dim)
        g = rng_mod.stream(seed, "k_properties.draw", i)
        x = g.normal(size=c.dim) * np.exp(g.uniform(-1, 1, c.dim))
        y = g.normal(size=c.dim) * np.exp(g.uniform(-1, 1, c.dim))
        lam = float(g.choice([-1, 1]) * np.exp(g.uniform(-3, 3)))
        ts = np.sort(np.exp(g.uniform(-4, 4, 3)))
        K = c.k_many(np.stack([x, y, x + y, lam * x]), ts)
        kx, ky, kxy, klx = K
        tol = p.tol
        v = {}
        # nondecreasing in t, and K(t)/t nonincreasing
        v["monotone"] = max(0.0, (kx[0] - kx[1]) / kx[1], (kx[1] - kx[2]) / kx[2])
        v["t_scaling"] = max(0.0, (kx[2] / ts[2] - kx[1] / ts[1]) / (kx[1] / ts[1]))
        w = (ts[2] - ts[1]) / (ts[2] - ts[0])
        chord = w * kx[0] + (1 - w) * kx[2]
        v["concave"] = max(0.0, (chord - kx[1]) / kx[1])
        v["homogeneous"] = float(np.max(np.abs(klx - abs(lam) * kx) / (abs(lam) * kx)))
        v["triangle"] = float(max(0.0, np.max((kxy - kx - ky) / (kx + ky))))
        return {k: float(e) for k, e in v.items()}, {k: bool(e > tol) for k, e in v.items()}

    res = rng_mod.parallel_map(one, range(p.instances))
    props = ("monotone", "t_scaling", "concave", "homogeneous", "triangle")
    violations = {k: int(sum(r[1][k] for r in res)) for k in props}
    worst = {k: max(r[0][k] for r in res) for k in props}
    rows = [dict(property=k, violations=violations[k], worst_excess=worst[k]) for k in props]
    ok = all(v == 0 for v in violations.values())
    return _finish("k_properties", p, seed, None, (), {}, ok,
                   dict(constant=p.tol, worst_ratio=max(worst.values()),
                        violations=violations), rows)


# ---------------------------------------------------------------------------
# 3. Boyd indices and class membership


@dataclass(frozen=True)
class BoydClassParams:
    thetas: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    index_tol: float = 1e-3
    integral_theta: float = 0.5
    integral_expected: float = 4.0
    integral_tol: float = 1e-3


def boyd_class(p: BoydClassParams, seed, constants=None):
    rows, worst = [], 0.0
    ok = True
    for th in p.thetas:
        b = boyd_indices(power(th))
        err = max(abs(b.alpha - th), abs(b.beta - th))
        worst = max(worst, err)
        acc = classify(power(th)).in_Bpm is True
        ok &= err <= p.index_tol and acc
        rows.append(dict(theta=th, alpha=b.alpha, beta=b.beta, error=err, in_Bpm=acc))
    ends = {th: classify(power(th)).in_Bpm for th in (0.0, 1.0)}
    rejected = all(v is False for v in ends.values())
    integral = classify(power(p.integral_theta)).integral_value
    int_err = abs(integral - p.integral_expected)
    ok = ok and rejected and int_err <= p.integral_tol
    return _finish("boyd_class", p, seed, None, (), {}, ok,
                   dict(constant=p.index_tol, worst_ratio=worst, endpoints_rejected=rejected,
                        endpoint_in_Bpm={str(k): v for k, v in ends.items()},
                        integral=integral, integral_error=int_err), rows)


# ---------------------------------------------------------------------------
# 4. J/K equivalence


@dataclass(frozen=True)
class EquivalenceParams:
    thetas: tuple[float, ...] = (0.3, 0.5, 0.7)
    qs: tuple[float, ...] = (1.0, 2.0, math.inf)
    samples: int = 200
    W: int = 16
    w0: tuple[float, ...] = (1.0, 2.0, 0.5, 1.5)
    w1: tuple[float, ...] = (0.3, 1.0, 2.0, 0.7)
    degenerate_samples: int = 50
    degenerate_tol: float = 1e-6

    def __post_init__(self):
        if len(self.w0) != len(self.w1):
            raise ValueError("w0 and w1 must have the same length")


def equivalence_keys(p: EquivalenceParams):
    return [f"equivalence.theta={th:g}.q={_qname(q)}" for th in p.thetas for q in p.qs]


def equivalence_suite(p: EquivalenceParams, seed, constants=None):
    c = l1_linf(len(p.w0), np.array(p.w0), np.array(p.w1))
    n = len(p.w0)
    deg = FiniteCouple(WeightedNorm(np.array(p.w0), 2.0), WeightedNorm(3.0 * np.array(p.w0), 2.0))
    measured, rows, ok = {}, [], True
    deg_worst = 0.0
    for th in p.thetas:
        for q in p.qs:
            key = f"equivalence.theta={th:g}.q={_qname(q)}"
            r = equivalence_check(c, power(th), q, p.W, p.samples,
                                  rng_mod.derive_seed(seed, key))
            measured[key] = r.summary["worst_ratio"]
            ok &= r.passed
            d = equivalence_check(deg, power(th), q, p.W, p.degenerate_samples,
                                  rng_mod.derive_seed(seed, "degenerate", key))
            dev = d.summary["worst_ratio"] - 1.0
            deg_worst = max(deg_worst, dev)
            rows.append(dict(key=key, theta=th, q=q, spread=measured[key],
                             certified_spread=r.summary["certified_spread"],
                             ratio_min=r.summary["ratio_min"], ratio_max=r.summary["ratio_max"],
                             degenerate_spread=d.summary["worst_ratio"]))
    ok = ok and deg_worst <= p.degenerate_tol
    return _finish("equivalence", p, seed, constants, equivalence_keys(p), measured, ok,
                   dict(degenerate_worst=deg_worst, dim=n), rows,
                   dict(spreads=dict(columns=["theta", "q", "spread", "certified_spread"],
                                     rows=[[r["theta"], r["q"], r["spread"],
                                            r["certified_spread"]] for r in rows])))


# ---------------------------------------------------------------------------
# 5. Sequence spaces: interpolated l^q against l^q_f, and one-hot hand values


@dataclass(frozen=True)
class SequenceParams:
    theta: float = 0.5
    qs: tuple[float, ...] = (1.0, 2.0, math.inf)
    samples: int = 200
    M: int = 8
    W: int = 16
    w0: tuple[float, ...] = (1.0, 2.0, 0.5)
    w1: tuple[float, ...] = (0.3, 1.0, 2.0)
    hand_tol: float = 1e-9

    def __post_init__(self):
        if len(self.w0) != len(self.w1):
            raise ValueError("w0 and w1 must have the same length")


def sequence_keys(p: SequenceParams):
    return [f"{k}.q={_qname(q)}" for q in p.qs for k in ("theorem21", "embedding")]


def sequence_spaces(p: SequenceParams, seed, constants=None):
    c = l1_linf(len(p.w0), np.array(p.w0), np.array(p.w1))
    rho = power(p.theta)
    measured, rows, ok = {}, [], True
    for q in p.qs:
        k21, kem = f"theorem21.q={_qname(q)}", f"embedding.q={_qname(q)}"
        r = theorem21_check(c, rho, q, p.W, p.samples, rng_mod.derive_seed(seed, k21), M=p.M)
        e = embedding_check(c, rho, q, p.W, p.samples, rng_mod.derive_seed(seed, kem), M=p.M)
        measured[k21] = r.summary["worst_ratio"]
        measured[kem] = e.summary["worst_ratio"]
        ok &= r.passed and e.passed
        rows.append(dict(q=q, theorem21_spread=measured[k21], embedding_C=measured[kem]))
    # one-hot sequences against closed-form geometric sums
    delta = DeltaNormFamily(c)
    g = rng_mod.stream(seed, "sequence.one_hot")
    hand_worst = 0.0
    for q in p.qs:
        sc = SequenceCouple(delta, p.M, c.dim, p=q)
        spec = InterpolationSpec(rho, q, "K", p.W)
        for m in range(-p.M, p.M + 1):
            u = g.normal(size=c.dim)
            v, _, _ = k_method_norms(sc, spec, one_hot(p.M, m, u).flat()[None, :])
            ref = one_hot_power_norm(p.theta, q, p.W, m, float(delta(m, u)))
            hand_worst = max(hand_worst, abs(float(v[0]) - ref) / ref)
    ok = ok and hand_worst <= p.hand_tol
    return _finish("sequence_spaces", p, seed, constants, sequence_keys(p), measured, ok,
                   dict(one_hot_worst=hand_worst), rows)


# ---------------------------------------------------------------------------
# 6. Cutting operators


@dataclass(frozen=True)
class CuttingParams:
    window: int = 12
    n_max: int = 10
    dim: int = 2
    identity_samples: int = 20


def cutting_suite(p: CuttingParams, seed, constants=None):
    if p.n_max + 1 > p.window:
        raise ConfigError("cutting needs window >= n_max + 1")
    c = l1_linf(p.dim, np.linspace(1.0, 2.0, p.dim), np.linspace(0.5, 1.5, p.dim))
    rows, ok, worst = [], True, 0.0
    for n in range(p.n_max + 1):
        r = cutting_norm_bounds(c, p.window, n)
        s = r.summary
        exact = s["plus_0_to_1"] == 2.0 ** -(n + 1) and s["minus_1_to_0"] == 2.0 ** -(n + 1)
        ok &= r.passed and exact
        worst = max(worst, s["worst_ratio"] * 2.0 ** n)
        rows.append(dict(n=n, expected=2.0 ** -(n + 1), plus_0_to_1=s["plus_0_to_1"],
                         minus_1_to_0=s["minus_1_to_0"], plus_1_to_0=s["plus_1_to_0"],
                         minus_0_to_1=s["minus_0_to_1"], exact=bool(exact)))
    identity = True
    for i in range(p.identity_samples):
        g = rng_mod.stream(seed, "cutting.identity", i)
        seq = VectorSequence(g.normal(size=(2 * p.window + 1, p.dim)))
        for n in range(p.window + 1):
            mid, plus, minus = cutting(seq, n)
            identity &= np.array_equal((mid + plus + minus).entries, seq.entries)
    ok = ok and identity
    return _finish("cutting", p, seed, None, (), {}, ok,
                   dict(constant=1.0, worst_ratio=worst, identity_exact=bool(identity)), rows,
                   dict(norms=dict(columns=["n", "expected", "plus_0_to_1", "minus_1_to_0"],
                                   rows=[[r["n"], r["expected"], r["plus_0_to_1"],
                                          r["minus_1_to_0"]] for r in rows])))


# ---------------------------------------------------------------------------
# 7. Bilinear interpolation bound


_T31_COUPLES = {
    "unit": ((1, 1, 1), (1, 1, 1), (1, 1, 1), (1, 1, 1), (1, 1, 1), (1, 1, 1)),
    "weighted": ((1.0, 2.0, 0.5), (0.5, 1.0, 3.0), (1.5, 0.7, 1.0), (1.0, 0.4, 2.0),
                 (0.8, 1.2, 1.0), (2.0, 1.0, 0.6)),
}


@dataclass(frozen=True)
class Theorem31Params:
    configurations: tuple[str, ...] = ("unit", "weighted")
    tensors: int = 100
    theta: float = 0.5
    p: float = 1.0
    q: float = 1.0
    W: int = 16
    budget: int = 40
    reconstruction_cases: int = 50
    reconstruction_tol: float = 1e-12

    def __post_init__(self):
        bad = set(self.configurations) - set(_T31_COUPLES)
        if bad:
            raise ValueError(f"unknown configurations {sorted(bad)}")


def theorem31_keys(p: Theorem31Params):
    return [f"theorem31.{name}" for name in p.configurations]


def theorem31_suite(p: Theorem31Params, seed, constants=None):
    rho = power(p.theta)
    measured, rows, ok = {}, [], True
    for name in p.configurations:
        w = [np.array(v, dtype=float) for v in _T31_COUPLES[name]]
        cE, cF, cG = l1_linf(3, w[0], w[1]), l1_linf(3, w[2], w[3]), l1_linf(3, w[4], w[5])
        key = f"theorem31.{name}"

        def one(i, key=key, cE=cE, cF=cF, cG=cG):
            s = rng_mod.derive_seed(seed, key, i)
            T = random_tensor((3, 3, 3), s)
            return theorem31_check(T, cE, cF, cG, rho, p.p, p.q, p.W, p.budget, s)

        reps = rng_mod.parallel_map(one, range(p.tensors))
        ratios = [r.summary["worst_ratio"] for r in reps]
        measured[key] = float(max(ratios))
        ok &= all(r.passed for r in reps)
        rows += [dict(configuration=name, tensor=i, ratio=ratios[i],
                      M0=r.measurements[0]["M0"], M1=r.measurements[0]["M1"],
                      lhs=r.measurements[0]["lhs"]) for i, r in enumerate(reps)]
    recon = 0.0
    for i in range(p.reconstruction_cases):
        g = rng_mod.stream(seed, "theorem31.reconstruction", i)
        T = BilinearMap(g.normal(size=tuple(int(v) for v in g.integers(1, 5, size=3))))
        u = VectorSequence(g.normal(size=(2 * int(g.integers(1, 5)) + 1, T.dims[1])))
        v = VectorSequence(g.normal(size=(2 * int(g.integers(1, 5)) + 1, T.dims[2])))
        recon = max(recon, reconstruction_error(T, u, v, convolution_representation(T, u, v)))
    ok = ok and recon <= p.reconstruction_tol
    return _finish("theorem31", p, seed, constants, theorem31_keys(p), measured, ok,
                   dict(reconstruction_error=recon), rows,
                   dict(ratios=dict(columns=["configuration", "tensor", "ratio"],
                                    rows=[[r["configuration"], r["tensor"], r["ratio"]]
                                          for r in rows])))


# ---------------------------------------------------------------------------
# 8. Cauchy transfer and covering numbers


@dataclass(frozen=True)
class Theorem41Params:
    N: int = 32
    alpha: float = 0.5
    theta: float = 0.5
    q: float = 1.0
    W: int = 16
    samples: int = 1024
    pairs: int = 1024


def theorem41_suite(p: Theorem41Params, seed, constants=None):
    spec = InterpolationSpec(power(p.theta), p.q, "K", p.W)
    r = theorem41_check(diagonal_decay(p.N, p.alpha), l1_linf(p.N), spec, p.samples,
                        seed=rng_mod.derive_seed(seed, "theorem41"), pairs=p.pairs)
    s = r.summary
    rep = _finish("theorem41", p, seed, None, (), {}, r.passed,
                  dict(constant=s["constant"], worst_ratio=s["worst_ratio"],
                       pair_ok=s["pair_ok"], transfer_ok=s["transfer_ok"],
                       modulus_ok=s["modulus_ok"], M1=s["M1"],
                       class_J_fitted=s["class_J_fitted"], C_theory=r.constants["C_theory"]),
                  r.measurements, r.tables)
    return rep


# ---------------------------------------------------------------------------
# 9. Step trajectories of the eight cut terms


@dataclass(frozen=True)
class StepsParams:
    M: int = 24
    alpha: float = 2.5
    theta: float = 0.5
    W: int = 16
    m_max: int = 16
    presets: tuple[str, ...] = ("diagonal", "convolution")
    orderings: tuple[str, ...] = ("statement", "remark")
    tol: float = 1e-3

    def __post_init__(self):
        bad = set(self.presets) - {"diagonal", "convolution"}
        if bad:
            raise ValueError(f"unknown presets {sorted(bad)}")
        if self.m_max > self.M - 1:
            raise ValueError("m_max must be below the sequence window M")


def steps_keys(p: StepsParams):
    return [f"theorem43.{t}" for t in p.presets] + \
        [f"theorem51.{t}.{o}" for t in p.presets for o in p.orderings]


def _step_tensor(name, M, alpha):
    if name == "diagonal":
        return diagonal_decay(2 * M + 1, alpha, offset=M)
    return convolution_decay(M, alpha)


def steps_suite(p: StepsParams, seed, constants=None):
    rho = power(p.theta)
    sc = SequenceCouple(DeltaNormFamily(l1_linf(1)), p.M, 1, p=1.0)
    m_grid = range(p.m_max + 1)
    measured, rows, ok, traj = {}, [], True, []

    def C_for(key):
        return None if constants is None else constants.get(key)

    for name in p.presets:
        T = _step_tensor(name, p.M, p.alpha)
        key = f"theorem43.{name}"
        r = theorem43_steps(T, sc, sc, rho, 1.0, 1.0, p.W, m_grid, 0,
                            rng_mod.derive_seed(seed, key), C=C_for(key), tol=p.tol)
        runs = [(key, r)]
        L = T.dims[0]
        s = np.arange(L) - (L - 1) // 2
        cG = l1_linf(L, np.ones(L), np.exp2(-np.abs(s) / 2.0))
        for o in p.orderings:
            key = f"theorem51.{name}.{o}"
            runs.append((key, theorem51_ordered_variant(
                T, sc, sc, cG, rho, 1.0, 1.0, p.W, m_grid, 0,
                rng_mod.derive_seed(seed, key), ordering=o, C=C_for(key), tol=p.tol)))
        for key, r in runs:
            s = r.summary
            measured[key] = s["worst_ratio"]
            ok &= r.passed
            rows.append(dict(key=key, passed=r.passed, decay_ok=s["decay_ok"],
                             chain_ok=s["chain_ok"], bound_ok=s["bound_ok"], ap_E=s["ap_E"],
                             ap_F=s["ap_F"], ap2=s["ap2"], worst_ratio=s["worst_ratio"],
                             decay=s["decay"]))
            traj += [[key, m, term, v] for m, term, v in r.tables["trajectories"]["rows"]]
    return _finish("steps", p, seed, constants, steps_keys(p), measured, ok, {}, rows,
                   dict(trajectories=dict(columns=["run", "m", "term", "value"], rows=traj)))


# ---------------------------------------------------------------------------
# 10. Entropy profiles at two truncation sizes


@dataclass(frozen=True)
class Theorem52Params:
    dims: tuple[int, ...] = (64, 128)
    alpha: float = 0.5
    theta: float = 0.5
    W: int = 16
    points: int = 1024
    m_max: int = 8
    stability: float = 2.0


def theorem52_suite(p: Theorem52Params, seed, constants=None):
    if len(p.dims) != 2:
        raise ConfigError("theorem52 compares exactly two dimensions")
    models = {n: diagonal_model(n, p.alpha) for n in p.dims}
    r = theorem52_check(models, power(p.theta), 1.0, 1.0, p.W,
                        rng_mod.derive_seed(seed, "theorem52"), points=p.points,
                        m_max=p.m_max, stability=p.stability)
    s = r.summary
    return _finish("theorem52", p, seed, None, (), {}, r.passed,
                   dict(constant=s["constant"], worst_ratio=s["worst_ratio"],
                        nonincreasing=s["nonincreasing"], transfer_ok=s["transfer_ok"],
                        greedy_monotone=s["greedy_monotone"]),
                   r.measurements, r.tables)


# ---------------------------------------------------------------------------
# 11. Persson residuals


@dataclass(frozen=True)
class PerssonParams:
    N: int = 64
    alpha: float = 0.5
    theta: float = 0.5
    W: int = 16
    samples: int = 512
    tol: float = 1e-3


def persson_suite(p: PerssonParams, seed, constants=None):
    c = FiniteCouple(WeightedNorm(np.ones(p.N), 1.0),
                     WeightedNorm(np.exp2(np.arange(p.N, dtype=float)), 1.0))
    C = None if constants is None else constants.get("persson")
    r = persson_check(diagonal_decay(p.N, p.alpha), c, c, l1_linf(p.N), power(p.theta),
                      1.0, 1.0, p.W, samples=p.samples,
                      seed=rng_mod.derive_seed(seed, "persson"), C=C, tol=p.tol)
    s = r.summary
    return _finish("persson", p, seed, constants, ["persson"], {"persson": s["worst_ratio"]},
                   r.passed,
                   dict(decreasing=s["decreasing"], zero_at_dim=s["zero_at_dim"],
                        first_below_tol=s["first_below_tol"], bound_ok=s["bound_ok"],
                        selections=s["selections"]),
                   r.measurements, r.tables)


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class SuiteCheck:
    name: str
    params: type
    fn: object
    keys: object = None
    criterion: int = 0
    title: str = ""


SUITE = {s.name: s for s in (
    SuiteCheck("k_oracle", KOracleParams, k_oracle, None, 1, "K-functional oracle equivalence"),
    SuiteCheck("k_properties", KPropertiesParams, k_properties, None, 2, "K-functional properties"),
    SuiteCheck("boyd_class", BoydClassParams, boyd_class, None, 3, "Boyd indices and classes"),
    SuiteCheck("equivalence", EquivalenceParams, equivalence_suite, equivalence_keys, 4,
               "J/K equivalence"),
    SuiteCheck("sequence_spaces", SequenceParams, sequence_spaces, sequence_keys, 5,
               "sequence spaces and embedding"),
    SuiteCheck("cutting", CuttingParams, cutting_suite, None, 6, "cutting operators"),
    SuiteCheck("theorem31", Theorem31Params, theorem31_suite, theorem31_keys, 7,
               "bilinear interpolation bound"),
    SuiteCheck("theorem41", Theorem41Params, theorem41_suite, None, 8,
               "Cauchy and covering transfer"),
    SuiteCheck("steps", StepsParams, steps_suite, steps_keys, 9, "cut-term trajectories"),
    SuiteCheck("theorem52", Theorem52Params, theorem52_suite, None, 10,
               "entropy profile stability"),
    SuiteCheck("persson", PerssonParams, persson_suite, lambda p: ["persson"], 11,
               "Persson residuals"),
)}


def constant_keys(name: str, params) -> list:
    s = SUITE[name]
    return [] if s.keys is None else list(s.keys(params))


def run_check(name: str, params, seed: int, constants=None) -> CheckReport:
    """Run one suite check; constants are required when the check has keys."""
    s = SUITE[name]
    if constants is None and constant_keys(name, params):
        raise ConfigError(f"check {name!r} needs a constants file")
    return s.fn(params, seed, constants)


def suite_params(overrides: dict):
    unknown = set(overrides) - set(SUITE)
    if unknown:
        raise ConfigError(f"unknown suite checks: {sorted(unknown)}")
    return {n: parse_params(s.params, overrides.get(n, {})) for n, s in SUITE.items()}


def determinism_report(first: list, second: list, workers: tuple, seed: int) -> CheckReport:
    rows, same = [], True
    for a, b in zip(first, second):
        eq = a.to_json() == b.to_json()
        same &= eq
        rows.append(dict(check=a.check, identical=bool(eq)))
    same = same and len(first) == len(second)
    return CheckReport("determinism", dict(workers=list(workers), seed=seed), {}, rows, bool(same),
                       dict(constant=None, worst_ratio=None, identical=bool(same),
                            compared=len(rows)))


def run_suite(seed: int, constants, overrides=None, alt_workers: int = 3, progress=None):
    """All twelve reports: eleven checks, then the determinism comparison of a
    second full run at a different worker count."""
    params = suite_params(overrides or {})

    def once(n):
        out = []
        with rng_mod.using_workers(n):
            for name in SUITE:
                if progress:
                    progress(name, n)
                out.append(run_check(name, params[name], seed, constants))
        return out

    first = once(1)
    second = once(alt_workers)
    return first + [determinism_report(first, second, (1, alt_workers), seed)]

"""Covering numbers of sampled image clouds and the compactness harnesses.

Compactness of a finite-dimensional model is automatic, so every check here
measures a quantitative footprint instead: covering radii and entropy
numbers of sampled images, moduli of continuity, and residual Bil-norm
trajectories of truncated operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import rng as rng_mod
from .bilinear import BilinearMap, bil_norm, exponent_r
from .couples import FiniteCouple, WeightedNorm
from .interp import InterpolationSpec, class_J_check, k_method_norms, lq
from .params import FunctionParameter, PreconditionError, classify, dilation, gamma_from_rho
from .reports import CheckReport
from .seqspaces import SequenceCouple, VectorSequence, cutting, cutting_norm_bounds

__all__ = [
    "PointCloud",
    "FarthestPoint",
    "CoveringProfile",
    "farthest_point",
    "covering_number",
    "packing_lb",
    "covering_profile",
    "ball_samples",
    "image_cloud",
    "class_j_constant",
    "modulus",
    "lemma42_witness",
    "theorem41_check",
    "theorem43_steps",
    "theorem51_ordered_variant",
    "theorem52_check",
    "persson_check",
    "TERMS",
]


# ---------------------------------------------------------------------------
# clouds and covers


@dataclass(frozen=True, eq=False)
class PointCloud:
    points: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        p = np.array(self.points, dtype=float)
        if p.ndim != 2:
            raise ValueError("points must be an (n, dim) array")
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    def __len__(self):
        return self.points.shape[0]

    def scaled(self, a: float) -> "PointCloud":
        return PointCloud(a * self.points, dict(self.provenance, scale=a))


@dataclass(frozen=True)
class FarthestPoint:
    """Greedy k-center run.

    ``radii[k-1]`` is the covering radius of the first k centers; the
    centers are pairwise at least ``radii[k-2]`` apart.  ``snapshots`` maps a
    requested center count to the nearest-center assignment at that count.
    """

    centers: np.ndarray
    radii: np.ndarray
    complete: bool
    snapshots: dict


def _dist(norm, D):
    return np.asarray(norm(D), dtype=float).reshape(-1)


def farthest_point(points, norm, k_max=None, stop_radius=0.0, snapshot_at=()) -> FarthestPoint:
    """Farthest-point traversal from point 0; ties go to the lowest index."""
    P = np.asarray(points, dtype=float)
    n = P.shape[0]
    if n == 0:
        return FarthestPoint(np.zeros(0, int), np.zeros(0), True, {})
    k_max = n if k_max is None else min(int(k_max), n)
    want = set(int(k) for k in snapshot_at)
    centers = [0]
    d = _dist(norm, P - P[0])
    assign = np.zeros(n, dtype=int)
    radii = [float(d.max())]
    snaps = {}
    if 1 in want:
        snaps[1] = assign.copy()
    while len(centers) < k_max and radii[-1] > stop_radius:
        j = int(np.argmax(d))
        centers.append(j)
        dj = _dist(norm, P - P[j])
        closer = dj < d
        assign[closer] = len(centers) - 1
        d = np.where(closer, dj, d)
        d[j] = 0.0
        radii.append(float(d.max()))
        if len(centers) in want:
            snaps[len(centers)] = assign.copy()
    complete = radii[-1] <= stop_radius or len(centers) == n
    # counts past the end of the run reuse the final assignment
    for k in want:
        if k > len(centers):
            snaps[k] = assign.copy()
    return FarthestPoint(np.array(centers), np.array(radii), bool(complete), snaps)


def _count_from_radii(radii, eps):
    # smallest k with radii[k-1] <= eps
    idx = np.nonzero(radii <= eps)[0]
    return int(idx[0] + 1) if idx.size else None


def covering_number(cloud: PointCloud, norm, epsilon: float) -> int:
    """Greedy cover count at radius epsilon (centers taken from the cloud)."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if len(cloud) == 0:
        return 0
    fp = farthest_point(cloud.points, norm, stop_radius=epsilon)
    return _count_from_radii(fp.radii, epsilon)


def packing_lb(cloud: PointCloud, norm, epsilon: float) -> int:
    """Lower bound on the covering number at radius epsilon.

    Greedy centers at count G(2 eps) are pairwise more than 2 eps apart, so
    no eps-ball (with any center) holds two of them.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if len(cloud) == 0:
        return 0
    fp = farthest_point(cloud.points, norm, stop_radius=2 * epsilon)
    return _count_from_radii(fp.radii, 2 * epsilon)


@dataclass(frozen=True)
class CoveringProfile:
    """Greedy counts over a decreasing epsilon grid and entropy numbers.

    ``counts[i]`` is None when the run stopped (k_max) before reaching
    ``epsilons[i]``; ``entropy_numbers[m-1]`` is the greedy radius with
    2^(m-1) centers.
    """

    epsilons: tuple
    counts: tuple
    packing_lb: tuple
    entropy_numbers: tuple

    def rows(self):
        return [[e, c, p] for e, c, p in zip(self.epsilons, self.counts, self.packing_lb)]


def default_eps_grid(radius: float, octaves: int = 10):
    return tuple(radius * 2.0**-k for k in range(octaves + 1))


def covering_profile(cloud: PointCloud, norm, eps_grid=None, m_max: int = 10,
                     k_max=None) -> CoveringProfile:
    n = len(cloud)
    if n == 0:
        return CoveringProfile((), (), (), ())
    k_need = 2 ** (m_max - 1)
    k_max = max(k_need, n if k_max is None else k_max)
    fp = farthest_point(cloud.points, norm, k_max=min(k_max, n))
    radii = fp.radii
    if eps_grid is None:
        eps_grid = default_eps_grid(radii[0])
    eps = tuple(sorted((float(e) for e in eps_grid), reverse=True))
    counts = tuple(_count_from_radii(radii, e) for e in eps)
    packs = tuple(_count_from_radii(radii, 2 * e) for e in eps)
    ent = tuple(_entropy(radii, m) for m in range(1, m_max + 1))
    return CoveringProfile(eps, counts, packs, ent)


def _entropy(radii, m):
    k = 2 ** (m - 1)
    if k <= radii.size:
        return float(radii[k - 1])
    return 0.0 if radii[-1] == 0 else None


# ---------------------------------------------------------------------------
# sampling


def ball_samples(seed, tag, n: int, dim: int, norm_fn, decay: float = 0.25) -> np.ndarray:
    """n points in the unit ball of ``norm_fn`` (an upper bound of the norm).

    Half the raw vectors are sparse with geometrically distributed support,
    half are dense with geometrically decaying scales.  Draws are ordered so
    that the first coordinates agree across dimensions for the same seed.
    """
    X = np.zeros((n, dim))
    for i in range(n):
        g = rng_mod.stream(seed, tag, i)
        if g.random() < 0.5:
            k = int(g.integers(1, 4))
            idx = np.minimum(g.geometric(1.0 - 2.0**-decay, size=k) - 1, 10**9)
            vals = g.normal(size=k)
            for j, v in zip(idx, vals):
                if j < dim:
                    X[i, j] += v
            if not np.any(X[i]):
                X[i, 0] = 1.0
        else:
            s = np.exp(g.uniform(-1.0, 1.0))
            X[i] = s * g.normal(size=dim) * np.exp2(-decay * np.arange(dim))
    nrm = np.asarray(norm_fn(X), dtype=float)
    return X / nrm[:, None]


def image_cloud(T: BilinearMap, X, Y, provenance=None) -> PointCloud:
    return PointCloud(T.apply(X, Y), provenance or {})


def _interp_norm_fn(c, spec, with_tail=False):
    def f(X):
        v, t, _ = k_method_norms(c, spec, X)
        return v + t if with_tail else v
    return f


# ---------------------------------------------------------------------------
# class J constant and modulus


def class_j_constant(spec: InterpolationSpec, per_octave: int = 64, extra: int = 24) -> float:
    """sup_s ||(rho(2^n)^-1 min(1, 2^n s))_(|n|<=W)||_q / rho_bar(s).

    The windowed K-norm satisfies ||u|| <= ||u||_0 * that sum with
    s = ||u||_1 / ||u||_0, so the supremum is a class-J constant for it.  The
    supremum over each grid cell is bounded with the numerator at the right
    end and rho_bar at the left end (both nondecreasing).
    """
    W = spec.window
    j = np.arange(-(W + extra) * per_octave, (W + extra) * per_octave + 2)
    s = np.exp2(j / per_octave)
    w = spec.level_weights
    num = lq(w[None, :] * np.minimum(1.0, spec.ts[None, :] * s[:, None]), spec.q)
    rb = dilation(spec.rho, s)
    return float(np.max(num[1:] / rb[:-1]))


def modulus(rho: FunctionParameter, C: float, M1: float, delta):
    """omega(delta) = C delta rho_bar(2 M1 / delta)."""
    d = np.asarray(delta, dtype=float)
    if M1 == 0:
        return C * d
    return C * d * dilation(rho, 2.0 * M1 / d)


# ---------------------------------------------------------------------------
# Lemma 4.2


def lemma42_witness(T_seq, normX, normY, normZ, eps_seq, seed: int = 0):
    """(x_n, y_n, value_n, estimate_n) with value_n >= estimate_n - eps_n.

    The witness of each Bil-norm estimate attains the estimate, so the
    defining inequality holds with slack eps_n.
    """
    out = []
    for n, (T, eps) in enumerate(zip(T_seq, eps_seq)):
        est = bil_norm(T, normX, normY, normZ, seed=seed)
        x, y = est.witness
        value = float(normZ(T.apply(x, y)))
        if value < est.lower - eps:
            raise RuntimeError("witness does not attain its estimate")
        out.append((x, y, value, est.lower))
    return out


# ---------------------------------------------------------------------------
# Theorem 4.1


def theorem41_check(T: BilinearMap, cG: FiniteCouple, G_spec: InterpolationSpec, samples: int,
                    eps_grid=None, seed: int = 0, normE=None, normF=None, pairs: int = 1024,
                    C=None, direct: bool = True) -> CheckReport:
    """Cauchy transfer from G0 to the windowed K-space G of class J_rho."""
    rho = G_spec.rho
    if classify(rho).in_Bpm is not True:
        raise PreconditionError("theorem41_check needs a parameter in B+-")
    L, N, M = T.dims
    normE = WeightedNorm(np.ones(N), 1.0) if normE is None else normE
    normF = WeightedNorm(np.ones(M), 1.0) if normF is None else normF
    gnorm = _interp_norm_fn(cG, G_spec)
    cj = class_J_check(gnorm, cG, rho, samples=200, seed=seed)
    if not cj.passed:
        raise PreconditionError("target norm failed the class J check")
    C_theory = class_j_constant(G_spec)
    C_used = C_theory if C is None else float(C)
    M1 = bil_norm(T, normE, normF, cG.norm1, seed=seed).lower

    X = ball_samples(seed, "theorem41.x", samples, N, normE)
    Y = ball_samples(seed, "theorem41.y", samples, M, normF)
    cloud = image_cloud(T, X, Y, dict(check="theorem41", samples=samples, seed=seed))
    Z = cloud.points

    # pair test on random differences
    g = rng_mod.stream(seed, "theorem41.pairs")
    I = g.integers(0, samples, size=pairs)
    J = g.integers(0, samples, size=pairs)
    U = Z[I] - Z[J]
    n0 = np.asarray(cG.norm0(U))
    n1 = np.asarray(cG.norm1(U))
    keep = n0 > 0
    U, n0, n1 = U[keep], n0[keep], n1[keep]
    nG = gnorm(U)
    mid = C_used * n0 * dilation(rho, n1 / n0)
    om = modulus(rho, C_used, M1, n0)
    tol = 1e-9
    pair_ok = bool(np.all(nG <= mid * (1 + tol)) and np.all(mid <= om * (1 + tol)))

    # covering transfer through the G0 centers
    fp0 = farthest_point(Z, cG.norm0, k_max=samples)
    radius0 = float(fp0.radii[0])
    deltas = default_eps_grid(radius0) if eps_grid is None else tuple(
        sorted((float(e) for e in eps_grid), reverse=True))
    counts = [_count_from_radii(fp0.radii, d) for d in deltas]
    snaps = farthest_point(Z, cG.norm0, k_max=max(counts), snapshot_at=counts).snapshots
    omegas = modulus(rho, C_used, M1, np.array(deltas))
    rows, transfer_ok = [], True
    for d, k, w in zip(deltas, counts, omegas):
        a = snaps[k]
        centers = fp0.centers[:k]
        rG = float(np.max(gnorm(Z - Z[centers[a]])))
        ok = rG <= w * (1 + tol)
        transfer_ok &= ok
        rows.append(dict(delta=d, count_G0=k, omega=float(w), transferred_radius_G=rG,
                         transfer_ok=bool(ok)))
    if direct:
        kmax = max(counts)
        fpG = farthest_point(Z, gnorm, k_max=kmax, stop_radius=float(omegas.min()))
        for r in rows:
            r["direct_count_G"] = _count_from_radii(fpG.radii, r["omega"])
    om_arr = np.asarray(omegas)
    # omega must shrink along the decreasing delta grid
    modulus_ok = bool(np.all(np.diff(om_arr) < 0) and om_arr[-1] < om_arr[0])
    rb = dilation(rho, 2.0 * M1 / np.array(deltas)) / (2.0 * M1 / np.array(deltas)) \
        if M1 > 0 else np.zeros(len(deltas))
    rep = CheckReport(
        "theorem41",
        dict(T=T.coeffs, cG=cG.to_config(), rho=rho.to_config(), q=G_spec.q,
             W=G_spec.window, samples=samples, eps_grid=eps_grid, seed=seed, pairs=pairs),
        {"C": C_used, "C_theory": C_theory},
        rows,
        bool(pair_ok and transfer_ok and modulus_ok),
        dict(constant=C_used, worst_ratio=float(np.max(nG / mid)) if nG.size else 0.0,
             pair_ok=pair_ok, transfer_ok=bool(transfer_ok), modulus_ok=modulus_ok, M1=M1,
             class_J_fitted=cj.summary["fitted_C"]),
    )
    rep.tables["covering"] = dict(
        columns=["epsilon", "count", "omega", "transferred_radius_G"],
        rows=[[r["delta"], r["count_G0"], r["omega"], r["transferred_radius_G"]] for r in rows])
    rep.tables["modulus"] = dict(columns=["delta", "omega", "rho_bar_ratio"],
                                 rows=[[d, w, x] for d, w, x in zip(deltas, omegas, rb)])
    return rep


# ---------------------------------------------------------------------------
# Theorem 4.3 / 5.1: residual trajectories of the eight cut terms

TERMS = (("+", "+"), ("+", "-"), ("-", "+"), ("-", "-"),
         ("+", "0"), ("-", "0"), ("0", "+"), ("0", "-"))


def _term_name(a, b):
    name = {"+": "P+", "-": "P-", "0": "P"}
    return f"T({name[a]},{name[b].replace('P', 'Q')})"


def _masks(idx, m, support):
    s = np.ones(idx.size, bool) if support is None else support
    return {"+": (idx >= m + 1) & s, "-": (idx <= -m - 1) & s, "0": (np.abs(idx) <= m) & s}


def _support(idx, kind):
    if kind in (None, "full"):
        return np.ones(idx.size, bool)
    if kind == "nonneg":
        return idx >= 0
    if kind == "nonpos":
        return idx <= 0
    raise ValueError(f"unknown support {kind!r}")


def _seq_weights(sc: SequenceCouple):
    """Endpoint weights of one-hot positions (block dimension 1)."""
    if sc.dim_block != 1:
        raise ValueError("the step harness needs scalar blocks (dim_block = 1)")
    idx = sc.indices
    g = sc.blocks(idx, np.ones((idx.size, 1)))
    return idx, {0: g.copy(), 1: g * np.exp2(-idx.astype(float))}


def _onehot_interp(sc: SequenceCouple, spec: InterpolationSpec):
    E = np.eye(sc.dim)
    v, t, _ = k_method_norms(sc, spec, E)
    return v, v + t


def _bil_onehot(tau, a, b, maskA, maskB):
    """max tau_kl / (a_k b_l) over masked one-hot pairs."""
    if not maskA.any() or not maskB.any():
        return 0.0
    sub = tau[np.ix_(maskA, maskB)] / (a[maskA][:, None] * b[maskB][None, :])
    return float(sub.max())


def _h(rho, x, y):
    """x rho_bar(y / x), with 0 at x = 0."""
    if x <= 0:
        return 0.0
    return float(x * dilation(rho, y / x)) if y > 0 else 0.0


def _steps(T, cE, cF, rho, p, q, W, m_grid, budget, seed, target, C, tol, supports, check):
    gamma = gamma_from_rho(rho)
    specE = InterpolationSpec(gamma, p, "K", W)
    specF = InterpolationSpec(rho, q, "K", W)
    idxE, aE = _seq_weights(cE)
    idxF, aF = _seq_weights(cF)
    supE = _support(idxE, supports[0])
    supF = _support(idxF, supports[1])
    lamE_val, lamE = _onehot_interp(cE, specE)
    lamF_val, lamF = _onehot_interp(cF, specF)

    # images of one-hot pairs and their target norms
    P = np.einsum("lkj->kjl", T.coeffs)
    flat = P.reshape(-1, P.shape[-1])
    nE, nF = idxE.size, idxF.size
    tau = {k: np.asarray(target[k](flat)).reshape(nE, nF) for k in (0, 1, "interp")}

    full = np.ones(nE, bool), np.ones(nF, bool)
    # Bil(E_i x F_j -> G_k) of the whole tensor, for the chain routes
    Tbil = {(i, j, k): _bil_onehot(tau[k], aE[i], aF[j], *full)
            for i in (0, 1) for j in (0, 1) for k in (0, 1)}

    def op_norm(w, mask, src, dst):
        m = mask
        return float((w[dst][m] / w[src][m]).max()) if m.any() else 0.0

    g = rng_mod.stream(seed, check)
    rows, traj = [], {t: [] for t in TERMS}
    bound_ok, chain_ok = True, True
    for m in m_grid:
        mE = _masks(idxE, m, supE)
        mF = _masks(idxF, m, supF)
        for a, b in TERMS:
            A, B = mE[a], mF[b]
            measured = _bil_onehot(tau["interp"], lamE, lamF, A, B)
            if not (p == 1 and q == 1) and budget > 0 and measured > 0:
                measured = max(measured, _hill_climb(T, cE, cF, specE, specF, target, A, B,
                                                     budget, g))
            Mk = {k: _bil_onehot(tau[k], aE[k], aF[k], A, B) for k in (0, 1)}
            chain = {}
            for k in (0, 1):
                o = 1 - k
                nA = {k: op_norm(aE, A, k, k), o: op_norm(aE, A, k, o)}
                nB = {k: op_norm(aF, B, k, k), o: op_norm(aF, B, k, o)}
                routes = [Tbil[(i, j, k)] * nA[i] * nB[j] for i in (k, o) for j in (k, o)]
                chain[k] = min(routes)
            interp_bound = C * _h(rho, Mk[0], Mk[1]) if C is not None else None
            chain_bound = C * _h(rho, chain[0], chain[1]) if C is not None else None
            ok_chain = all(Mk[k] <= chain[k] * (1 + 1e-9) + 1e-300 for k in (0, 1))
            chain_ok &= ok_chain
            if C is not None:
                ok_b = (measured <= interp_bound * (1 + 1e-9) + 1e-300
                        and measured <= chain_bound * (1 + 1e-9) + 1e-300)
                bound_ok &= ok_b
            ratio = measured / _h(rho, Mk[0], Mk[1]) if Mk[0] > 0 else 0.0
            traj[(a, b)].append(measured)
            rows.append(dict(m=int(m), term=_term_name(a, b), value=measured, M0=Mk[0],
                             M1=Mk[1], chain0=chain[0], chain1=chain[1],
                             interp_bound=interp_bound, chain_bound=chain_bound,
                             ratio=ratio))
    decay = {}
    for t, v in traj.items():
        v0, vl = v[0], v[-1]
        decay[_term_name(*t)] = dict(initial=v0, final=vl, ok=bool(vl <= tol * v0))
    decay_ok = all(d["ok"] for d in decay.values())
    ap = {}
    for name, sc in (("E", cE), ("F", cF)):
        reps = [cutting_norm_bounds(sc.blocks.couple, sc.window, int(n)) for n in m_grid
                if n + 1 <= sc.window]
        ap[name] = bool(all(r.passed for r in reps))
    ap2 = _ap2_identity(cE, seed)
    worst = max((r["ratio"] for r in rows), default=0.0)
    return rows, dict(decay=decay, decay_ok=decay_ok, chain_ok=bool(chain_ok),
                      bound_ok=bool(bound_ok), ap_E=ap["E"], ap_F=ap["F"], ap2=ap2,
                      worst_ratio=worst, gamma=gamma.to_config())


def _ap2_identity(sc: SequenceCouple, seed):
    g = rng_mod.stream(seed, "ap2")
    seq = VectorSequence(g.normal(size=(2 * sc.window + 1, sc.dim_block)))
    for n in range(sc.window + 1):
        mid, plus, minus = cutting(seq, n)
        if not np.array_equal((mid + plus + minus).entries, seq.entries):
            return False
    return True


def _hill_climb(T, cE, cF, specE, specF, target, A, B, budget, g):
    """Sampled lower bound over masked inputs for q > 1 interpolation."""
    nE, nF = A.size, B.size

    def ratios(X, Y):
        Z = T.apply(X, Y)
        num = target["interp"](Z)
        ev, et, _ = k_method_norms(cE, specE, X)
        fv, ft, _ = k_method_norms(cF, specF, Y)
        return num / ((ev + et) * (fv + ft))

    X = g.normal(size=(32, nE)) * A
    Y = g.normal(size=(32, nF)) * B
    r = ratios(X, Y)
    k = int(np.argmax(r))
    best, bx, by = float(r[k]), X[k], Y[k]
    scale = 0.5
    for _ in range(budget):
        Px = (bx + scale * np.abs(bx).max() * g.normal(size=(8, nE))) * A
        Py = (by + scale * np.abs(by).max() * g.normal(size=(8, nF))) * B
        rp = ratios(Px, Py)
        j = int(np.argmax(rp))
        if rp[j] > best:
            best, bx, by = float(rp[j]), Px[j], Py[j]
        else:
            scale *= 0.7
    return best


def _steps_report(check, inputs, C, rows, info, tol):
    passed = info["decay_ok"] and info["chain_ok"] and info["bound_ok"] and info["ap_E"] \
        and info["ap_F"] and info["ap2"]
    rep = CheckReport(
        check, inputs, {"C": C, "tol": tol}, rows, bool(passed),
        dict(constant=C, worst_ratio=info["worst_ratio"], decay_ok=info["decay_ok"],
             chain_ok=info["chain_ok"], bound_ok=info["bound_ok"], ap_E=info["ap_E"],
             ap_F=info["ap_F"], ap2=info["ap2"], decay=info["decay"]),
    )
    rep.tables["trajectories"] = dict(columns=["m", "term", "value"],
                                      rows=[[r["m"], r["term"], r["value"]] for r in rows])
    return rep


def theorem43_steps(T: BilinearMap, cE: SequenceCouple, cF: SequenceCouple,
                    rho: FunctionParameter, p: float, q: float, W: int, m_grid, budget: int,
                    seed: int, normG=None, C=None, tol: float = 1e-3) -> CheckReport:
    """Bil-norms of the eight cut terms over E_{gamma,p} x F_{rho,q} -> G.

    With p = q = 1 the interpolated sequence spaces are weighted l1 spaces,
    so the suprema sit on one-hot pairs and are computed exactly (the
    denominators carry the tail bound, so values never exceed the true
    norm).  Endpoint norms M0, M1 of each term are exact the same way.
    """
    if classify(rho).in_Bpm is not True:
        raise PreconditionError("theorem43_steps needs a parameter in B+-")
    L = T.dims[0]
    normG = WeightedNorm(np.ones(L), 2.0) if normG is None else normG
    target = {0: normG, 1: normG, "interp": normG, "fixed": True}
    m_grid = list(m_grid)
    rows, info = _steps(T, cE, cF, rho, p, q, W, m_grid, budget, seed, target, C, tol,
                        (None, None), "theorem43")
    inputs = dict(T=T.coeffs, cE=cE.to_config(), cF=cF.to_config(), rho=rho.to_config(),
                  p=p, q=q, W=W, m_grid=m_grid, budget=budget, seed=seed,
                  normG=normG.to_config())
    return _steps_report("theorem43", inputs, C, rows, info, tol)


ORDERINGS = {
    # E0 -> E1 and F0 -> F1
    "statement": ("nonneg", "nonneg"),
    # E0 -> E1 and F1 -> F0
    "remark": ("nonneg", "nonpos"),
}


def theorem51_ordered_variant(T: BilinearMap, cE: SequenceCouple, cF: SequenceCouple,
                              cG: FiniteCouple, rho: FunctionParameter, p: float, q: float,
                              W: int, m_grid, budget: int, seed: int, ordering="statement",
                              C=None, tol: float = 1e-3) -> CheckReport:
    """Cut-term trajectories into the interpolated target G_{rho,r}.

    Ordered couples are modelled by supporting sequences on one side of the
    index range: m >= 0 gives X0 -> X1, m <= 0 gives X1 -> X0.
    """
    if ordering not in ORDERINGS:
        raise ValueError(f"ordering must be one of {sorted(ORDERINGS)}")
    if classify(rho).in_Bpm is not True:
        raise PreconditionError("theorem51 needs a parameter in B+-")
    r = exponent_r(p, q)
    specG = InterpolationSpec(rho, r, "K", W)
    if cG.dim != T.dims[0]:
        raise ValueError("target couple dimension does not match the tensor")
    target = {0: cG.norm0, 1: cG.norm1, "interp": _interp_norm_fn(cG, specG),
              "fixed": False}
    m_grid = list(m_grid)
    rows, info = _steps(T, cE, cF, rho, p, q, W, m_grid, budget, seed, target, C, tol,
                        ORDERINGS[ordering], "theorem51")
    # ordering of the modelled couples, checked on one-hot positions
    idxE, aE = _seq_weights(cE)
    idxF, aF = _seq_weights(cF)
    sE = _support(idxE, ORDERINGS[ordering][0])
    sF = _support(idxF, ORDERINGS[ordering][1])
    info["E_embedding"] = float((aE[1][sE] / aE[0][sE]).max())
    key = (0, 1) if ORDERINGS[ordering][1] == "nonneg" else (1, 0)
    info["F_embedding"] = float((aF[key[1]][sF] / aF[key[0]][sF]).max())
    inputs = dict(T=T.coeffs, cE=cE.to_config(), cF=cF.to_config(), cG=cG.to_config(),
                  rho=rho.to_config(), p=p, q=q, W=W, m_grid=m_grid, budget=budget,
                  seed=seed, ordering=ordering)
    rep = _steps_report("theorem51", inputs, C, rows, info, tol)
    rep.summary.update(ordering=ordering, E_embedding=info["E_embedding"],
                       F_embedding=info["F_embedding"])
    return rep


# ---------------------------------------------------------------------------
# Theorem 5.2


def _profile_for_model(T, cE, cF, cG, rho, p, q, W, points, m_max, seed, C):
    gamma = gamma_from_rho(rho)
    specE = InterpolationSpec(gamma, p, "K", W)
    specF = InterpolationSpec(rho, q, "K", W)
    specG = InterpolationSpec(rho, exponent_r(p, q), "K", W)
    X = ball_samples(seed, "theorem52.x", points, cE.dim, _interp_norm_fn(cE, specE, True))
    Y = ball_samples(seed, "theorem52.y", points, cF.dim, _interp_norm_fn(cF, specF, True))
    Z = T.apply(X, Y)
    gnorm = _interp_norm_fn(cG, specG)
    ks = [2 ** (m - 1) for m in range(1, m_max + 1)]
    fpG = farthest_point(Z, gnorm, k_max=ks[-1])
    fp0 = farthest_point(Z, cG.norm0, k_max=ks[-1], snapshot_at=ks)
    M1 = float(np.max(cG.norm1(Z)))
    C_theory = class_j_constant(specG)
    Cw = C_theory if C is None else C
    rows, run = [], math.inf
    mono_raw = bool(np.all(np.diff(fpG.radii) <= 0))
    ok_b = True
    for m, k in zip(range(1, m_max + 1), ks):
        eG = float(fpG.radii[k - 1]) if k <= fpG.radii.size else 0.0
        e0 = float(fp0.radii[k - 1]) if k <= fp0.radii.size else 0.0
        a = fp0.snapshots[k]
        cen = fp0.centers[:k] if k <= fp0.centers.size else fp0.centers
        trans = float(np.max(gnorm(Z - Z[cen[a]])))
        run = min(run, eG, trans)
        om = float(modulus(rho, Cw, M1, e0)) if e0 > 0 else 0.0
        ok = run <= om * (1 + 1e-9) or run == 0
        ok_b &= ok
        rows.append(dict(m=m, centers=k, e_G=run, greedy_G=eG, transferred_G=trans, e_G0=e0,
                         omega=om, ok=bool(ok)))
    return rows, dict(monotone_raw=mono_raw, transfer_ok=bool(ok_b), M1=M1, C=Cw)


def theorem52_check(models: dict, rho: FunctionParameter, p: float, q: float, W: int,
                    seed: int, points: int = 1024, m_max: int = 8, C=None,
                    stability: float = 2.0) -> CheckReport:
    """Entropy profiles of T(B_E x B_F) in G_{rho,r} at two truncation sizes.

    ``models`` maps a dimension to (T, cE, cF, cG).  e_m is the smaller of
    the greedy radius in G and the G-radius of the G0 greedy cover, which is
    a valid upper bound for the entropy number with 2^(m-1) balls.
    """
    if classify(rho).in_Bpm is not True:
        raise PreconditionError("theorem52_check needs a parameter in B+-")
    dims = sorted(models)
    profiles, infos = {}, {}
    for n in dims:
        T, cE, cF, cG = models[n]
        profiles[n], infos[n] = _profile_for_model(T, cE, cF, cG, rho, p, q, W, points,
                                                   m_max, seed, C)
    nonincreasing = all(
        all(b["e_G"] <= a["e_G"] for a, b in zip(rows, rows[1:])) for rows in profiles.values())
    stable, worst = True, 1.0
    if len(dims) >= 2:
        a, b = profiles[dims[0]], profiles[dims[-1]]
        for ra, rb in zip(a, b):
            x, y = ra["e_G"], rb["e_G"]
            if x == 0 and y == 0:
                continue
            f = max(x, y) / min(x, y) if min(x, y) > 0 else math.inf
            worst = max(worst, f)
        stable = worst <= stability
    transfer = all(i["transfer_ok"] for i in infos.values())
    raw = all(i["monotone_raw"] for i in infos.values())
    meas = [dict(dim=n, **r) for n in dims for r in profiles[n]]
    rep = CheckReport(
        "theorem52",
        dict(models={str(n): dict(T=models[n][0].coeffs.shape, cE=models[n][1].to_config(),
                                  cF=models[n][2].to_config(), cG=models[n][3].to_config())
                     for n in dims},
             rho=rho.to_config(), p=p, q=q, W=W, seed=seed, points=points, m_max=m_max),
        {"C": C, "stability": stability},
        meas,
        bool(nonincreasing and stable and transfer and raw),
        dict(constant=stability, worst_ratio=worst, nonincreasing=nonincreasing,
             transfer_ok=transfer, greedy_monotone=raw,
             C_used={str(n): infos[n]["C"] for n in dims}),
    )
    rep.tables["entropy"] = dict(columns=["dim", "m", "e_G", "e_G0", "omega"],
                                 rows=[[r["dim"], r["m"], r["e_G"], r["e_G0"], r["omega"]]
                                       for r in meas])
    return rep


def diagonal_model(N: int, alpha: float):
    """(T, cE, cF, cG) with T(x, y)_i = 2^(-alpha i) x_i y_i on l1 / l^inf couples."""
    from .bilinear import diagonal_decay
    from .couples import l1_linf

    c = l1_linf(N)
    return diagonal_decay(N, alpha), c, c, c


# ---------------------------------------------------------------------------
# Theorem 6.1


def persson_check(T: BilinearMap, cE: FiniteCouple, cF: FiniteCouple, cG: FiniteCouple,
                  rho: FunctionParameter, p: float, q: float, W: int, eps_grid=None,
                  samples: int = 512, seed: int = 0, C=None, tol: float = 1e-3) -> CheckReport:
    """Residuals of the truncations P_r T (first r output coordinates)."""
    if classify(rho).in_Bpm is not True:
        raise PreconditionError("persson_check needs a parameter in B+-")
    L, N, M = T.dims
    gamma = gamma_from_rho(rho)
    r_exp = exponent_r(p, q)
    specE = InterpolationSpec(gamma, p, "K", W)
    specF = InterpolationSpec(rho, q, "K", W)
    specG = InterpolationSpec(rho, r_exp, "K", W)
    gnorm = _interp_norm_fn(cG, specG)
    exact = p == 1 and q == 1 and cE.norm0.p == 1 and cE.norm1.p == 1 \
        and cF.norm0.p == 1 and cF.norm1.p == 1
    # one-hot data: with l1 endpoints and p = q = 1 the interpolated spaces are
    # weighted l1, so Bil-norms are maxima over one-hot pairs
    ev, et, _ = k_method_norms(cE, specE, np.eye(N))
    fv, ft, _ = k_method_norms(cF, specF, np.eye(M))
    lamE, lamF = ev + et, fv + ft
    P = np.einsum("lij->ijl", T.coeffs).reshape(-1, L)
    tauG = gnorm(P).reshape(N, M)
    tau0 = np.asarray(cG.norm0(P)).reshape(N, M)
    tau1 = np.asarray(cG.norm1(P)).reshape(N, M)
    e0 = cE.norm0(np.eye(N)), cF.norm0(np.eye(M))
    e1 = cE.norm1(np.eye(N)), cF.norm1(np.eye(M))
    # uniform bound of the truncations on both target endpoints
    proj_bound = 1.0 if all(n.p >= 1 for n in (cG.norm0, cG.norm1)) else math.nan

    def residual_images(r):
        Q = P.copy()
        Q[:, :r] = 0.0
        return Q

    M1_T = float(np.max(tau1 / (e1[0][:, None] * e1[1][None, :])))
    rows, curve = [], []
    for r in range(L + 1):
        Q = residual_images(r)
        tG = gnorm(Q).reshape(N, M) if r < L else np.zeros((N, M))
        resid = float(np.max(tG / (lamE[:, None] * lamF[None, :])))
        t0 = np.asarray(cG.norm0(Q)).reshape(N, M)
        t1 = np.asarray(cG.norm1(Q)).reshape(N, M)
        delta = float(np.max(t0 / (e0[0][:, None] * e0[1][None, :])))
        M1r = float(np.max(t1 / (e1[0][:, None] * e1[1][None, :])))
        hb = _h(rho, delta, M1r)
        chain = float(dilation(rho, M1_T) * delta * dilation(rho, 1.0 / delta)) \
            if delta > 0 and M1_T > 0 else 0.0
        curve.append(resid)
        rows.append(dict(r=r, residual=resid, delta0=delta, M1=M1r, interp_bound=hb,
                         chain_bound=chain))
    curve = np.array(curve)
    pos = curve > 0
    first_zero = int(np.argmin(pos)) if not pos.all() else L + 1
    decreasing = bool(np.all(np.diff(curve[:first_zero]) < 0)
                      and np.all(curve[first_zero:] == 0))
    zero_at_dim = curve[-1] == 0.0
    below = np.nonzero(curve[:L] < tol * curve[0])[0] if curve[0] > 0 else np.array([0])
    early = bool(below.size > 0)
    ratio = max((rw["residual"] / rw["interp_bound"] for rw in rows if rw["interp_bound"] > 0),
                default=0.0)
    bound_ok = True
    for rw in rows:
        # the chain bound follows from the interpolation bound by submultiplicativity
        bound_ok &= rw["interp_bound"] <= rw["chain_bound"] * (1 + 1e-9) + 1e-300
        if C is not None:
            bound_ok &= rw["residual"] <= C * rw["interp_bound"] * (1 + 1e-9) + 1e-300
    # Persson selection on a sampled cloud of T(B_E0 x B_F0)
    X = ball_samples(seed, "persson.x", samples, N, cE.norm0)
    Y = ball_samples(seed, "persson.y", samples, M, cF.norm0)
    Z = T.apply(X, Y)
    tails = np.array([np.max(cG.norm0(np.where(np.arange(L) < r, 0.0, Z)))
                      for r in range(L + 1)])
    if eps_grid is None:
        eps_grid = default_eps_grid(max(float(tails[0]), 1e-300))
    picks = []
    for e in sorted(eps_grid, reverse=True):
        ok_r = np.nonzero(tails < e)[0]
        if ok_r.size == 0:
            raise RuntimeError("no truncation reaches the requested accuracy")
        r = int(ok_r[0])
        picks.append(dict(epsilon=float(e), r=r, residual=float(curve[r])))
    picks_ok = all(b["residual"] <= a["residual"] for a, b in zip(picks, picks[1:]))
    passed = decreasing and zero_at_dim and early and bound_ok and picks_ok
    rep = CheckReport(
        "persson",
        dict(T=T.coeffs, cE=cE.to_config(), cF=cF.to_config(), cG=cG.to_config(),
             rho=rho.to_config(), p=p, q=q, W=W, eps_grid=eps_grid, samples=samples,
             seed=seed),
        {"C": C, "tol": tol},
        rows,
        bool(passed),
        dict(constant=C, worst_ratio=ratio, decreasing=decreasing, zero_at_dim=bool(zero_at_dim),
             first_below_tol=int(below[0]) if early else None, exact=bool(exact),
             projection_bound=proj_bound, bound_ok=bool(bound_ok), selections=picks),
    )
    rep.tables["residual"] = dict(columns=["r", "residual", "interp_bound", "chain_bound"],
                                  rows=[[w["r"], w["residual"], w["interp_bound"],
                                         w["chain_bound"]] for w in rows])
    return rep

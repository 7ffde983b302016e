"""rho-method K- and J-norms on finite couples and the checks built on them.

Both norms sum over dyadic levels t = 2^n with |n| <= W.  The K-norm comes
with a certified bound on the part of the sum outside the window; the J-norm
comes with a feasible representation (an upper bound) and a certified lower
bound from the K-norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from . import rng as rng_mod
from .couples import FiniteCouple, WeightedNorm
from .params import (
    FunctionParameter,
    PreconditionError,
    boyd_indices,
    classify,
    dilation,
    eval_rho,
)
from .reports import CheckReport

__all__ = [
    "InterpolationSpec",
    "NormResult",
    "k_method_norm",
    "k_method_norms",
    "j_method_norm",
    "young_constant",
    "lq",
    "operator_norm",
    "equivalence_check",
    "class_J_check",
    "class_K_check",
    "linear_bound_check",
    "sample_vectors",
]

_EXP_TOL = 1e-9


def lq(v, q: float, axis=-1):
    """l^q norm of nonnegative entries along ``axis``."""
    v = np.asarray(v, dtype=float)
    if math.isinf(q):
        return v.max(axis=axis)
    if q == 1:
        return v.sum(axis=axis)
    m = v.max(axis=axis, keepdims=True)
    safe = np.where(m == 0, 1.0, m)
    return np.squeeze(safe, axis) * ((v / safe) ** q).sum(axis=axis) ** (1.0 / q)


@dataclass(frozen=True)
class InterpolationSpec:
    rho: FunctionParameter
    q: float = 1.0
    method: str = "K"
    window: int = 20
    tail_mode: str = "estimate"
    k_tol: float = 1e-9
    j_budget: int = 200
    j_reweight: int = 10

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if not float(self.q) >= 1:
            raise ValueError("q must lie in [1, inf]")
        object.__setattr__(self, "q", float(self.q))
        if self.method not in ("K", "J"):
            raise ValueError("method must be 'K' or 'J'")
        if self.tail_mode not in ("estimate", "ignore"):
            raise ValueError("tail_mode must be 'estimate' or 'ignore'")
        if self.method == "J" and classify(self.rho).in_Bpm is not True:
            raise PreconditionError("the J-method needs a parameter in B+-")

    @property
    def levels(self) -> np.ndarray:
        return np.arange(-self.window, self.window + 1)

    @property
    def ts(self) -> np.ndarray:
        return np.exp2(self.levels.astype(float))

    @property
    def level_weights(self) -> np.ndarray:
        """rho(2^n)^-1 for each level."""
        return 1.0 / eval_rho(self.rho, self.ts)

    def with_(self, **kw) -> "InterpolationSpec":
        d = dict(rho=self.rho, q=self.q, method=self.method, window=self.window,
                 tail_mode=self.tail_mode, k_tol=self.k_tol, j_budget=self.j_budget,
                 j_reweight=self.j_reweight)
        d.update(kw)
        return InterpolationSpec(**d)


@dataclass(frozen=True)
class NormResult:
    value: float
    tail_bound: float
    converged: bool
    diverged: bool = False
    lower: Optional[float] = None
    flag: str = ""


# ---------------------------------------------------------------------------
# K-method


def _tail_factors(spec: InterpolationSpec):
    """(upper, lower, diverged) with tail <= upper * ||x||_0 and lower * ||x||_1.

    Above the window rho(2^(W+k))^-1 <= rho(2^W)^-1 2^(-k e) with
    e = inf of log rho_bar / log s over s < 1; below it
    rho(2^(-W-k))^-1 <= rho(2^-W)^-1 2^(k f) with f = alpha.
    """
    if spec.tail_mode == "ignore":
        return 0.0, 0.0, False
    idx = boyd_indices(spec.rho)
    e, f = idx.beta_inf, idx.alpha
    W, q = spec.window, spec.q
    if e <= _EXP_TOL or f >= 1 - _EXP_TOL:
        return math.inf, math.inf, True

    def geo(r):
        # || (r^k)_{k>=1} ||_q
        return r if math.isinf(q) else r / (1.0 - r**q) ** (1.0 / q)

    rW = eval_rho(spec.rho, 2.0**W)
    rmW = eval_rho(spec.rho, 2.0**-W)
    up = geo(2.0**-e) / rW
    lo = 2.0**-W / rmW * geo(2.0 ** -(1.0 - f))
    return up, lo, False


def k_method_norms(c, spec: InterpolationSpec, X):
    """Window values and tail bounds for each row of X."""
    X = np.asarray(X, dtype=float)
    X2 = X.reshape(-1, X.shape[-1])
    K = c.k_many(X2, spec.ts, tol=spec.k_tol)
    vals = lq(K * spec.level_weights[None, :], spec.q)
    up, lo, diverged = _tail_factors(spec)
    if diverged:
        tails = np.full(vals.shape, math.inf)
        tails[vals == 0] = 0.0
    elif up == 0 and lo == 0:
        tails = np.zeros_like(vals)
    else:
        a = up * np.asarray(c.norm0(X2))
        b = lo * np.asarray(c.norm1(X2))
        tails = lq(np.stack([a, b], axis=-1), spec.q)
    shape = X.shape[:-1]
    return vals.reshape(shape), tails.reshape(shape), diverged


def k_method_norm(c, spec: InterpolationSpec, x) -> NormResult:
    if spec.method != "K":
        raise ValueError("k_method_norm needs a K-method spec")
    v, t, div = k_method_norms(c, spec, np.asarray(x, dtype=float)[None, :])
    return NormResult(float(v[0]), float(t[0]), converged=not div, diverged=div)


# ---------------------------------------------------------------------------
# J-method


def young_constant(spec: InterpolationSpec) -> float:
    """||kappa||_1 with kappa_k = min(1, 2^k) rho_bar(2^-k), |k| <= 2W.

    For any windowed representation x = sum u_n,
    rho(2^m)^-1 K(2^m, x) <= sum_n kappa_(m-n) rho(2^n)^-1 J(2^n, u_n), so the
    window K-norm is at most ||kappa||_1 times the window J-norm.
    """
    k = np.arange(-2 * spec.window, 2 * spec.window + 1, dtype=float)
    kappa = np.minimum(1.0, np.exp2(k)) * dilation(spec.rho, np.exp2(-k))
    return float(kappa.sum())


def _level_costs(c, U, ts, weights):
    return weights * np.maximum(c.norm0(U), ts * c.norm1(U))


def _refine(c, U, ts, weights, q, budget):
    """Greedy mass moves between nearby levels; returns (U, objective, moves)."""
    qs = q
    L, N = U.shape
    cost = _level_costs(c, U, ts, weights)
    obj = float(lq(cost, qs))
    best_U, best = U.copy(), float(lq(cost, q))
    fracs = np.array([1.0, 0.5, 0.25, 0.125])
    shifts = np.array([-4, -3, -2, -1, 1, 2, 3, 4])
    src, dst, coord, frac = np.meshgrid(np.arange(L), shifts, np.arange(N), fracs, indexing="ij")
    src, coord, frac = src.ravel(), coord.ravel(), frac.ravel()
    dst = src + dst.ravel()
    ok = (dst >= 0) & (dst < L)
    src, dst, coord, frac = src[ok], dst[ok], coord[ok], frac[ok]
    idx = np.arange(src.size)
    moves = 0
    for _ in range(budget):
        amt = frac * U[src, coord]
        live = amt != 0
        if not np.any(live):
            break
        Us = U[src].copy()
        Ud = U[dst].copy()
        Us[idx, coord] -= amt
        Ud[idx, coord] += amt
        cs = weights[src] * np.maximum(c.norm0(Us), ts[src] * c.norm1(Us))
        cd = weights[dst] * np.maximum(c.norm0(Ud), ts[dst] * c.norm1(Ud))
        if math.isinf(qs):
            new_cost = np.broadcast_to(cost, (src.size, L)).copy()
            new_cost[idx, src] = cs
            new_cost[idx, dst] = cd
            new_obj = new_cost.max(axis=1)
        else:
            # rescale by the largest cost to keep powers in range
            m = max(float(cost.max()), float(cs.max()), float(cd.max()))
            base = float(((cost / m) ** qs).sum())
            new_obj = base - (cost[src] / m) ** qs - (cost[dst] / m) ** qs
            new_obj = m * np.maximum(new_obj + (cs / m) ** qs + (cd / m) ** qs, 0.0) ** (1.0 / qs)
        new_obj = np.where(live, new_obj, np.inf)
        k = int(np.argmin(new_obj))
        if not new_obj[k] < obj * (1 - 1e-12):
            break
        U[src[k], coord[k]] -= amt[k]
        U[dst[k], coord[k]] += amt[k]
        cost = _level_costs(c, U, ts, weights)
        obj = float(lq(cost, qs))
        true = float(lq(cost, q))
        if true < best:
            best, best_U = true, U.copy()
        moves += 1
    return best_U, best, moves


def _telescoping(c, spec, x, shift):
    ts = spec.ts
    L = ts.size
    # E0 parts at t = 2^(n + shift); the differences telescope to x
    _, S = c.k_split(x, ts * 2.0**shift, tol=spec.k_tol)
    U = np.empty((L, x.size))
    U[0] = S[0]
    U[1:-1] = S[1:-1] - S[:-2]
    U[-1] = x - S[-2]
    return U


def dual_couple(c):
    """The couple of dual norms (weights 1/w, conjugate exponents)."""
    n0, n1 = c.norm0, c.norm1
    conj = [math.inf if p == 1 else (1.0 if math.isinf(p) else p / (p - 1.0)) for p in (n0.p, n1.p)]
    return FiniteCouple(WeightedNorm(1.0 / n0.weights, conj[0]),
                        WeightedNorm(1.0 / n1.weights, conj[1]))


def j_dual_norm(c, spec: InterpolationSpec, Y):
    """|| (rho(2^n) K(2^-n, y; E0*, E1*))_n ||_q' for each row y of Y.

    This is the dual norm of the windowed J-norm, so <x, y> / j_dual_norm(y)
    is a lower bound on the J-norm of x for every y != 0.
    """
    q = spec.q
    qc = math.inf if q == 1 else (1.0 if math.isinf(q) else q / (q - 1.0))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    K = dual_couple(c).k_many(Y, 1.0 / spec.ts, tol=spec.k_tol)
    return lq(K / spec.level_weights[None, :], qc)


def _j_lp(c, spec: InterpolationSpec, x, level_cost=None, _cache=None):
    """Exact windowed J-norm as a linear program (l1/l^inf norms, q in {1, inf}).

    Variables: U = P - M per level, one bound z_n per level for each norm,
    and for q = inf a common level lam.  With ``level_cost`` (q = 1 only) the
    objective is sum_n level_cost_n z_n.  Returns (U, y) where y are the
    multipliers of the constraint sum_n U_n = x, or None when not applicable.
    """
    from scipy.optimize import linprog

    n0, n1 = c.norm0, c.norm1
    if not all(p == 1 or math.isinf(p) for p in (n0.p, n1.p)):
        return None
    q = spec.q
    if not (q == 1 or math.isinf(q)):
        return None
    ts, w = spec.ts, spec.level_weights
    L, N = ts.size, x.size
    nU = L * N
    # layout: P (nU), M (nU), z (L), [lam]
    nv = 2 * nU + L + (1 if math.isinf(q) else 0)
    if _cache is not None and q in _cache:
        A_ub, rhs, A_eq = _cache[q]
    else:
        A_ub, rhs, A_eq = _j_lp_matrices(n0, n1, ts, w, q, N)
        if _cache is not None:
            _cache[q] = (A_ub, rhs, A_eq)
    cost = np.zeros(nv)
    if math.isinf(q):
        cost[-1] = 1.0
    else:
        cost[2 * nU : 2 * nU + L] = 1.0 if level_cost is None else level_cost
    res = linprog(cost, A_ub=A_ub, b_ub=rhs, A_eq=A_eq, b_eq=x,
                  bounds=(0, None), method="highs")
    if res.status != 0:
        return None
    U = (res.x[:nU] - res.x[nU : 2 * nU]).reshape(L, N)
    # enforce the constraint exactly; the last level absorbs rounding
    U[-1] += x - U.sum(axis=0)
    return U, np.asarray(res.eqlin.marginals, dtype=float)


def _j_lp_matrices(n0, n1, ts, w, q, N):
    from scipy.sparse import coo_matrix

    L = ts.size
    nU = L * N
    nv = 2 * nU + L + (1 if math.isinf(q) else 0)
    rows, cols, vals, rhs = [], [], [], []
    r = 0

    def uidx(n, i):
        return n * N + i

    for n in range(L):
        for norm, scale in ((n0, w[n]), (n1, w[n] * ts[n])):
            if norm.p == 1:
                # scale * sum_i a_i (P + M) - z_n <= 0
                for i in range(N):
                    for off in (0, nU):
                        rows.append(r); cols.append(off + uidx(n, i)); vals.append(scale * norm.weights[i])
                rows.append(r); cols.append(2 * nU + n); vals.append(-1.0)
                rhs.append(0.0)
                r += 1
            else:
                for i in range(N):
                    for off in (0, nU):
                        rows.append(r); cols.append(off + uidx(n, i)); vals.append(scale * norm.weights[i])
                    rows.append(r); cols.append(2 * nU + n); vals.append(-1.0)
                    rhs.append(0.0)
                    r += 1
    if math.isinf(q):
        for n in range(L):
            rows.append(r); cols.append(2 * nU + n); vals.append(1.0)
            rows.append(r); cols.append(nv - 1); vals.append(-1.0)
            rhs.append(0.0)
            r += 1
    A_ub = coo_matrix((vals, (rows, cols)), shape=(r, nv)).tocsr()
    er, ec, ev = [], [], []
    for i in range(N):
        for n in range(L):
            er += [i, i]; ec += [uidx(n, i), nU + uidx(n, i)]; ev += [1.0, -1.0]
    A_eq = coo_matrix((ev, (er, ec)), shape=(N, nv)).tocsr()
    return A_ub, np.array(rhs), A_eq


def j_method_norm(c, spec: InterpolationSpec, x) -> NormResult:
    """Upper bound from a feasible representation, certified lower bound.

    Proportional couples have a closed form.  Otherwise the representation is
    the best of the single-term one and, for l1 / l^inf norms, the
    linear-programming optimum (exact for q in {1, inf}; for other q the
    better of the q = 1 and q = inf optima, refined by mass moves between
    nearby levels).  Other couples use telescoped optimal K-splits refined
    the same way.  The lower bound is the larger of the K-norm over the Young
    constant and the duality bounds at the LP multipliers.
    """
    if spec.method != "J":
        raise ValueError("j_method_norm needs a J-method spec")
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return NormResult(0.0, 0.0, True, lower=0.0)
    ts, w, q = spec.ts, spec.level_weights, spec.q
    kappa = getattr(c, "proportional", None)
    if kappa is not None:
        d = w * np.maximum(1.0, kappa * ts)
        if q == 1:
            f = d.min()
        elif math.isinf(q):
            f = 1.0 / (1.0 / d).sum()
        else:
            qc = q / (q - 1.0)
            f = (d ** (-qc)).sum() ** (-1.0 / qc)
        val = float(c.norm0(x) * f)
        return NormResult(val, 0.0, True, lower=val, flag="closed_form")

    single = w * np.maximum(c.norm0(x), ts * c.norm1(x))
    best = float(single.min())
    flag = "single_term"
    kv, _, _ = k_method_norms(c, spec.with_(method="K", tail_mode="ignore"), x[None, :])
    lower = float(kv[0]) / young_constant(spec)
    # for q strictly between 1 and inf both LP optima are feasible
    # representations, and their multipliers still give duality bounds
    lp_qs = [q] if (q == 1 or math.isinf(q)) else [1.0, math.inf]
    starts = []
    cache = {}
    if isinstance(c, FiniteCouple):
        for lq_ in lp_qs:
            lp = _j_lp(c, spec.with_(q=lq_), x, _cache=cache)
            if lp is None:
                break
            U, y = lp
            starts.append(U)
            dn = float(j_dual_norm(c, spec, y[None, :])[0])
            if dn > 0:
                lower = max(lower, float(y @ x) / dn)
    for U in starts:
        obj = float(lq(_level_costs(c, U, ts, w), q))
        if obj < best:
            best, flag, best_U = obj, "lp", U
    if starts and len(lp_qs) > 1 and flag == "lp":
        # Frank-Wolfe: the LP with level costs grad ||z||_q is the linear
        # oracle, followed by an exact line search (the objective is convex)
        U = best_U
        for _ in range(spec.j_reweight):
            z = _level_costs(c, U, ts, w)
            v = (z / z.max()) ** (q - 1.0)
            lp = _j_lp(c, spec.with_(q=1.0), x, level_cost=np.maximum(v, 1e-12),
                        _cache=cache)
            if lp is None:
                break
            V = lp[0]

            def f(g, V=V, U=U):
                return float(lq(_level_costs(c, (1 - g) * U + g * V, ts, w), q))

            r = minimize_scalar(f, bounds=(0.0, 1.0), method="bounded",
                                options={"xatol": 1e-10})
            obj = min(float(r.fun), f(1.0))
            if obj >= best * (1 - 1e-9):
                break
            g = float(r.x) if r.fun <= f(1.0) else 1.0
            U = (1 - g) * U + g * V
            best, best_U, flag = obj, U, "lp_frank_wolfe"
        U, obj, _ = _refine(c, best_U.copy(), ts, w, q, spec.j_budget)
        if obj < best:
            best, flag = obj, "lp_refined"
    if not starts:
        for shift in (0, 1, -1):
            U = _telescoping(c, spec, x, shift)
            U, obj, _ = _refine(c, U, ts, w, q, spec.j_budget)
            if obj < best:
                best, flag = obj, "refined"
    return NormResult(best, 0.0, converged=flag != "single_term", lower=lower, flag=flag)


# ---------------------------------------------------------------------------
# sampling helpers


def sample_vectors(rng, n: int, dim: int) -> np.ndarray:
    """Gaussian directions with log-uniform coordinate scales."""
    return rng.normal(size=(n, dim)) * np.exp(rng.uniform(-2.0, 2.0, size=(n, dim)))


def _per_sample(seed, check, n, dim):
    return np.stack([sample_vectors(rng_mod.stream(seed, check, i), 1, dim)[0] for i in range(n)])


def operator_norm(T, normX: WeightedNorm, normY: WeightedNorm, seed: int = 0,
                  restarts: int = 16, iters: int = 100):
    """||T||_{X -> Y}; returns (value, exact).

    Exact when X is weighted l1 (extreme points are scaled unit vectors), when
    Y is weighted l^inf (row-wise dual norms) or when X is weighted l^inf of
    dim <= 20 (sign vertices).  Otherwise an alternating-ascent lower bound.
    """
    T = np.asarray(T, dtype=float)
    if not np.any(T):
        return 0.0, True
    if normX.p == 1:
        cols = T.T / normX.weights[:, None]
        return float(np.max(normY(cols))), True
    if math.isinf(normY.p):
        return float(np.max(normY.weights * normX.dual(T))), True
    if math.isinf(normX.p) and T.shape[1] <= 20:
        n = T.shape[1]
        signs = _sign_vertices(n) / normX.weights
        return float(np.max(normY(signs @ T.T))), True
    best = 0.0
    for r in range(restarts):
        g = rng_mod.stream(seed, "operator_norm", r)
        x = normX.argmax_linear(g.normal(size=T.shape[1]))
        for _ in range(iters):
            phi = normY.norming_functional(T @ x)
            x = normX.argmax_linear(T.T @ phi)
        best = max(best, float(normY(T @ x)))
    return best, False


def _sign_vertices(n: int) -> np.ndarray:
    # first coordinate fixed to +1: the norm is even
    if n == 1:
        return np.ones((1, 1))
    k = np.arange(2 ** (n - 1))[:, None]
    bits = (k >> np.arange(n - 1)[None, :]) & 1
    return np.concatenate([np.ones((k.size, 1)), 1.0 - 2.0 * bits], axis=1)


# ---------------------------------------------------------------------------
# checks


def _spread(r):
    r = np.asarray(r, dtype=float)
    if r.size == 0 or not np.all(np.isfinite(r)) or np.any(r <= 0):
        return math.inf
    return float(r.max() / r.min())


def equivalence_check(c, rho, q, W, samples, seed, spread_bound=None,
                      budget: int = 200) -> CheckReport:
    """J-norm / K-norm ratios over random vectors."""
    specK = InterpolationSpec(rho, q, "K", W)
    specJ = InterpolationSpec(rho, q, "J", W, j_budget=budget)
    X = _per_sample(seed, "equivalence", samples, c.dim)
    kv, kt, _ = k_method_norms(c, specK, X)
    rows = rng_mod.parallel_map(lambda x: j_method_norm(c, specJ, x), list(X))
    jv = np.array([r.value for r in rows])
    jl = np.array([r.lower for r in rows])
    ratio = jv / kv
    spread = _spread(ratio)
    passed = math.isfinite(spread) and (spread_bound is None or spread <= spread_bound)
    # every J upper bound must sit above its certified lower bound
    consistent = bool(np.all(jl <= jv * (1 + 1e-9)))
    rep = CheckReport(
        check="equivalence",
        inputs=dict(couple=c.to_config(), rho=rho.to_config(), q=q, W=W,
                    samples=samples, seed=seed, budget=budget),
        constants={"spread_bound": spread_bound},
        measurements=[dict(index=i, k_norm=kv[i], k_tail=kt[i], j_norm=jv[i],
                           j_lower=jl[i], ratio=ratio[i]) for i in range(samples)],
        passed=bool(passed and consistent),
        summary=dict(constant=spread_bound, worst_ratio=spread,
                     ratio_min=float(ratio.min()), ratio_max=float(ratio.max()),
                     # true J/K ratios lie in [j_lower, j_norm] / k_norm
                     certified_spread=float((jv / kv).max() / (jl / kv).min()),
                     lower_bound_consistent=consistent),
    )
    rep.tables["ratios"] = dict(columns=["index", "k_norm", "j_norm", "ratio"],
                                rows=[[i, kv[i], jv[i], ratio[i]] for i in range(samples)])
    return rep


def class_J_check(E_norm, c, rho, samples, seed=0) -> CheckReport:
    """Smallest C with ||x||_E <= C ||x||_0 rho_bar(||x||_1 / ||x||_0)."""
    X = _per_sample(seed, "class_J", samples, c.dim)
    e = np.asarray(E_norm(X), dtype=float)
    a = np.asarray(c.norm0(X))
    b = np.asarray(c.norm1(X))
    bad = (a == 0) & (e != 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = e / (a * dilation(rho, np.where(a > 0, b / np.where(a > 0, a, 1), 1.0)))
    C = math.inf if np.any(bad) else float(np.max(ratio))
    return CheckReport(
        check="class_J",
        inputs=dict(couple=c.to_config(), rho=rho.to_config(), samples=samples, seed=seed),
        measurements=[dict(index=i, ratio=ratio[i]) for i in range(samples)],
        passed=math.isfinite(C),
        summary=dict(constant=None, worst_ratio=C, fitted_C=C),
    )


def class_K_check(E_norm, c, rho, q_eval=math.inf, samples=200, seed=0, W=20) -> CheckReport:
    """Smallest C with K-norm_{rho, q_eval}(x) <= C ||x||_E."""
    spec = InterpolationSpec(rho, q_eval, "K", W)
    X = _per_sample(seed, "class_K", samples, c.dim)
    kv, _, _ = k_method_norms(c, spec, X)
    e = np.asarray(E_norm(X), dtype=float)
    bad = (e == 0) & (kv != 0)
    ratio = kv / np.where(e == 0, 1.0, e)
    C = math.inf if np.any(bad) else float(np.max(ratio))
    return CheckReport(
        check="class_K",
        inputs=dict(couple=c.to_config(), rho=rho.to_config(), q_eval=q_eval,
                    samples=samples, seed=seed, W=W),
        measurements=[dict(index=i, ratio=ratio[i]) for i in range(samples)],
        passed=math.isfinite(C),
        summary=dict(constant=None, worst_ratio=C, fitted_C=C),
    )


def _interp_operator_lower(T, cE, cF, spec, X0, rng, rounds):
    """Sampled lower bound of sup ||Tx||_F / ||x||_E over interpolated norms.

    Numerators use window values (below the true norm), denominators add the
    tail bound (above the true norm), so every ratio is a valid lower bound.
    """
    def ratios(X):
        nv, _, _ = k_method_norms(cF, spec, X @ T.T)
        dv, dt, _ = k_method_norms(cE, spec, X)
        return nv / (dv + dt)

    r = ratios(X0)
    k = int(np.argmax(r))
    best, bx = float(r[k]), X0[k].copy()
    scale = 0.5
    for _ in range(rounds):
        P = bx[None, :] + scale * np.abs(bx).max() * rng.normal(size=(16, bx.size))
        rp = ratios(P)
        j = int(np.argmax(rp))
        if rp[j] > best:
            best, bx = float(rp[j]), P[j].copy()
        else:
            scale *= 0.7
    return best, bx


def linear_bound_check(T, cE, cF, rho, q, samples, budget, seed, W=16,
                       C_suite=None) -> CheckReport:
    """Interpolated operator norm against M0 rho_bar(M1 / M0)."""
    T = np.asarray(T, dtype=float)
    if T.shape != (cF.dim, cE.dim):
        raise ValueError("T must map dim(cE) to dim(cF)")
    inputs = dict(T=T, cE=cE.to_config(), cF=cF.to_config(), rho=rho.to_config(), q=q,
                  samples=samples, budget=budget, seed=seed, W=W)
    if not np.any(T):
        return CheckReport("linear_bound", inputs, {"C_suite": C_suite},
                           [dict(M0=0.0, M1=0.0, lhs=0.0, ratio=0.0)], True,
                           dict(constant=C_suite, worst_ratio=0.0))
    M0, ex0 = operator_norm(T, cE.norm0, cF.norm0, seed)
    M1, ex1 = operator_norm(T, cE.norm1, cF.norm1, seed)
    spec = InterpolationSpec(rho, q, "K", W)
    g = rng_mod.stream(seed, "linear_bound")
    n = T.shape[1]
    X0 = np.concatenate([_per_sample(seed, "linear_bound", samples, n), np.eye(n),
                         _sign_vertices(min(n, 12)) if n <= 12 else np.empty((0, n))])
    lhs, _ = _interp_operator_lower(T, cE, cF, spec, X0, g, budget)
    rhs = M0 * dilation(rho, M1 / M0)
    ratio = lhs / rhs
    ok = math.isfinite(ratio) and (C_suite is None or ratio <= C_suite)
    return CheckReport(
        "linear_bound", inputs, {"C_suite": C_suite},
        [dict(M0=M0, M1=M1, M0_exact=ex0, M1_exact=ex1, lhs=lhs, rhs=rhs, ratio=ratio)],
        bool(ok), dict(constant=C_suite, worst_ratio=ratio),
    )

"""Bilinear maps as coefficient tensors, Bil-norm estimates, and the
interpolation bound for bilinear operators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng as rng_mod
from .couples import FiniteCouple, WeightedNorm
from .interp import InterpolationSpec, k_method_norms
from .params import FunctionParameter, PreconditionError, classify, dilation, gamma_from_rho
from .reports import CheckReport
from .seqspaces import VectorSequence, sigma

__all__ = [
    "BilinearMap",
    "BilNormEstimate",
    "bil_norm",
    "convolution_representation",
    "theorem31_check",
    "rank1",
    "diagonal_decay",
    "random_tensor",
    "convolution_decay",
    "middle_window",
    "tensor_from_config",
    "exponent_r",
]

VERTEX_LIMIT = 16


@dataclass(frozen=True, eq=False)
class BilinearMap:
    """T(x, y)_l = sum_{i,j} coeffs[l, i, j] x_i y_j."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 3:
            raise ValueError("coefficients must form an order-3 tensor")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dims(self):
        return self.coeffs.shape

    def apply(self, x, y):
        """Batched over leading axes of x and y (broadcast together)."""
        return np.einsum("lij,...i,...j->...l", self.coeffs, x, y)

    def __call__(self, x, y):
        return self.apply(x, y)

    def scaled(self, a: float) -> "BilinearMap":
        return BilinearMap(a * self.coeffs)

    def compose(self, P=None, Q=None, R=None) -> "BilinearMap":
        """(x, y) -> R T(P x, Q y); any factor may be None (identity)."""
        c = self.coeffs
        if P is not None:
            c = np.einsum("lab,ai->lib", c, P)
        if Q is not None:
            c = np.einsum("lab,bj->laj", c, Q)
        if R is not None:
            c = np.einsum("kl,lij->kij", R, c)
        return BilinearMap(c)

    def masked(self, out=None, left=None, right=None) -> "BilinearMap":
        """Restrict to coordinate masks (diagonal projections)."""
        c = self.coeffs
        if out is not None:
            c = c * np.asarray(out, dtype=float)[:, None, None]
        if left is not None:
            c = c * np.asarray(left, dtype=float)[None, :, None]
        if right is not None:
            c = c * np.asarray(right, dtype=float)[None, None, :]
        return BilinearMap(c)


def rank1(a, b, c) -> BilinearMap:
    return BilinearMap(np.einsum("l,i,j->lij", np.asarray(c, float), np.asarray(a, float),
                                 np.asarray(b, float)))


def diagonal_decay(n: int, alpha: float, offset: int = 0) -> BilinearMap:
    """T(x, y)_i = 2^(-alpha |i - offset|) x_i y_i."""
    k = np.exp2(-alpha * np.abs(np.arange(n) - offset))
    c = np.zeros((n, n, n))
    idx = np.arange(n)
    c[idx, idx, idx] = k
    return BilinearMap(c)


def convolution_decay(M: int, alpha: float) -> BilinearMap:
    """Sequence-level tensor T(u, v)_s = sum_(k+l=s) 2^(-alpha(|k|+|l|)) u_k v_l.

    Inputs are indexed by |k| <= M and the output by |s| <= 2M.
    """
    k = np.arange(-M, M + 1)
    c = np.zeros((4 * M + 1, 2 * M + 1, 2 * M + 1))
    K, L = np.meshgrid(k, k, indexing="ij")
    c[(K + L + 2 * M).ravel(), (K + M).ravel(), (L + M).ravel()] = np.exp2(
        -alpha * (np.abs(K) + np.abs(L))).ravel()
    return BilinearMap(c)


def middle_window(M: int, support: int, alpha: float = 0.0) -> BilinearMap:
    """Diagonal sequence tensor supported on |k| <= support."""
    T = diagonal_decay(2 * M + 1, alpha, offset=M)
    mask = np.abs(np.arange(-M, M + 1)) <= support
    return T.masked(out=mask)


def random_tensor(shape, seed) -> BilinearMap:
    return BilinearMap(np.random.default_rng(seed).normal(size=tuple(shape)))


def tensor_from_config(cfg) -> BilinearMap:
    """Dense nested arrays, or {"generator": name, ...}."""
    if isinstance(cfg, list):
        return BilinearMap(np.asarray(cfg, dtype=float))
    cfg = dict(cfg)
    gen = cfg.pop("generator", None)
    if gen == "rank1":
        a, b, c = cfg.pop("a"), cfg.pop("b"), cfg.pop("c")
        out = rank1(a, b, c)
    elif gen == "diagonal_decay":
        n, alpha = int(cfg.pop("n")), float(cfg.pop("alpha"))
        offset = int(cfg.pop("offset", 0))
        out = diagonal_decay(n, alpha, offset)
    elif gen == "convolution_decay":
        M, alpha = int(cfg.pop("M")), float(cfg.pop("alpha"))
        out = convolution_decay(M, alpha)
    elif gen == "middle_window":
        M, support = int(cfg.pop("M")), int(cfg.pop("support"))
        out = middle_window(M, support, float(cfg.pop("alpha", 0.0)))
    elif gen == "random":
        shape, seed = cfg.pop("shape"), int(cfg.pop("seed"))
        out = random_tensor(shape, seed)
    else:
        raise ValueError(f"unknown tensor generator {gen!r}")
    if cfg:
        raise ValueError(f"unknown keys for tensor generator {gen}: {sorted(cfg)}")
    return out


# ---------------------------------------------------------------------------
# Bil-norm


@dataclass(frozen=True)
class BilNormEstimate:
    lower: float
    witness: tuple
    restarts: int
    exact_flag: bool
    converged: bool = True


def _vertices(norm: WeightedNorm):
    """Extreme points of the unit ball up to sign, or None."""
    n = norm.dim
    if norm.p == 1:
        return np.diag(1.0 / norm.weights)
    if math.isinf(norm.p):
        if n > VERTEX_LIMIT:
            return None
        k = np.arange(2 ** (n - 1))[:, None]
        bits = (k >> np.arange(n - 1)[None, :]) & 1
        signs = np.concatenate([np.ones((k.size, 1)), 1.0 - 2.0 * bits], axis=1)
        return signs / norm.weights
    return None


def _enumerate(T: BilinearMap, VX, VY, normZ, chunk=1 << 16):
    best, wit = -1.0, None
    nx, ny = VX.shape[0], VY.shape[0]
    # contract x first: (nx, L, M), then pair with every y vertex
    TX = np.einsum("lij,ai->alj", T.coeffs, VX)
    per = max(1, chunk // max(ny, 1))
    for lo in range(0, nx, per):
        Z = np.einsum("alj,bj->abl", TX[lo : lo + per], VY)
        v = np.asarray(normZ(Z))
        k = int(np.argmax(v))
        a, b = np.unravel_index(k, v.shape)
        if v[a, b] > best:
            best, wit = float(v[a, b]), (VX[lo + a].copy(), VY[b].copy())
    return best, wit


def bil_norm(T: BilinearMap, normX: WeightedNorm, normY: WeightedNorm, normZ,
             budget: int = 32, seed: int = 0, iters: int = 50) -> BilNormEstimate:
    """Lower bound of sup ||T(x, y)||_Z over the unit balls of X and Y.

    Exact by vertex enumeration when both input norms are weighted l1 or
    l^inf and every l^inf factor has dimension <= 16.
    Otherwise alternating ascent over (x, y, phi) with phi a norming
    functional of T(x, y); each step solves its linear subproblem exactly, so
    the value never decreases within a restart.
    """
    L, N, M = T.dims
    if normX.dim != N or normY.dim != M:
        raise ValueError("norm dimensions do not match the tensor")
    if not np.any(T.coeffs):
        x = np.zeros(N); y = np.zeros(M)
        return BilNormEstimate(0.0, (x, y), 0, True)
    VX, VY = _vertices(normX), _vertices(normY)
    if VX is not None and VY is not None:
        best, wit = _enumerate(T, VX, VY, normZ)
        return BilNormEstimate(best, wit, 0, True)
    if not isinstance(normZ, WeightedNorm):
        raise TypeError("alternating ascent needs a weighted target norm")
    best, wit, converged = -1.0, None, True
    C = T.coeffs
    for r in range(budget):
        g = rng_mod.stream(seed, "bil_norm", r)
        x = normX.argmax_linear(g.normal(size=N))
        y = normY.argmax_linear(g.normal(size=M))
        val = float(normZ(T.apply(x, y)))
        for it in range(iters):
            phi = normZ.norming_functional(T.apply(x, y))
            x = normX.argmax_linear(np.einsum("l,lij,j->i", phi, C, y))
            phi = normZ.norming_functional(T.apply(x, y))
            y = normY.argmax_linear(np.einsum("l,lij,i->j", phi, C, x))
            new = float(normZ(T.apply(x, y)))
            if new <= val * (1 + 1e-15):
                val = max(val, new)
                break
            val = new
        else:
            converged = False
        if val > best:
            best, wit = val, (x.copy(), y.copy())
    return BilNormEstimate(best, wit, budget, False, converged)


# ---------------------------------------------------------------------------
# convolution representation


def convolution_representation(T: BilinearMap, u: VectorSequence, v: VectorSequence) -> VectorSequence:
    """w_n = sum_m T(u_m, v_(n-m)), over the full output window |n| <= Mu + Mv.

    Terms with n - m outside v's window are zero.  Then sum_n w_n equals
    T(sigma(u), sigma(v)) up to rounding.
    """
    Mu, Mv = u.window, v.window
    Mw = Mu + Mv
    # pairwise images T(u_m, v_k) for all (m, k)
    P = np.einsum("lij,ai,bj->abl", T.coeffs, u.entries, v.entries)
    w = np.zeros((2 * Mw + 1, T.dims[0]))
    for a in range(2 * Mu + 1):
        # index n = m + k with m = a - Mu, k = b - Mv -> row a + b
        w[a : a + 2 * Mv + 1] += P[a]
    return VectorSequence(w)


def reconstruction_error(T: BilinearMap, u: VectorSequence, v: VectorSequence,
                         w: VectorSequence) -> float:
    lhs = sigma(w)
    rhs = T.apply(sigma(u), sigma(v))
    scale = max(1.0, float(np.abs(rhs).max()))
    return float(np.abs(lhs - rhs).max() / scale)


# ---------------------------------------------------------------------------
# interpolation bound


def exponent_r(p: float, q: float) -> float:
    """1/r = 1/p + 1/q - 1; needs 1/p + 1/q >= 1."""
    s = (0.0 if math.isinf(p) else 1.0 / p) + (0.0 if math.isinf(q) else 1.0 / q) - 1.0
    if s < 0:
        raise ValueError("1/p + 1/q must be >= 1")
    if s > 1:
        raise ValueError("p and q must be >= 1")
    return math.inf if s == 0 else 1.0 / s


def sampled_interp_bil(T: BilinearMap, cE, cF, cG, specE, specF, specG, rng,
                       n0: int = 256, rounds: int = 40):
    """Sampled lower bound of sup ||T(x,y)||_G / (||x||_E ||y||_F).

    Numerators use window values and denominators add the tail bounds, so
    every sampled ratio is a valid lower bound on the untruncated norm.
    """
    L, N, M = T.dims

    def ratios(X, Y):
        gv, _, _ = k_method_norms(cG, specG, T.apply(X, Y))
        ev, et, _ = k_method_norms(cE, specE, X)
        fv, ft, _ = k_method_norms(cF, specF, Y)
        return gv / ((ev + et) * (fv + ft))

    X = rng.normal(size=(n0, N)) * np.exp(rng.uniform(-2, 2, (n0, N)))
    Y = rng.normal(size=(n0, M)) * np.exp(rng.uniform(-2, 2, (n0, M)))
    # one-hot pairs are often extremal for l1-type structure
    I, J = np.meshgrid(np.arange(N), np.arange(M), indexing="ij")
    X = np.concatenate([X, np.eye(N)[I.ravel()]])
    Y = np.concatenate([Y, np.eye(M)[J.ravel()]])
    r = ratios(X, Y)
    k = int(np.argmax(r))
    best, bx, by = float(r[k]), X[k].copy(), Y[k].copy()
    scale = 0.5
    for _ in range(rounds):
        Px = bx[None, :] + scale * np.abs(bx).max() * rng.normal(size=(16, N))
        Py = by[None, :] + scale * np.abs(by).max() * rng.normal(size=(16, M))
        rp = ratios(Px, Py)
        j = int(np.argmax(rp))
        if rp[j] > best:
            best, bx, by = float(rp[j]), Px[j].copy(), Py[j].copy()
        else:
            scale *= 0.7
    return best, (bx, by)


def theorem31_check(T: BilinearMap, cE: FiniteCouple, cF: FiniteCouple, cG: FiniteCouple,
                    rho: FunctionParameter, p: float, q: float, W: int, budget: int,
                    seed: int, C_suite=None) -> CheckReport:
    """Interpolated Bil-norm against M0 rho_bar(M1 / M0) on
    E_{gamma,p} x F_{rho,q} -> G_{rho,r}."""
    if classify(rho).in_Bpm is not True:
        raise PreconditionError("theorem31_check needs a parameter in B+-")
    r = exponent_r(p, q)
    gamma = gamma_from_rho(rho)
    inputs = dict(T=T.coeffs, cE=cE.to_config(), cF=cF.to_config(), cG=cG.to_config(),
                  rho=rho.to_config(), p=p, q=q, W=W, budget=budget, seed=seed)
    e0 = bil_norm(T, cE.norm0, cF.norm0, cG.norm0, seed=seed)
    e1 = bil_norm(T, cE.norm1, cF.norm1, cG.norm1, seed=seed)
    M0, M1 = e0.lower, e1.lower
    if M0 == 0:
        return CheckReport("theorem31", inputs, {"C_suite": C_suite},
                           [dict(M0=0.0, M1=M1, lhs=0.0, ratio=0.0, r=r)], True,
                           dict(constant=C_suite, worst_ratio=0.0))
    specE = InterpolationSpec(gamma, p, "K", W)
    specF = InterpolationSpec(rho, q, "K", W)
    specG = InterpolationSpec(rho, r, "K", W)
    g = rng_mod.stream(seed, "theorem31")
    lhs, _ = sampled_interp_bil(T, cE, cF, cG, specE, specF, specG, g, rounds=budget)
    rhs = M0 * dilation(rho, M1 / M0)
    ratio = lhs / rhs
    ok = math.isfinite(ratio) and (C_suite is None or ratio <= C_suite)
    return CheckReport(
        "theorem31", inputs, {"C_suite": C_suite},
        [dict(M0=M0, M1=M1, M0_exact=e0.exact_flag, M1_exact=e1.exact_flag, lhs=lhs,
              rhs=rhs, ratio=ratio, r=r, gamma=gamma.to_config())],
        bool(ok), dict(constant=C_suite, worst_ratio=ratio),
    )

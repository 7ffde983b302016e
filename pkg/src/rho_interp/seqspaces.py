"""Vector-valued sequence spaces over a finite index window.

A sequence (u_m) with |m| <= M takes values in the coordinate space of a
couple.  Block norms are the Delta_m norms J(2^-m, .) of that couple, and the
two endpoint spaces weight block m by 2^(-k m) (k = 0, 1).

Two weightings appear and are kept apart on purpose: ``ell_rho_q_norm`` uses
rho(2^-m) per block, while the interpolation norms of module ``interp`` use
rho(2^n)^-1 per dyadic level.  With f(t) = 1 / rho(1/t) the first one is the
l^q_f norm of the second convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng as rng_mod
from .couples import FiniteCouple, WeightedNorm
from .interp import InterpolationSpec, k_method_norms, lq
from .params import FunctionParameter, PreconditionError, classify, eval_rho
from .reports import CheckReport

__all__ = [
    "VectorSequence",
    "DeltaNormFamily",
    "SequenceCouple",
    "ell_rho_q_norm",
    "sigma",
    "cutting",
    "cutting_norm_bounds",
    "theorem21_check",
    "embedding_check",
    "one_hot",
]


@dataclass(frozen=True, eq=False)
class VectorSequence:
    """Entries u_m for m = -M..M, stored as a (2M+1, N) array."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] % 2 != 1:
            raise ValueError("entries must have shape (2M+1, N)")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def window(self) -> int:
        return (self.entries.shape[0] - 1) // 2

    @property
    def dim(self) -> int:
        return self.entries.shape[1]

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.window, self.window + 1)

    def __getitem__(self, m: int) -> np.ndarray:
        if abs(m) > self.window:
            return np.zeros(self.dim)
        return self.entries[m + self.window]

    def __add__(self, other):
        return VectorSequence(self.entries + other.entries)

    def __neg__(self):
        return VectorSequence(-self.entries)

    def scale(self, a: float) -> "VectorSequence":
        return VectorSequence(a * self.entries)

    def flat(self) -> np.ndarray:
        return self.entries.reshape(-1)

    @classmethod
    def zeros(cls, M: int, N: int) -> "VectorSequence":
        return cls(np.zeros((2 * M + 1, N)))


def one_hot(M: int, m: int, u) -> VectorSequence:
    u = np.asarray(u, dtype=float)
    e = np.zeros((2 * M + 1, u.size))
    e[m + M] = u
    return VectorSequence(e)


@dataclass(frozen=True, eq=False)
class DeltaNormFamily:
    """||u||_m = J(2^-m, u) = max(||u||_0, 2^-m ||u||_1)."""

    couple: FiniteCouple

    def __call__(self, m, U):
        """Block norms for indices m (broadcast against the rows of U)."""
        U = np.asarray(U, dtype=float)
        m = np.asarray(m, dtype=float)
        return np.maximum(self.couple.norm0(U), np.exp2(-m) * self.couple.norm1(U))

    def block_norms(self, entries: np.ndarray) -> np.ndarray:
        """Norms of all blocks of (..., 2M+1, N) entries."""
        M = (entries.shape[-2] - 1) // 2
        return self(np.arange(-M, M + 1), entries)


def ell_rho_q_norm(seq: VectorSequence, norms, rho: FunctionParameter, q: float) -> float:
    """[ sum_m (rho(2^-m) ||u_m||_m)^q ]^(1/q) over the window."""
    m = seq.indices
    g = norms(m, seq.entries)
    return float(lq(eval_rho(rho, np.exp2(-m.astype(float))) * g, q))


def sigma(seq: VectorSequence) -> np.ndarray:
    return seq.entries.sum(axis=0)


def cutting(seq: VectorSequence, n: int):
    """(middle, plus, minus): |m| <= n, m >= n+1, m <= -n-1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    m = seq.indices[:, None]
    e = seq.entries
    mid = VectorSequence(np.where(np.abs(m) <= n, e, 0.0))
    plus = VectorSequence(np.where(m >= n + 1, e, 0.0))
    minus = VectorSequence(np.where(m <= -n - 1, e, 0.0))
    return mid, plus, minus


@dataclass(frozen=True, eq=False)
class SequenceCouple:
    """(l^p_0(G_m), l^p_1(G_m)): block norms weighted by 2^(-k m).

    Vectors handed to the couple protocol are flattened sequences of length
    (2M+1) * N.  The K-functional reduces to a weighted l^p couple on the
    vector of block norms: for lattice endpoints the optimal split keeps
    every block parallel to the original block.
    """

    blocks: object
    window: int
    dim_block: int
    p: float = 1.0

    @property
    def dim(self) -> int:
        return (2 * self.window + 1) * self.dim_block

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.window, self.window + 1)

    def _g(self, X):
        X = np.asarray(X, dtype=float)
        E = X.reshape(X.shape[:-1] + (2 * self.window + 1, self.dim_block))
        return self.blocks(self.indices, E)

    @property
    def reduced(self) -> FiniteCouple:
        m = self.indices.astype(float)
        return FiniteCouple(WeightedNorm(np.ones(m.size), self.p),
                            WeightedNorm(np.exp2(-m), self.p))

    def norm0(self, X):
        return self.reduced.norm0(self._g(X))

    def norm1(self, X):
        return self.reduced.norm1(self._g(X))

    def k_many(self, X, ts, tol=None):
        return self.reduced.k_many(self._g(X), ts, tol=tol)

    def to_config(self) -> dict:
        inner = getattr(self.blocks, "couple", None)
        return {"window": self.window, "p": self.p,
                "block_couple": None if inner is None else inner.to_config()}


def cutting_norm_bounds(couple: FiniteCouple, window: int, n: int, u=None) -> CheckReport:
    """Operator norms of the cutting operators between the l^1 endpoints.

    The endpoint norms are weighted l^1 sums over blocks, so the norm of a
    block-diagonal projection is the largest ratio over one-hot sequences.
    """
    delta = DeltaNormFamily(couple)
    N = couple.dim
    u = np.ones(N) if u is None else np.asarray(u, dtype=float)
    m = np.arange(-window, window + 1)
    g = delta(m, np.broadcast_to(u, (m.size, N)))
    w = {0: np.ones(m.size), 1: np.exp2(-m.astype(float))}
    keep = {"middle": np.abs(m) <= n, "plus": m >= n + 1, "minus": m <= -n - 1}
    norms = {}
    for name, mask in keep.items():
        for src in (0, 1):
            for dst in (0, 1):
                # one-hot at index m: ||P e_m||_dst / ||e_m||_src
                ratio = np.where(mask, w[dst] * g / (w[src] * g), 0.0)
                norms[(name, src, dst)] = float(ratio.max())
    expected = 2.0 ** -(n + 1) if window >= n + 1 else 0.0
    typed_plus = norms[("plus", 0, 1)]
    typed_minus = norms[("minus", 1, 0)]
    ap3 = typed_plus == expected and typed_minus == expected
    ap1 = norms[("middle", 0, 0)] <= 1 and norms[("middle", 1, 1)] <= 1
    bound = all(v <= 2.0**-n for v in (typed_plus, typed_minus))
    meas = [dict(operator=k[0], source=k[1], target=k[2], norm=v) for k, v in norms.items()]
    rep = CheckReport(
        "cutting",
        dict(couple=couple.to_config(), window=window, n=n, u=u),
        {},
        meas,
        bool(ap3 and ap1 and bound),
        dict(constant=2.0**-n, worst_ratio=max(typed_plus, typed_minus), expected=expected,
             plus_0_to_1=typed_plus, minus_1_to_0=typed_minus,
             plus_1_to_0=norms[("plus", 1, 0)], minus_0_to_1=norms[("minus", 0, 1)]),
    )
    rep.notes.append(
        "plus: endpoint 0 -> 1 and minus: endpoint 1 -> 0 carry the 2^-(n+1) bound; "
        "the opposite directions grow with the window"
    )
    return rep


def _sequence_samples(seed, check, samples, M, N):
    out = []
    for i in range(samples):
        g = rng_mod.stream(seed, check, i)
        e = g.normal(size=(2 * M + 1, N)) * np.exp(g.uniform(-2, 2, size=(2 * M + 1, 1)))
        # sparsify so some samples concentrate on a few blocks
        keep = g.random(2 * M + 1) < g.uniform(0.1, 1.0)
        if not keep.any():
            keep[g.integers(2 * M + 1)] = True
        out.append(e * keep[:, None])
    return np.stack(out)


def _f_weights(rho, M):
    # f(2^-m) = 1 / rho(2^m)
    m = np.arange(-M, M + 1, dtype=float)
    return 1.0 / eval_rho(rho, np.exp2(m))


def theorem21_check(couple, rho, q, W, samples, seed, M=8, spread_bound=None) -> CheckReport:
    """Interpolated norm of (l^q_0, l^q_1) against the direct l^q_f norm."""
    if classify(rho).in_Bpm is not True:
        raise PreconditionError("theorem21_check needs a parameter in B+-")
    delta = DeltaNormFamily(couple)
    sc = SequenceCouple(delta, M, couple.dim, p=q)
    spec = InterpolationSpec(rho, q, "K", W)
    S = _sequence_samples(seed, "theorem21", samples, M, couple.dim)
    X = S.reshape(samples, -1)
    interp_v, tails, _ = k_method_norms(sc, spec, X)
    direct = lq(_f_weights(rho, M) * delta.block_norms(S), q)
    ratio = interp_v / direct
    spread = float(ratio.max() / ratio.min())
    ok = np.all(np.isfinite(ratio)) and (spread_bound is None or spread <= spread_bound)
    rep = CheckReport(
        "theorem21",
        dict(couple=couple.to_config(), rho=rho.to_config(), q=q, W=W, M=M,
             samples=samples, seed=seed),
        {"spread_bound": spread_bound},
        [dict(index=i, interpolated=interp_v[i], tail=tails[i], direct=direct[i],
              ratio=ratio[i]) for i in range(samples)],
        bool(ok),
        dict(constant=spread_bound, worst_ratio=spread),
    )
    return rep


def embedding_check(couple, rho, q, W, samples, seed=0, M=8, C_bound=None) -> CheckReport:
    """Smallest C with ||a||_(l^1_0, l^1_1)_{rho,q} <= C ||a||_{l^q_f}."""
    delta = DeltaNormFamily(couple)
    sc = SequenceCouple(delta, M, couple.dim, p=1.0)
    spec = InterpolationSpec(rho, q, "K", W)
    S = _sequence_samples(seed, "embedding", samples, M, couple.dim)
    X = S.reshape(samples, -1)
    rhs, tails, _ = k_method_norms(sc, spec, X)
    lhs = lq(_f_weights(rho, M) * delta.block_norms(S), q)
    # the tail bound keeps the fitted constant valid for the untruncated norm
    ratio = (rhs + tails) / lhs
    C = float(ratio.max())
    ok = math.isfinite(C) and (C_bound is None or C <= C_bound)
    return CheckReport(
        "embedding",
        dict(couple=couple.to_config(), rho=rho.to_config(), q=q, W=W, M=M,
             samples=samples, seed=seed),
        {"C_bound": C_bound},
        [dict(index=i, interpolated=rhs[i], tail=tails[i], direct=lhs[i], ratio=ratio[i])
         for i in range(samples)],
        bool(ok),
        dict(constant=C_bound, worst_ratio=C),
    )

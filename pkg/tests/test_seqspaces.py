import math

import cvxpy as cp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rho_interp.couples import FiniteCouple, WeightedNorm, l1_linf, random_couple
from rho_interp.params import power
from rho_interp.seqspaces import (DeltaNormFamily, SequenceCouple, VectorSequence, cutting,
                                  cutting_norm_bounds, ell_rho_q_norm, embedding_check, one_hot,
                                  sigma, theorem21_check)

seqs = st.integers(0, 2**32 - 1)


def random_seq(seed, M=3, N=2):
    return VectorSequence(np.random.default_rng(seed).normal(size=(2 * M + 1, N)))


def test_sequence_validation():
    with pytest.raises(ValueError):
        VectorSequence(np.zeros((4, 2)))
    with pytest.raises(ValueError):
        VectorSequence(np.zeros(5))
    s = one_hot(2, -1, [1.0, 2.0])
    assert s.window == 2 and s.dim == 2
    np.testing.assert_array_equal(s[-1], [1.0, 2.0])
    np.testing.assert_array_equal(s[7], [0.0, 0.0])


@settings(max_examples=50, deadline=None)
@given(seqs, st.integers(0, 5))
def test_cutting_partitions(seed, n):
    s = random_seq(seed)
    mid, plus, minus = cutting(s, n)
    np.testing.assert_array_equal((mid + plus + minus).entries, s.entries)
    np.testing.assert_allclose(sigma(mid) + sigma(plus) + sigma(minus), sigma(s), atol=1e-12)
    m = s.indices
    assert not np.any(plus.entries[m < n + 1]) and not np.any(minus.entries[m > -n - 1])


def test_cutting_rejects_negative():
    with pytest.raises(ValueError):
        cutting(random_seq(0), -1)


@pytest.mark.parametrize("n", range(0, 8))
def test_cutting_norms_exact(n):
    rep = cutting_norm_bounds(random_couple(n, dim=2), 10, n)
    assert rep.passed
    assert rep.summary["plus_0_to_1"] == 2.0 ** -(n + 1)
    assert rep.summary["minus_1_to_0"] == 2.0 ** -(n + 1)


def test_delta_norm_family():
    d = DeltaNormFamily(l1_linf(2))
    # ||u||_m = max(|u|_1, 2^-m |u|_inf)
    assert d(0, [1.0, -3.0]) == 4.0
    assert d(-3, [1.0, -3.0]) == 24.0


@pytest.mark.parametrize("m", [-2, 0, 3])
@pytest.mark.parametrize("q", [1.0, 2.0, math.inf])
def test_ell_rho_q_one_hot(m, q):
    c = l1_linf(2)
    u = np.array([1.0, -0.5])
    d = DeltaNormFamily(c)
    got = ell_rho_q_norm(one_hot(4, m, u), d, power(0.5), q)
    assert got == pytest.approx(2.0 ** (-0.5 * m) * max(1.5, 2.0**-m), rel=1e-14)


def k_sequence_conic(sc, x, t):
    # K on the flat sequence with the composite block norms, no reduction used
    c = sc.blocks.couple
    E = x.reshape(2 * sc.window + 1, sc.dim_block)
    S = cp.Variable(E.shape)

    def blocks(V, which):
        out = []
        for row, m in enumerate(sc.indices):
            a = cp.norm(cp.multiply(c.norm0.weights, V[row]), c.norm0.p)
            b = cp.norm(cp.multiply(c.norm1.weights, V[row]), c.norm1.p)
            g = cp.maximum(a, 2.0**-m * b)
            out.append(g if which == 0 else 2.0**-m * g)
        return cp.norm(cp.hstack(out), sc.p)

    prob = cp.Problem(cp.Minimize(blocks(S, 0) + t * blocks(E - S, 1)))
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12,
               max_iter=500)
    return prob.value


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("p", [1.0, 2.0])
def test_sequence_k_reduction_matches_conic(seed, p):
    c = random_couple(seed, dim=2)
    sc = SequenceCouple(DeltaNormFamily(c), 2, 2, p=p)
    x = np.random.default_rng(seed).normal(size=sc.dim)
    for t in (0.3, 1.0, 5.0):
        got = float(sc.k_many(x[None, :], [t])[0, 0])
        assert got == pytest.approx(k_sequence_conic(sc, x, t), rel=1e-6)


def test_sequence_couple_config():
    sc = SequenceCouple(DeltaNormFamily(l1_linf(2)), 3, 2)
    cfg = sc.to_config()
    assert cfg["window"] == 3 and cfg["block_couple"]["dim"] == 2
    assert sc.dim == 14


@pytest.mark.parametrize("q", [1.0, 2.0, math.inf])
def test_theorem21_spread_small(q):
    c = FiniteCouple(WeightedNorm([1, 2, 0.5], 1.0), WeightedNorm([0.3, 1, 2], 1.0))
    rep = theorem21_check(c, power(0.5), q, 16, 20, seed=5, M=4, spread_bound=2.0)
    assert rep.passed


def test_theorem21_needs_bpm():
    from rho_interp.params import PreconditionError

    with pytest.raises(PreconditionError):
        theorem21_check(l1_linf(2), power(1.0), 1.0, 8, 5, seed=0)


@pytest.mark.parametrize("q", [1.0, 2.0, math.inf])
def test_embedding_constant_finite(q):
    rep = embedding_check(l1_linf(2), power(0.5), q, 16, 20, seed=5, M=4, C_bound=10.0)
    assert rep.passed and rep.summary["worst_ratio"] >= 1.0 - 1e-9 or q != 1.0

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rho_interp.bilinear import diagonal_decay, random_tensor
from rho_interp.compactness import (TERMS, PointCloud, ball_samples, class_j_constant,
                                    covering_number, covering_profile, diagonal_model,
                                    farthest_point, lemma42_witness, modulus, packing_lb,
                                    persson_check, theorem41_check, theorem43_steps,
                                    theorem51_ordered_variant, theorem52_check)
from rho_interp.couples import FiniteCouple, WeightedNorm, l1_linf
from rho_interp.interp import InterpolationSpec, class_J_check, k_method_norms
from rho_interp.oracles import cover_interval_exact
from rho_interp.params import PreconditionError, power
from rho_interp.seqspaces import DeltaNormFamily, SequenceCouple

seeds = st.integers(0, 2**32 - 1)
abs_norm = WeightedNorm([1.0], 1.0)
l2 = WeightedNorm(np.ones(2), 2.0)


def cloud1d(seed, n=30):
    return PointCloud(np.random.default_rng(seed).uniform(-5, 5, (n, 1)))


def test_point_cloud_validation():
    with pytest.raises(ValueError):
        PointCloud(np.zeros(3))
    c = PointCloud(np.ones((4, 2))).scaled(2.0)
    assert len(c) == 4 and c.provenance["scale"] == 2.0


@settings(max_examples=50, deadline=None)
@given(seeds, st.floats(0.05, 3.0))
def test_1d_cover_sandwich(seed, eps):
    # greedy centers from the cloud vs the exact minimum cover on a line
    c = cloud1d(seed)
    exact = cover_interval_exact(c.points[:, 0], eps)
    assert packing_lb(c, abs_norm, eps) <= exact <= covering_number(c, abs_norm, eps)
    # in-cloud centers cost at most a factor two in radius
    assert covering_number(c, abs_norm, 2 * eps) <= exact


@settings(max_examples=30, deadline=None)
@given(seeds, st.floats(0.05, 2.0), st.floats(0.1, 10.0))
def test_cover_monotone_and_scaling(seed, eps, a):
    c = PointCloud(np.random.default_rng(seed).normal(size=(40, 2)))
    assert covering_number(c, l2, eps) >= covering_number(c, l2, 2 * eps)
    assert covering_number(c.scaled(a), l2, a * eps) == covering_number(c, l2, eps)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_farthest_point_invariants(seed):
    P = np.random.default_rng(seed).normal(size=(25, 2))
    fp = farthest_point(P, l2)
    assert fp.complete and fp.radii[-1] == 0.0
    assert np.all(np.diff(fp.radii) <= 0)
    # the first k centers are pairwise at least radii[k-2] apart
    C = P[fp.centers]
    for k in range(2, len(C) + 1):
        D = np.array([[l2(C[i] - C[j]) for j in range(k)] for i in range(k)])
        D[np.diag_indices(k)] = np.inf
        assert D.min() >= fp.radii[k - 2] * (1 - 1e-12)


def test_farthest_point_snapshots():
    P = np.arange(10.0)[:, None]
    fp = farthest_point(P, abs_norm, k_max=3, snapshot_at=(1, 3, 7))
    assert fp.centers.tolist() == [0, 9, 4] or fp.centers.tolist() == [0, 9, 5]
    assert set(fp.snapshots) == {1, 3, 7}
    assert not fp.complete


def test_covering_rejects():
    with pytest.raises(ValueError):
        covering_number(cloud1d(0), abs_norm, 0.0)
    assert covering_number(PointCloud(np.zeros((0, 1))), abs_norm, 1.0) == 0


def test_profile_entropy_nonincreasing():
    c = PointCloud(np.random.default_rng(1).normal(size=(200, 2)))
    prof = covering_profile(c, l2, m_max=6)
    e = [v for v in prof.entropy_numbers if v is not None]
    assert all(b <= a for a, b in zip(e, e[1:]))
    assert all(p is None or k is None or p <= k for k, p in zip(prof.counts, prof.packing_lb))
    assert len(prof.rows()) == len(prof.epsilons)


def test_ball_samples_in_unit_ball():
    X = ball_samples(3, "t", 64, 5, WeightedNorm(np.ones(5), 1.0))
    np.testing.assert_allclose(np.abs(X).sum(axis=1), 1.0, rtol=1e-12)
    Y = ball_samples(3, "t", 64, 8, WeightedNorm(np.ones(8), 1.0))
    assert Y.shape == (64, 8)


def test_modulus():
    d = np.array([0.1, 0.5, 1.0])
    np.testing.assert_allclose(modulus(power(0.5), 2.0, 3.0, d), 2 * d * np.sqrt(6.0 / d))
    np.testing.assert_allclose(modulus(power(0.5), 2.0, 0.0, d), 2 * d)


@pytest.mark.parametrize("q", [1.0, math.inf])
def test_class_j_constant_dominates_samples(q):
    c = l1_linf(4)
    spec = InterpolationSpec(power(0.5), q, "K", 8)
    fit = class_J_check(lambda X: k_method_norms(c, spec, X)[0], c, power(0.5), 300, seed=2)
    assert fit.summary["fitted_C"] <= class_j_constant(spec) * (1 + 1e-9)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_lemma42_witness(seed):
    Ts = [random_tensor((2, 2, 2), seed + k) for k in range(3)]
    out = lemma42_witness(Ts, l2, l2, l2, [1e-12] * 3, seed=seed)
    for x, y, value, est in out:
        assert value >= est - 1e-12
        assert l2(x) <= 1 + 1e-12 and l2(y) <= 1 + 1e-12


def test_theorem41_small():
    spec = InterpolationSpec(power(0.5), 1.0, "K", 8)
    rep = theorem41_check(diagonal_decay(6, 0.5), l1_linf(6), spec, 64, seed=1, pairs=64)
    assert rep.passed and rep.summary["pair_ok"] and rep.summary["transfer_ok"]
    assert rep.summary["worst_ratio"] <= rep.constants["C_theory"]


def test_theorem41_needs_bpm():
    with pytest.raises(PreconditionError):
        theorem41_check(diagonal_decay(2, 0.5), l1_linf(2),
                        InterpolationSpec(power(1.0), 1.0, "K", 4), 8)


def steps_setup(M=8, alpha=2.5):
    sc = SequenceCouple(DeltaNormFamily(l1_linf(1)), M, 1, p=1.0)
    return diagonal_decay(2 * M + 1, alpha, offset=M), sc


def test_theorem43_small():
    T, sc = steps_setup()
    rep = theorem43_steps(T, sc, sc, power(0.5), 1.0, 1.0, 12, range(6), 0, seed=0, tol=1e-2)
    assert rep.passed
    terms = {row[1] for row in rep.tables["trajectories"]["rows"]}
    assert len(terms) == len(TERMS)


@pytest.mark.parametrize("ordering", ["statement", "remark"])
def test_theorem51_small(ordering):
    T, sc = steps_setup()
    L = T.dims[0]
    s = np.arange(L) - (L - 1) // 2
    cG = l1_linf(L, np.ones(L), np.exp2(-np.abs(s) / 2.0))
    rep = theorem51_ordered_variant(T, sc, sc, cG, power(0.5), 1.0, 1.0, 12, range(6), 0, 0,
                                    ordering=ordering, tol=1e-2)
    assert rep.passed and rep.summary["ordering"] == ordering


def test_theorem51_rejects_ordering():
    T, sc = steps_setup()
    with pytest.raises(ValueError):
        theorem51_ordered_variant(T, sc, sc, l1_linf(T.dims[0]), power(0.5), 1, 1, 8, [0], 0, 0,
                                  ordering="sideways")


def test_theorem52_small():
    models = {n: diagonal_model(n, 0.5) for n in (8, 16)}
    rep = theorem52_check(models, power(0.5), 1.0, 1.0, 8, seed=0, points=128, m_max=5)
    assert rep.summary["nonincreasing"] and rep.summary["transfer_ok"]
    assert rep.passed


def test_persson_small():
    N = 8
    c = FiniteCouple(WeightedNorm(np.ones(N), 1.0),
                     WeightedNorm(np.exp2(np.arange(N, dtype=float)), 1.0))
    rep = persson_check(diagonal_decay(N, 0.5), c, c, l1_linf(N), power(0.5), 1.0, 1.0, 8,
                        samples=64, seed=0)
    assert rep.passed and rep.summary["decreasing"] and rep.summary["zero_at_dim"]

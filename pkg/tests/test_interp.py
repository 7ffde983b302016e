import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rho_interp.couples import FiniteCouple, WeightedNorm, l1_linf, random_couple
from rho_interp.interp import (InterpolationSpec, class_J_check, class_K_check,
                               equivalence_check, j_method_norm, k_method_norm, k_method_norms,
                               linear_bound_check, lq, operator_norm, young_constant)
from rho_interp.oracles import j_conic, one_hot_power_norm
from rho_interp.params import PreconditionError, power

Q = [1.0, 2.0, math.inf]


def test_lq():
    v = np.array([3.0, 4.0])
    assert lq(v, 1) == 7 and lq(v, 2) == 5 and lq(v, math.inf) == 4
    assert lq(np.zeros(3), 2) == 0


@pytest.mark.parametrize("kw", [dict(window=0), dict(q=0.5), dict(method="X"),
                                dict(tail_mode="exact")])
def test_spec_rejects(kw):
    with pytest.raises(ValueError):
        InterpolationSpec(power(0.5), **kw)


@pytest.mark.parametrize("theta", [0.0, 1.0])
def test_j_method_needs_bpm(theta):
    with pytest.raises(PreconditionError):
        InterpolationSpec(power(theta), method="J")


@pytest.mark.parametrize("q", Q)
@pytest.mark.parametrize("theta", [0.3, 0.5, 0.7])
@pytest.mark.parametrize("m", [-3, 0, 5])
def test_k_norm_one_hot_geometric_sums(q, theta, m):
    # one coordinate with K(2^n, x) = g min(1, 2^(n - m))
    g, W = 1.7, 12
    c = FiniteCouple(WeightedNorm([1.0], 1.0), WeightedNorm([2.0**-m], 1.0))
    got = k_method_norm(c, InterpolationSpec(power(theta), q, "K", W), [g]).value
    assert got == pytest.approx(one_hot_power_norm(theta, q, W, m, g), rel=1e-12)


def test_k_norm_tail_bounds_window_gap():
    # the windowed value plus its tail bound dominates a much wider window
    c = random_couple(4, dim=3)
    x = np.array([1.0, -2.0, 0.3])
    for q in Q:
        narrow = k_method_norm(c, InterpolationSpec(power(0.4), q, "K", 6), x)
        wide = k_method_norm(c, InterpolationSpec(power(0.4), q, "K", 40), x)
        assert narrow.value <= wide.value * (1 + 1e-12)
        assert wide.value <= narrow.value + narrow.tail_bound + 1e-12


def test_k_norm_divergent_tail_flagged():
    res = k_method_norm(l1_linf(2), InterpolationSpec(power(1.0), 1.0, "K", 5), [1.0, 1.0])
    assert res.diverged and not res.converged and res.tail_bound == math.inf


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(Q), st.floats(0.1, 0.9))
def test_k_norm_is_a_norm(seed, q, theta):
    c = random_couple(seed)
    rng = np.random.default_rng(seed)
    x, y = rng.normal(size=(2, c.dim))
    spec = InterpolationSpec(power(theta), q, "K", 10)
    v = lambda z: float(k_method_norms(c, spec, z[None, :])[0][0])
    assert v(x + y) <= (v(x) + v(y)) * (1 + 1e-9)
    assert v(-2.5 * x) == pytest.approx(2.5 * v(x), rel=1e-9)


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("q", [1.0, math.inf])
def test_j_lp_route_matches_conic(seed, q):
    rng = np.random.default_rng(seed)
    c = l1_linf(3, np.exp(rng.uniform(-1, 1, 3)), np.exp(rng.uniform(-1, 1, 3)))
    x = rng.normal(size=3)
    spec = InterpolationSpec(power(0.4), q, "J", 4)
    r = j_method_norm(c, spec, x)
    ref = j_conic(c, x, spec.ts, spec.level_weights, q)
    assert r.value == pytest.approx(ref, rel=1e-6)
    assert r.lower <= ref * (1 + 1e-6)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("q", Q)
def test_j_brackets_conic(seed, q):
    c = random_couple(seed, dim=3)
    x = np.random.default_rng(seed).normal(size=3)
    spec = InterpolationSpec(power(0.4), q, "J", 4)
    r = j_method_norm(c, spec, x)
    ref = j_conic(c, x, spec.ts, spec.level_weights, q)
    assert ref * (1 - 1e-6) <= r.value <= 1.25 * ref
    assert r.lower <= ref * (1 + 1e-6)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(Q))
def test_j_dominates_k_over_young(seed, q):
    c = random_couple(seed, dim=2)
    x = np.random.default_rng(seed).normal(size=2)
    spec = InterpolationSpec(power(0.5), q, "J", 5)
    r = j_method_norm(c, spec, x)
    kv = k_method_norm(c, spec.with_(method="K"), x).value
    assert r.lower <= r.value * (1 + 1e-9)
    assert kv <= young_constant(spec) * r.value * (1 + 1e-9)


def test_j_proportional_ratio_constant():
    c = FiniteCouple(WeightedNorm([1.0, 2.0], 2.0), WeightedNorm([3.0, 6.0], 2.0))
    rep = equivalence_check(c, power(0.5), 2.0, 8, 10, seed=1)
    assert rep.summary["worst_ratio"] == pytest.approx(1.0, abs=1e-6)


def test_equivalence_check_reports():
    rep = equivalence_check(l1_linf(3, [1, 2, 0.5], [0.3, 1, 2]), power(0.5), 1.0, 8, 12, seed=3,
                            spread_bound=50.0)
    assert rep.passed and rep.summary["lower_bound_consistent"]
    assert 1.0 <= rep.summary["worst_ratio"] <= rep.summary["certified_spread"]
    assert len(rep.tables["ratios"]["rows"]) == 12


def test_operator_norm_exact_routes():
    T = np.array([[1.0, -2.0], [0.5, 3.0]])
    one = WeightedNorm([1.0, 1.0], 1.0)
    inf = WeightedNorm([1.0, 1.0], math.inf)
    assert operator_norm(T, one, one) == (5.0, True)
    assert operator_norm(T, inf, inf) == (3.5, True)
    val, exact = operator_norm(T, WeightedNorm([1, 1], 2.0), WeightedNorm([1, 1], 2.0))
    assert not exact
    assert val == pytest.approx(np.linalg.norm(T, 2), rel=1e-9)


def test_class_checks_on_endpoint_norms():
    # for E = E0 the class-J ratio is (|x|_1 / |x|_inf)^(1/2), in [1, sqrt(3)]
    c = l1_linf(3)
    rho = power(0.5)
    j = class_J_check(c.norm0, c, rho, 50, seed=2)
    k = class_K_check(c.norm0, c, rho, samples=50, seed=2)
    assert j.passed and k.passed
    assert 1.0 <= j.summary["fitted_C"] <= math.sqrt(3) + 1e-12


def test_linear_bound_identity_is_tight():
    c = l1_linf(2)
    rep = linear_bound_check(np.eye(2), c, c, power(0.5), 1.0, 20, 5, seed=0, C_suite=1.5)
    assert rep.passed and rep.summary["worst_ratio"] <= 1.0 + 1e-9


def test_linear_bound_shape_mismatch():
    with pytest.raises(ValueError):
        linear_bound_check(np.ones((2, 3)), l1_linf(2), l1_linf(2), power(0.5), 1.0, 5, 1, 0)

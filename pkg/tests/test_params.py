import math
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rho_interp.params import (FunctionParameter, PreconditionError,
                               boyd_indices, classify, dilation, eval_rho, gamma_from_rho,
                               piecewise, power, powerlog, table)

thetas = st.floats(0.05, 0.95)


@pytest.mark.parametrize("theta", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_power_boyd_indices(theta):
    b = boyd_indices(power(theta))
    for v in (b.alpha, b.beta, b.alpha_inf, b.beta_inf):
        assert v == pytest.approx(theta, abs=1e-12)


@pytest.mark.parametrize("theta", [0.2, 0.5, 0.8])
def test_power_integral_closed_form(theta):
    # int_0^inf min(1, 1/t) t^theta dt/t = 1/theta + 1/(1-theta)
    rep = classify(power(theta))
    assert rep.in_Bpm is True and rep.in_Ppm is True
    assert rep.integral_value == pytest.approx(1 / theta + 1 / (1 - theta), rel=1e-6)


def test_sqrt_integral_is_four():
    assert classify(power(0.5)).integral_value == pytest.approx(4.0, abs=1e-3)


@pytest.mark.parametrize("theta", [0.0, 1.0])
def test_endpoints_rejected(theta):
    rep = classify(power(theta))
    assert rep.in_Bpm is False
    assert rep.integral_value == math.inf
    with pytest.raises(PreconditionError):
        gamma_from_rho(power(theta))


@pytest.mark.parametrize("lo,hi", [(0.2, 0.7), (0.7, 0.2), (0.4, 0.4)])
def test_piecewise_indices(lo, hi):
    b = boyd_indices(piecewise(lo, hi))
    assert b.alpha == pytest.approx(max(lo, hi), abs=1e-9)
    assert b.beta == pytest.approx(min(lo, hi), abs=1e-9)


def test_piecewise_gamma_swaps_exponents():
    g = gamma_from_rho(piecewise(0.2, 0.7))
    assert (g.theta_minus, g.theta_plus) == (0.7, 0.2)


def test_power_gamma_is_itself():
    assert gamma_from_rho(power(0.3)).theta == 0.3


@pytest.mark.parametrize("a", [-1.0, 1.0])
def test_powerlog_in_bpm(a):
    rep = classify(powerlog(0.5, a))
    assert rep.in_Bpm is True
    b = boyd_indices(powerlog(0.5, a))
    assert b.beta <= 0.5 + 1e-12 <= b.alpha + 2e-12


def test_powerlog_dilation_even_in_log_exponent_up_to_grid():
    np.testing.assert_allclose(dilation(powerlog(0.5, 1.0), [0.1, 3.0, 50.0]),
                               dilation(powerlog(0.5, -1.0), [0.1, 3.0, 50.0]), rtol=1e-2)


def test_rho_normalized_at_one():
    for p in (power(0.3), powerlog(0.4, 1.0), piecewise(0.2, 0.6), table([(0.5, 0.7), (2, 1.4)])):
        assert eval_rho(p, 1.0) == pytest.approx(1.0)


def test_eval_rho_rejects_nonpositive():
    with pytest.raises(ValueError):
        eval_rho(power(0.5), [1.0, 0.0])
    with pytest.raises(ValueError):
        dilation(power(0.5), -1.0)


def test_table_is_indeterminate():
    rep = classify(table([(0.25, 0.5), (1.0, 1.0), (4.0, 2.0)]))
    assert rep.in_B is True
    assert rep.in_Bpm is None and rep.integral_value is None


@pytest.mark.parametrize("cfg", [
    {"family": "power"},
    {"family": "power", "theta": 0.5, "extra": 1},
    {"family": "nope", "theta": 0.5},
    {"family": "table", "points": [[1, 1]]},
])
def test_from_config_rejects(cfg):
    with pytest.raises(ValueError):
        FunctionParameter.from_config(cfg)


def test_from_config_roundtrip():
    p = FunctionParameter.from_config({"family": "powerlog", "theta": 0.4, "a": 2})
    assert p == powerlog(0.4, 2.0)


@settings(max_examples=40, deadline=None)
@given(thetas, st.floats(-6, 6), st.floats(-6, 6))
def test_dilation_submultiplicative(theta, a, b):
    p = piecewise(theta, min(0.95, theta + 0.2))
    s, t = 2.0**a, 2.0**b
    assert dilation(p, s * t) <= dilation(p, s) * dilation(p, t) * (1 + 1e-9)


@settings(max_examples=40, deadline=None)
@given(thetas, st.floats(-8, 8))
def test_dilation_dominates_ratio(theta, log_s):
    # rho(st) <= rho_bar(s) rho(t) at grid points t
    p = powerlog(theta, 1.0)
    s = 2.0**log_s
    ts = 2.0 ** np.linspace(-10, 10, 41)
    assert np.all(eval_rho(p, s * ts) <= dilation(p, s) * eval_rho(p, ts) * (1 + 1e-9))


@settings(max_examples=25, deadline=None)
@given(thetas)
def test_power_dilation_exact(theta):
    s = np.array([0.01, 0.5, 3.0, 100.0])
    np.testing.assert_allclose(dilation(power(theta), s), s**theta, rtol=1e-14)

"""Function parameters rho, their dilation functions and class membership.

A parameter is a positive function on (0, inf).  Every parameter is
normalized so that rho(1) = 1.  The dilation function

    rho_bar(s) = sup_t rho(s t) / rho(t)

is evaluated as a supremum over a geometric grid, except for the pure power
family where the closed form s**theta is used.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

__all__ = [
    "FunctionParameter",
    "DilationFunction",
    "BoydIndices",
    "ClassReport",
    "GridBoundaryWarning",
    "PreconditionError",
    "power",
    "powerlog",
    "piecewise",
    "table",
    "eval_rho",
    "dilation",
    "dilation_function",
    "boyd_indices",
    "classify",
    "gamma_from_rho",
]

FAMILIES = ("power", "powerlog", "piecewise", "table")

# exponents within this distance of a threshold count as on it; grid
# exponents carry rounding error of order 1e-15
_EXP_TOL = 1e-9


class GridBoundaryWarning(UserWarning):
    """The grid supremum sits on the grid edge and is still growing."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class FunctionParameter:
    """A function parameter from one of the supported families.

    ``octaves`` and ``per_octave`` describe the log grid
    ``t = 2**(k / per_octave)`` for ``|k| <= octaves * per_octave``.
    """

    family: str
    theta: float = 0.0
    a: float = 0.0
    theta_minus: float = 0.0
    theta_plus: float = 0.0
    points: tuple = ()
    octaves: int = 40
    per_octave: int = 32

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.octaves < 1 or self.per_octave < 1:
            raise ValueError("grid must have at least one octave and one point per octave")
        if self.family == "table":
            pts = tuple(sorted((float(t), float(r)) for t, r in self.points))
            if len(pts) < 2:
                raise ValueError("table needs at least two points")
            if any(t <= 0 or r <= 0 for t, r in pts):
                raise ValueError("table points must be positive")
            if len({t for t, _ in pts}) != len(pts):
                raise ValueError("table abscissae must be distinct")
            object.__setattr__(self, "points", pts)
        for name in ("theta", "a", "theta_minus", "theta_plus"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def from_config(cls, cfg: dict) -> "FunctionParameter":
        cfg = dict(cfg)
        family = cfg.pop("family", None)
        allowed = {
            "power": {"theta"},
            "powerlog": {"theta", "a"},
            "piecewise": {"theta_minus", "theta_plus"},
            "table": {"points"},
        }
        if family not in allowed:
            raise ValueError(f"unknown parameter family {family!r}")
        grid_keys = {"octaves", "per_octave"}
        unknown = set(cfg) - allowed[family] - grid_keys
        if unknown:
            raise ValueError(f"unknown keys for {family}: {sorted(unknown)}")
        missing = allowed[family] - set(cfg)
        if missing:
            raise ValueError(f"missing keys for {family}: {sorted(missing)}")
        if family == "table":
            cfg["points"] = tuple(tuple(p) for p in cfg["points"])
        return cls(family=family, **cfg)

    def to_config(self) -> dict:
        out = {"family": self.family}
        if self.family == "power":
            out["theta"] = self.theta
        elif self.family == "powerlog":
            out.update(theta=self.theta, a=self.a)
        elif self.family == "piecewise":
            out.update(theta_minus=self.theta_minus, theta_plus=self.theta_plus)
        else:
            out["points"] = [list(p) for p in self.points]
        if (self.octaves, self.per_octave) != (40, 32):
            out.update(octaves=self.octaves, per_octave=self.per_octave)
        return out

    @property
    def exact(self) -> bool:
        """True when rho_bar has a closed form used by ``dilation``."""
        return self.family == "power"

    def log_grid(self) -> np.ndarray:
        """Base-2 logarithms of the grid points."""
        n = self.octaves * self.per_octave
        return np.arange(-n, n + 1) / self.per_octave

    def __call__(self, t):
        return eval_rho(self, t)

    def log_eval(self, u):
        """Natural log of rho at ``t = exp(u)``, before normalization is needed.

        Every family here already has log rho(1) = 0 except tables.
        """
        u = np.asarray(u, dtype=float)
        if self.family == "power":
            return self.theta * u
        if self.family == "powerlog":
            return self.theta * u + self.a * np.log1p(np.abs(u))
        if self.family == "piecewise":
            return np.where(u < 0, self.theta_minus * u, self.theta_plus * u)
        lt = np.log([p[0] for p in self.points])
        lr = np.log([p[1] for p in self.points])
        return _loglinear(u, lt, lr) - _loglinear(np.zeros(()), lt, lr)


def _loglinear(u, lt, lr):
    # linear in log-log coordinates, extended linearly past the end segments
    u = np.asarray(u, dtype=float)
    idx = np.clip(np.searchsorted(lt, u) - 1, 0, len(lt) - 2)
    slope = (lr[idx + 1] - lr[idx]) / (lt[idx + 1] - lt[idx])
    return lr[idx] + slope * (u - lt[idx])


def power(theta: float, **grid) -> FunctionParameter:
    return FunctionParameter("power", theta=float(theta), **grid)


def powerlog(theta: float, a: float, **grid) -> FunctionParameter:
    return FunctionParameter("powerlog", theta=float(theta), a=float(a), **grid)


def piecewise(theta_minus: float, theta_plus: float, **grid) -> FunctionParameter:
    return FunctionParameter(
        "piecewise", theta_minus=float(theta_minus), theta_plus=float(theta_plus), **grid
    )


def table(points, **grid) -> FunctionParameter:
    return FunctionParameter("table", points=tuple(tuple(p) for p in points), **grid)


def eval_rho(p: FunctionParameter, t):
    """rho(t), normalized so that rho(1) = 1.  Accepts scalars or arrays."""
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("rho is defined for t > 0 only")
    out = np.exp(p.log_eval(np.log(arr)))
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# dilation function


@dataclass(frozen=True)
class DilationFunction:
    """rho_bar sampled on the parameter's log grid."""

    source: FunctionParameter
    log2_s: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    exact_flag: bool
    boundary: bool

    def __call__(self, s):
        return dilation(self.source, s)


def _grid_sup(p: FunctionParameter, log_s: np.ndarray):
    """Grid supremum of log rho(s t) - log rho(t) for each natural-log s.

    Returns (values, boundary_flag).
    """
    # the t-grid spans twice the s-range so that sup over t for any s in the
    # window is reached inside it
    n = 2 * p.octaves * p.per_octave
    lu = np.arange(-n, n + 1) / p.per_octave * math.log(2.0)
    base = p.log_eval(lu)
    flat = np.atleast_1d(log_s)
    out = np.empty(flat.shape)
    hit = False
    chunk = max(1, 4_000_000 // lu.size)
    for lo in range(0, flat.size, chunk):
        ls = flat[lo : lo + chunk, None]
        ratio = p.log_eval(ls + lu[None, :]) - base[None, :]
        k = np.argmax(ratio, axis=1)
        best = ratio[np.arange(ratio.shape[0]), k]
        out[lo : lo + chunk] = best
        edge = (k == 0) | (k == lu.size - 1)
        if np.any(edge):
            # growing at the edge means the true sup may lie outside the grid
            rows = np.nonzero(edge)[0]
            inner = np.where(k[rows] == 0, 1, lu.size - 2)
            if np.any(best[rows] > ratio[rows, inner] + 1e-12):
                hit = True
    return out.reshape(np.shape(log_s)), hit


@lru_cache(maxsize=64)
def _dilation_on_grid(p: FunctionParameter):
    log2_s = p.log_grid()
    if p.exact:
        vals = np.exp2(p.theta * log2_s)
        boundary = False
    else:
        lv, boundary = _grid_sup(p, log2_s * math.log(2.0))
        vals = np.exp(lv)
    log2_s.setflags(write=False)
    vals.setflags(write=False)
    return log2_s, vals, boundary


def dilation_function(p: FunctionParameter) -> DilationFunction:
    log2_s, vals, boundary = _dilation_on_grid(p)
    if boundary:
        warnings.warn(
            f"dilation supremum for {p.family} reaches the grid edge", GridBoundaryWarning,
            stacklevel=2,
        )
    return DilationFunction(p, log2_s, vals, p.exact, boundary)


def dilation(p: FunctionParameter, s):
    """rho_bar(s); closed form for the power family, grid supremum otherwise."""
    arr = np.asarray(s, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError("rho_bar is defined for s > 0 only")
    if p.exact:
        out = arr**p.theta
    else:
        lv, boundary = _grid_sup(p, np.log(arr))
        if boundary:
            warnings.warn(
                f"dilation supremum for {p.family} reaches the grid edge",
                GridBoundaryWarning,
                stacklevel=2,
            )
        out = np.exp(lv)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Boyd indices


@dataclass(frozen=True)
class BoydIndices:
    """alpha and beta as printed (suprema), plus the matching infima.

    ``alpha_inf`` and ``beta_inf`` are the infima of log rho_bar(t) / log t
    over t > 1 and t < 1.  By construction rho_bar(t) <= t**alpha for t >= 1
    and rho_bar(t) <= t**beta_inf for t <= 1 on the grid; these are the
    exponents the tail bounds use.
    """

    alpha: float
    beta: float
    alpha_inf: float
    beta_inf: float


def boyd_indices(d: DilationFunction | FunctionParameter) -> BoydIndices:
    if isinstance(d, FunctionParameter):
        d = dilation_function(d)
    ls = d.log2_s
    ratio = np.log2(d.values) / np.where(ls == 0, 1.0, ls)
    up = ratio[ls > 0]
    lo = ratio[ls < 0]
    return BoydIndices(
        alpha=float(up.max()), beta=float(lo.max()),
        alpha_inf=float(up.min()), beta_inf=float(lo.min()),
    )


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassReport:
    """Class membership; ``None`` marks an indeterminate answer.

    ``little_o_margin`` holds rho_bar(t) / max(1, t) at t = 2**k and
    t = 2**-k for k = 0..octaves, as two tuples.
    """

    in_B: bool
    in_Bpm: Optional[bool]
    in_Ppm: Optional[bool]
    integral_value: Optional[float]
    little_o_margin: tuple
    upper_integral_finite: Optional[bool]
    lower_integral_finite: Optional[bool]
    cross_check_7: Optional[bool]
    cross_check_8: Optional[bool]
    boundary: bool


def _segment_integral(u: np.ndarray, g: np.ndarray) -> float:
    """Integral of g du for g log-linear (geometric) between samples."""
    h = np.diff(u)
    g0, g1 = g[:-1], g[1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.log(g1 / g0)
        seg = np.where(np.abs(ratio) < 1e-12, h * 0.5 * (g0 + g1), h * (g1 - g0) / ratio)
    return float(seg.sum())


@lru_cache(maxsize=64)
def classify(p: FunctionParameter, quad_tol: float = 1e-4) -> ClassReport:
    d = dilation_function(p)
    idx = boyd_indices(d)
    ls, rb = d.log2_s, d.values
    in_B = bool(np.all(np.isfinite(rb)) and np.all(rb > 0))

    # integrand of (3) in u = ln t: min(1, 1/t) rho_bar(t)
    u = ls * math.log(2.0)
    g = np.minimum(1.0, np.exp(-u)) * rb
    window = _segment_integral(u, g)
    coarse = _segment_integral(u[::2], g[::2])
    quad_ok = abs(window - coarse) <= quad_tol * max(window, 1e-300)

    tabulated = p.family == "table"
    eps = _EXP_TOL
    f_max = idx.alpha  # rho_bar(t) <= t**f_max for t >= 1
    e_min = idx.beta_inf  # rho_bar(t) <= t**e_min for t <= 1
    rb_top, rb_bot = float(rb[-1]), float(rb[0])
    T = 2.0**p.octaves

    # tails of (3) by submultiplicativity: on [T^k, T^(k+1)] the integrand is at
    # most rho_bar(T)^k / T^k times its value on the window [1, T], so each tail
    # is the window half times a geometric series in r = rho_bar(T) / T
    # (resp. rho_bar(1/T)).
    up_half = _segment_integral(u[ls >= 0], g[ls >= 0])
    lo_half = _segment_integral(u[ls <= 0], g[ls <= 0])
    r_up, r_lo = rb_top / T, rb_bot
    if tabulated:
        up_tail, lo_tail = None, None
    else:
        if r_up < 1 - eps:
            up_tail = up_half * r_up / (1.0 - r_up)
        else:
            up_tail = math.inf if idx.beta_inf >= 1 - eps else None
        if r_lo < 1 - eps:
            lo_tail = lo_half * r_lo / (1.0 - r_lo)
        else:
            lo_tail = math.inf if f_max <= eps else None

    if up_tail is None or lo_tail is None or not quad_ok:
        in_Bpm, integral = None, None
    elif math.isinf(up_tail) or math.isinf(lo_tail):
        in_Bpm, integral = False, math.inf
    else:
        in_Bpm, integral = True, window + up_tail + lo_tail

    # cross checks: int_1^inf rho_bar dt/t and int_0^1 rho_bar dt/t
    if tabulated:
        upper_finite = lower_finite = None
    else:
        upper_finite = True if idx.alpha < -eps else (False if idx.beta_inf >= -eps else None)
        lower_finite = True if idx.beta_inf > eps else (False if idx.alpha <= eps else None)
    cross7 = None if upper_finite is None else (idx.alpha < -eps) == upper_finite
    cross8 = None if lower_finite is None else (idx.beta > eps) == lower_finite

    ppo = p.per_octave
    k_up = rb[ls >= 0][::ppo] / np.exp2(ls[ls >= 0][::ppo])
    k_dn = rb[ls <= 0][::-1][::ppo]
    margin = (tuple(float(v) for v in k_up), tuple(float(v) for v in k_dn))
    if tabulated:
        in_Ppm = None
    else:
        mono = bool(np.all(np.diff(k_up) <= 1e-12) and np.all(np.diff(k_dn) <= 1e-12))
        in_Ppm = bool(f_max < 1 - eps and e_min > eps and mono)

    return ClassReport(
        in_B=in_B, in_Bpm=in_Bpm, in_Ppm=in_Ppm, integral_value=integral,
        little_o_margin=margin, upper_integral_finite=upper_finite,
        lower_integral_finite=lower_finite, cross_check_7=cross7, cross_check_8=cross8,
        boundary=d.boundary,
    )


def gamma_from_rho(p: FunctionParameter) -> FunctionParameter:
    """gamma(t) = 1 / rho_bar(1/t), returned in closed form.

    power theta      -> power theta
    piecewise (m, p) -> piecewise (max, min)
    powerlog (t, a)  -> powerlog (t, -|a|)
    """
    rep = classify(p)
    if rep.in_Bpm is not True:
        raise PreconditionError("gamma_from_rho needs a parameter in B+-")
    grid = dict(octaves=p.octaves, per_octave=p.per_octave)
    if p.family == "power":
        g = power(p.theta, **grid)
    elif p.family == "piecewise":
        hi, lo = max(p.theta_minus, p.theta_plus), min(p.theta_minus, p.theta_plus)
        g = piecewise(hi, lo, **grid)
    elif p.family == "powerlog":
        g = powerlog(p.theta, -abs(p.a), **grid)
    else:  # pragma: no cover - tables never reach B+- certification
        raise PreconditionError("no closed form for tabulated parameters")
    if classify(g).in_Bpm is not True:
        raise PreconditionError("gamma is not in B+-")
    return g

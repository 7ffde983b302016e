"""Independent reference computations used to cross-check the solvers.

Nothing here shares code paths with the production routes in ``couples``:
the conic oracle solves the unrestricted K problem (no lattice split
assumption) with a generic convex solver, and the grid oracle is plain brute
force.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .couples import FiniteCouple

__all__ = ["k_conic", "k_grid", "k_rearrangement", "cover_interval_exact", "j_conic",
           "one_hot_power_norm"]


def _cvx_norm(cp, v, norm):
    w = norm.weights
    p = norm.p
    if math.isinf(p):
        return cp.norm(cp.multiply(w, v), "inf")
    return cp.pnorm(cp.multiply(w, v), p)


def k_conic(c: FiniteCouple, x, t: float) -> float:
    """K(t, x) over all decompositions x = x0 + x1, solved as a conic program."""
    import cvxpy as cp

    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    x0 = cp.Variable(x.size)
    obj = _cvx_norm(cp, x0, c.norm0) + t * _cvx_norm(cp, x - x0, c.norm1)
    prob = cp.Problem(cp.Minimize(obj))
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12,
               tol_feas=1e-12, max_iter=500)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError(f"conic oracle failed: {prob.status}")
    # re-evaluate the objective at the returned point so the value is an
    # honest upper bound
    s = np.asarray(x0.value, dtype=float)
    return float(c.norm0(s) + t * c.norm1(x - s))


def k_grid(c: FiniteCouple, x, t: float, points: int = 11, rounds: int = 400,
           keep: int | None = None, rtol: float = 1e-14) -> float:
    """Brute-force K over a zooming grid of splits.

    Any split s with ||s||_0 <= min(||x||_0, t ||x||_1) satisfies
    |s_i| <= that bound / w0_i, which gives the first box (no sign or
    lattice assumption).  Each round the grid is laid out in the principal
    axes of the ``keep`` best points of the previous round and covers their
    extent plus one grid step, so it follows narrow diagonal valleys that an
    axis-aligned box cannot shrink around.  Exponential cost in dim; meant
    for dim <= 3.
    """
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    d = x.size
    keep = 2 * 3**d if keep is None else keep
    w0 = c.norm0.weights
    bound = min(float(c.norm0(x)), t * float(c.norm1(x)))
    center, frame, half = np.zeros(d), np.eye(d), bound / w0
    scale = float(np.max(bound / w0))
    best = math.inf
    u = np.linspace(-1.0, 1.0, points)
    unit = np.array(list(itertools.product(u, repeat=d)))
    for _ in range(rounds):
        S = center + (unit * half) @ frame.T
        vals = c.norm0(S) + t * c.norm1(x[None, :] - S)
        best = min(best, float(vals.min()))
        step = 2.0 * half / (points - 1)
        top = S[np.argpartition(vals, keep)[:keep]]
        mean = top.mean(axis=0)
        _, _, vt = np.linalg.svd(top - mean, full_matrices=False)
        new_frame = vt.T if vt.shape[0] == d else np.eye(d)
        coords = (top - mean) @ new_frame
        lo, hi = coords.min(axis=0), coords.max(axis=0)
        # old grid steps expressed along the new axes
        pad = np.abs(new_frame.T @ frame) @ step
        center = mean + new_frame @ (0.5 * (lo + hi))
        half = 0.5 * (hi - lo) + pad
        frame = new_frame
        if np.max(half) <= rtol * scale:
            break
    return best


def k_rearrangement(x, t: float) -> float:
    """Unit-weight l1 / l^inf: sum of the floor(t) largest |x_i| plus the
    fractional part of t times the next one."""
    v = np.sort(np.abs(np.asarray(x, dtype=float)))[::-1]
    n = int(math.floor(t))
    if n >= v.size:
        return float(v.sum())
    return float(v[:n].sum() + (t - n) * v[n])


def cover_interval_exact(points, eps: float) -> int:
    """Minimum number of closed eps-balls covering points on the real line."""
    pts = np.sort(np.asarray(points, dtype=float))
    count, i = 0, 0
    while i < pts.size:
        count += 1
        reach = pts[i] + 2 * eps
        while i < pts.size and pts[i] <= reach + 1e-12:
            i += 1
    return count


def j_conic(c: FiniteCouple, x, ts, weights, q: float) -> float:
    """Windowed J-norm: min || (w_n J(t_n, u_n))_n ||_q subject to sum u_n = x."""
    import cvxpy as cp

    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return 0.0
    L = len(ts)
    U = cp.Variable((L, x.size))
    z = cp.Variable(L)
    cons = [cp.sum(U, axis=0) == x]
    for n in range(L):
        cons += [z[n] >= weights[n] * _cvx_norm(cp, U[n], c.norm0),
                 z[n] >= weights[n] * ts[n] * _cvx_norm(cp, U[n], c.norm1)]
    obj = cp.norm(z, "inf") if math.isinf(q) else cp.pnorm(z, q)
    prob = cp.Problem(cp.Minimize(obj), cons)
    prob.solve(solver=cp.CLARABEL)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError(f"conic oracle failed: {prob.status}")
    return float(prob.value)


def one_hot_power_norm(theta: float, q: float, W: int, m: int, g: float) -> float:
    """K-method norm of a one-hot sequence with block norm g at index m.

    K(2^n, .) = g min(1, 2^(n-m)) and the level weights are 2^(-theta n), so
    the l^q sum over |n| <= W splits into two geometric series.
    """
    if math.isinf(q):
        # the level values rise up to n = m and fall after it
        n = min(max(m, -W), W)
        return g * 2.0 ** (-theta * n) * min(1.0, 2.0 ** (n - m))

    def geom(r, a, b):
        # sum_{n=a}^{b} r^n
        if b < a:
            return 0.0
        if r == 1.0:
            return float(b - a + 1)
        return (r ** a - r ** (b + 1)) / (1.0 - r)

    split = min(max(m, -W - 1), W)
    low = 2.0 ** (-q * m) * geom(2.0 ** (q * (1.0 - theta)), -W, split)
    high = geom(2.0 ** (-q * theta), split + 1, W)
    return g * (low + high) ** (1.0 / q)

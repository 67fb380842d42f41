"""Scalar and vectorised 1-D solvers used by the entropy and threshold code.

Both inverters assume ``func`` is increasing on ``[lo, hi]`` and that
``func(lo) <= target <= func(hi)``.  Callers with decreasing functions pass
a negated function and target.
"""

import math

import numpy as np

from .errors import NumericalFailure

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _polish(func, deriv, target, x, lo, hi, steps):
    resid = func(x) - target
    for _ in range(steps):
        slope = deriv(x)
        if not slope or not math.isfinite(slope):
            break
        x_new = x - resid / slope
        if not lo <= x_new <= hi:
            break
        resid_new = func(x_new) - target
        if abs(resid_new) > abs(resid):
            break
        x, resid = x_new, resid_new
    return x


MAX_BISECTIONS = 2200  # enough to walk the whole double exponent range


def invert_increasing(func, target, lo, hi, deriv=None, rtol=1e-13,
                      newton_steps=2, max_iter=MAX_BISECTIONS):
    """Solve ``func(x) = target`` for scalar ``target`` by bisection.

    Bisection stops once the bracket is narrower than ``rtol`` times its
    larger end, so tiny roots keep their relative accuracy; up to
    ``newton_steps`` guarded Newton steps then restore the last bits.
    """
    lo, hi = float(lo), float(hi)
    f_lo, f_hi = func(lo), func(hi)
    if target <= f_lo:
        return lo
    if target >= f_hi:
        return hi
    lo0, hi0 = lo, hi
    for _ in range(max_iter):
        if hi - lo <= rtol * max(abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if func(mid) < target:
            lo = mid
        else:
            hi = mid
    else:
        raise NumericalFailure(
            f"bisection did not converge on [{lo0}, {hi0}] for target {target}")
    x = 0.5 * (lo + hi)
    if deriv is not None and newton_steps:
        x = _polish(func, deriv, target, x, lo0, hi0, newton_steps)
    return x


def invert_increasing_array(func, target, lo, hi, deriv=None, rtol=1e-13,
                            newton_steps=2, max_iter=MAX_BISECTIONS):
    """Vectorised :func:`invert_increasing`; ``func`` must accept arrays."""
    target = np.asarray(target, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), target.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), target.shape).copy()
    lo0, hi0 = lo.copy(), hi.copy()
    for _ in range(max_iter):
        active = (hi - lo) > rtol * np.maximum(np.abs(lo), np.abs(hi))
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        active &= ~stuck
        if not active.any():
            break
        below = func(mid) < target
        lo = np.where(active & below, mid, lo)
        hi = np.where(active & ~below, mid, hi)
    else:
        raise NumericalFailure("vectorised bisection did not converge")
    x = 0.5 * (lo + hi)
    if deriv is not None:
        resid = func(x) - target
        for _ in range(newton_steps):
            with np.errstate(divide="ignore", invalid="ignore"):
                x_new = x - resid / deriv(x)
            ok = np.isfinite(x_new) & (x_new >= lo0) & (x_new <= hi0)
            x_new = np.where(ok, x_new, x)
            resid_new = func(x_new) - target
            better = np.abs(resid_new) <= np.abs(resid)
            x = np.where(better, x_new, x)
            resid = np.where(better, resid_new, resid)
    return x


def golden_section_max(func, lo, hi, xtol=1e-12, max_iter=500):
    """Maximise a unimodal ``func`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = float(lo), float(hi)
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = func(x1), func(x2)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = func(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = func(x1)
    x = 0.5 * (a + b)
    fx = func(x)
    best = max((fx, x), (f1, x1), (f2, x2))
    return best[1], best[0]

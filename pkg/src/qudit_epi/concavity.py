"""Concavity thresholds for functions of the von Neumann entropy.

The central object is the two-valued distribution

    q_{k,x} = (x, ..., x, y, ..., y)     (k copies of x, d-k copies of y)

with k x + (d-k) y = 1 and 0 <= x <= 1/d.  For k = d-1 its entropy and
surprisal variance are ``s_r`` and ``w_r`` (r = d-1), which fix the largest
c for which exp(c H) is concave and drive the photon-number condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import entr

from ._solvers import golden_section_max, invert_increasing
from .entropies import EntropyFunctional, g, g_inv, k as k_func
from .errors import DomainError, InfeasibleEntropy
from .states import random_state, spectrum

X_SLACK = 1e-15
EPNI_TOL = 1e-10
FUZZ_TOL = 1e-9


@dataclass(frozen=True)
class TwoValuedDist:
    d: int
    k: int
    x: float

    def __post_init__(self):
        if not 1 <= self.k <= self.d:
            raise DomainError(f"need 1 <= k <= d, got k={self.k}, d={self.d}")
        if not 0.0 <= self.x <= 1.0 / self.d + X_SLACK:
            raise DomainError(f"x must lie in [0, 1/d], got {self.x}")

    @property
    def y(self) -> float:
        if self.k == self.d:
            return 1.0 / self.d
        return (1.0 - self.k * self.x) / (self.d - self.k)

    def probs(self) -> np.ndarray:
        return np.array([self.x] * self.k + [self.y] * (self.d - self.k))


def _check_x(x, r):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > 1.0 / (r + 1) + X_SLACK):
        raise DomainError(f"x must lie in [0, 1/{r + 1}]")
    return x


def _ret(out, like):
    return float(out) if np.ndim(like) == 0 else out


def s_r(x, r):
    """Entropy of q_{r,x}: -r x log x - (1 - r x) log(1 - r x)."""
    xa = _check_x(x, r)
    out = r * entr(xa) - (1.0 - r * xa) * np.log1p(-r * xa)
    return _ret(out, x)


def w_r(x, r):
    """Surprisal variance of q_{r,x}: r x (1 - r x) (log x - log(1 - r x))^2."""
    xa = _check_x(x, r)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = r * xa * (1.0 - r * xa) * (np.log(xa) - np.log1p(-r * xa)) ** 2
    out = np.where(xa > 0, out, 0.0)
    return _ret(out, x)


def family_entropy(d, k, x):
    """H(q_{k,x}) for the length-d family with k small entries."""
    xa = np.asarray(x, dtype=float)
    log_y = np.log1p(-k * xa) - math.log(d - k)
    return _ret(k * entr(xa) - (1.0 - k * xa) * log_y, x)


def family_second_moment(d, k, x):
    """L(q_{k,x}) = sum q_i (log q_i)^2."""
    xa = np.asarray(x, dtype=float)
    log_y = np.log1p(-k * xa) - math.log(d - k)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.where(xa > 0, k * xa * np.log(xa) ** 2, 0.0)
    return _ret(small + (1.0 - k * xa) * log_y ** 2, x)


def family_locus(K, k, samples=200):
    """Points (H, L) of q_{k,x} as x runs over [0, 1/K]."""
    x = np.linspace(0.0, 1.0 / K, samples)
    return family_entropy(K, k, x), family_second_moment(K, k, x)


class LMaxResult(NamedTuple):
    l_max: float
    k_star: int
    x_star: float


def _solve_family_x(d, k, h0, grid):
    """All x in [0, 1/d] with H(q_{k,x}) = h0, bracketed on a grid.

    dH/dx = k log(y/x) >= 0, so each k contributes at most one root, but the
    grid scan does not rely on that.
    """
    xs = np.linspace(0.0, 1.0 / d, grid)
    hs = family_entropy(d, k, xs) - h0
    roots = []
    exact = np.flatnonzero(hs == 0)
    roots.extend(float(xs[i]) for i in exact)
    crossings = np.flatnonzero((hs[:-1] < 0) & (hs[1:] > 0))
    for i in crossings:
        roots.append(invert_increasing(lambda t: family_entropy(d, k, t), h0,
                                       xs[i], xs[i + 1], rtol=1e-16))
    return roots


def l_max_bruteforce(d, h0, grid=1000) -> LMaxResult:
    """Maximise L(q) over the two-valued families at fixed entropy ``h0``.

    Searches every k in 1..d-1; ties go to the larger k (at h0 = log d all
    families meet at the uniform distribution).
    """
    if grid < 1000:
        raise DomainError(f"grid must be at least 1000, got {grid}")
    log_d = math.log(d)
    if not -1e-15 <= h0 <= log_d + 1e-15:
        raise InfeasibleEntropy(f"entropy {h0} outside [0, log {d}]")
    if h0 >= log_d - 1e-15:
        return LMaxResult(log_d ** 2, d - 1, 1.0 / d)
    h0 = max(h0, 0.0)
    best = None
    for k in range(d - 1, 0, -1):
        if h0 < math.log(d - k):
            continue
        for x in _solve_family_x(d, k, h0, grid):
            val = family_second_moment(d, k, x)
            if best is None or val > best.l_max:
                best = LMaxResult(val, k, x)
    if best is None:
        raise InfeasibleEntropy(f"no two-valued distribution reaches entropy {h0}")
    return best


@dataclass(frozen=True)
class ThresholdResult:
    d: int
    c_max: float
    argmax_x: float
    lower_bound: float

    @property
    def max_w(self) -> float:
        return 1.0 / self.c_max


def c_max_lower_bound(d) -> float:
    """1 / [(1 + log(d-1))/2 + (log(d-1))^2 / 4]."""
    lr = math.log(d - 1)
    return 1.0 / ((1.0 + lr) / 2.0 + lr * lr / 4.0)


def c_max_entropy_power(d, grid=10_000) -> ThresholdResult:
    """Largest c with exp(c H) concave on d-dim states: 1 / max_x w_{d-1}(x).

    ``w_{d-1}`` is not known to be unimodal, so a dense grid picks the
    basin before golden-section refinement.
    """
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    r = d - 1
    xs = np.linspace(0.0, 1.0 / d, grid)
    ws = w_r(xs, r)
    i = int(np.argmax(ws))
    lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)]
    x_star, w_max = golden_section_max(lambda t: w_r(t, r), lo, hi, xtol=1e-12)
    if ws[i] > w_max:
        x_star, w_max = float(xs[i]), float(ws[i])
    return ThresholdResult(d, 1.0 / w_max, x_star, c_max_lower_bound(d))


class EPnICheck(NamedTuple):
    holds: bool
    worst_margin: float


def epni_margins(d, c, grid=10_000):
    """Grid x in (0, 1/d] and margins k(y) - c w_r(x) where g(y) = c s_r(x)."""
    if c <= 0:
        raise DomainError(f"c must be positive, got {c}")
    r = d - 1
    xs = np.linspace(0.0, 1.0 / d, grid + 1)[1:]
    ys = g_inv(c * s_r(xs, r))
    return xs, k_func(ys) - c * w_r(xs, r)


def epni_condition_check(d, c, grid=10_000, tol=EPNI_TOL) -> EPnICheck:
    """Check that g(y) = c s_r(x) implies k(y) >= c w_r(x) on a grid."""
    if grid < 1000:
        raise DomainError(f"grid must be at least 1000, got {grid}")
    _, margins = epni_margins(d, c, grid)
    worst = float(margins.min())
    return EPnICheck(worst >= -tol, worst)


def concavity_fuzz(f: EntropyFunctional, d, trials, seed, force=False) -> float:
    """Worst midpoint-concavity margin of f along random segments.

    For each trial, random states rho, sigma (random ranks) and points
    p1, p2 in [0, 1] are drawn from a generator seeded by (seed, trial);
    the margin is phi((p1+p2)/2) - (phi(p1) + phi(p2))/2 with
    phi(p) = f(p rho + (1-p) sigma).
    """
    if not force:
        f.require_certified(d)
    worst = math.inf
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        rho = random_state(d, int(rng.integers(1, d + 1)), rng).data
        sigma = random_state(d, int(rng.integers(1, d + 1)), rng).data
        p1, p2 = rng.random(2)

        def phi(p):
            return f(spectrum(p * rho + (1.0 - p) * sigma))

        margin = phi(0.5 * (p1 + p2)) - 0.5 * (phi(p1) + phi(p2))
        worst = min(worst, margin)
    return worst


def gk_grid(samples=400) -> np.ndarray:
    """y values log-spaced over [1e-6, 1e6]."""
    if samples < 2:
        raise DomainError("need at least two samples")
    return np.logspace(-6, 6, samples)


def parametric_gk_curve(samples=400):
    """Points (g(y), k(y)) on :func:`gk_grid`.

    Past a couple of thousand samples the slopes near k = 1 are dominated by
    rounding, so the default stays well below that.
    """
    return [(g(float(y)), k_func(float(y))) for y in gk_grid(samples)]


def curve_slopes(points):
    pts = np.asarray(points, dtype=float)
    return np.diff(pts[:, 1]) / np.diff(pts[:, 0])

"""Spectral entropy functionals and the scalar helpers g, k and ell.

Everything is in nats.  Spectral functions accept a :class:`Spectrum`, a
state, or a probability vector, and use the convention 0 log 0 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import mpmath
import numpy as np
from scipy.special import entr, xlog1py

from ._solvers import invert_increasing, invert_increasing_array
from .errors import DomainError, OutOfCertifiedRange
from .states import Spectrum, as_spectrum

LOG2 = math.log(2.0)

# Eigenvalues at or below this are numerical zeros (eigvalsh noise on
# rank-deficient states sits around 1e-17). Rényi entropies with small
# alpha would otherwise amplify that noise to ~1e-4.
ZERO_EIG = 1e-13

SUBENTROPY_DEGENERACY = 1e-7
SUBENTROPY_SPREAD = 1e-5

_K_TAIL = (1 / 12, -1 / 12, 13 / 180, -11 / 180, 29 / 560, -223 / 5040, 481 / 12600)


def _probs(s) -> np.ndarray:
    return s.values if isinstance(s, Spectrum) else as_spectrum(s).values


def _is_scalar(x) -> bool:
    return np.ndim(x) == 0


# --------------------------------------------------------------------------
# spectral functionals

def von_neumann(s) -> float:
    """Shannon entropy of the spectrum, in nats."""
    return float(max(entr(_probs(s)).sum(), 0.0))


def binary_entropy(p):
    return entr(p) + entr(1.0 - np.asarray(p, dtype=float))


def renyi(s, alpha) -> float:
    """Rényi entropy of order alpha in [0, 1).

    Uses the non-negative convention 1/(1-alpha) log sum(lambda^alpha);
    alpha = 0 gives log(rank).
    """
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"Rényi order must lie in [0, 1), got {alpha}")
    p = _probs(s)
    p = p[p > ZERO_EIG]
    if alpha == 0.0:
        return math.log(p.size)
    return float(max(math.log(np.sum(p ** alpha)) / (1.0 - alpha), 0.0))


def _subentropy_terms(p):
    n = p.size
    diffs = p[:, None] - p[None, :]
    np.fill_diagonal(diffs, 1.0)
    return p ** n * np.log(p) / np.prod(diffs, axis=1)


def _subentropy_mp(p) -> float:
    """High-precision evaluation with grouped, symmetrically spread degeneracies."""
    n = len(p)
    with mpmath.workdps(30 + 8 * n):
        pts = [mpmath.mpf(float(v)) for v in p]
        groups, cur = [], [pts[0]]
        for v in pts[1:]:
            if abs(cur[-1] - v) < SUBENTROPY_DEGENERACY:
                cur.append(v)
            else:
                groups.append(cur)
                cur = [v]
        groups.append(cur)

        def evaluate(width):
            xs = []
            for grp in groups:
                m = len(grp)
                if m == 1:
                    xs.append(grp[0])
                    continue
                mu = mpmath.fsum(grp) / m
                w = min(width, mu / 2)
                xs.extend(mu + w * (mpmath.mpf(j) / (m - 1) - mpmath.mpf(1) / 2) for j in range(m))
            total = mpmath.mpf(0)
            for i, xi in enumerate(xs):
                den = mpmath.fprod(xi - xj for j, xj in enumerate(xs) if j != i)
                total += xi ** n * mpmath.log(xi) / den
            return -total

        if all(len(grp) == 1 for grp in groups):
            return float(evaluate(0))
        w = mpmath.mpf(SUBENTROPY_SPREAD)
        return float((4 * evaluate(w / 2) - evaluate(w)) / 3)


def subentropy(s) -> float:
    """Subentropy Q = -sum_i lambda_i^n log(lambda_i) / prod_{j != i}(lambda_i - lambda_j).

    Zero eigenvalues drop out exactly (x^n log x has a zero of order n at
    the origin), so ``n`` counts the non-zero eigenvalues.  Coincident or
    badly conditioned spectra fall back to multi-precision arithmetic, with
    eigenvalues closer than ``SUBENTROPY_DEGENERACY`` spread symmetrically
    and the limit Richardson-extrapolated.
    """
    p = _probs(s)
    p = np.sort(p[p > ZERO_EIG])[::-1]
    if p.size <= 1:
        return 0.0
    gaps = -np.diff(p)
    if gaps.min() >= SUBENTROPY_DEGENERACY:
        terms = _subentropy_terms(p)
        q = -float(terms.sum())
        if np.abs(terms).sum() * np.finfo(float).eps <= 1e-12:
            return max(q, 0.0)
    return max(_subentropy_mp(p), 0.0)


def entropy_power(s, c) -> float:
    """exp(c H)."""
    if c < 0:
        raise DomainError(f"c must be non-negative, got {c}")
    return math.exp(c * von_neumann(s))


def photon_number(s, c) -> float:
    """g^{-1}(c H)."""
    if c < 0:
        raise DomainError(f"c must be non-negative, got {c}")
    return g_inv(c * von_neumann(s))


def surprisal_moments(s):
    """Return ``(H, L, V)``: mean, raw second moment and variance of -log q."""
    p = _probs(s)
    p = p[p > 0]
    logs = np.log(p)
    h = float(max(-(p * logs).sum(), 0.0))
    l2 = float((p * logs ** 2).sum())
    v = float((p * (logs + h) ** 2).sum())
    return h, l2, v


# --------------------------------------------------------------------------
# scalar helpers

def _check_nonneg(x, name):
    if np.any(np.asarray(x) < 0):
        raise DomainError(f"{name} requires non-negative input, got {x}")


def _g_scalar(x):
    if x == 0.0:
        return 0.0
    if x < 1e-300:
        return x - x * math.log(x)
    return math.log1p(x) + x * math.log1p(1.0 / x)


def _g_prime_scalar(x):
    return math.log1p(1.0 / x) if x > 0 else math.inf


def g(x):
    """g(x) = (x+1) log(x+1) - x log x, the thermal entropy at mean photon number x."""
    _check_nonneg(x, "g")
    if _is_scalar(x):
        return _g_scalar(float(x))
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log1p(x) + x * np.log1p(1.0 / x)
    return np.where(x > 0, out, 0.0)


def g_prime(x):
    """g'(x) = log(1 + 1/x)."""
    if _is_scalar(x):
        return _g_prime_scalar(float(x))
    with np.errstate(divide="ignore"):
        return np.log1p(1.0 / np.asarray(x, dtype=float))


def _g_bracket(y):
    # g(x) >= x on [0, 1], so y <= 1 also gives the upper end y
    y = np.asarray(y, dtype=float)
    e = np.exp(y - 1.0)
    return np.maximum(0.0, e - 0.5), np.where(y <= 1.0, y, np.maximum(1.0, e))


def g_inv(y):
    """Inverse of g on [0, inf); bracketed bisection plus Newton polish.

    The bracket comes from exp(y-1) - 1/2 <= g^{-1}(y) <= max(1, exp(y-1)),
    tightened to [0, y] for y <= 1.
    """
    _check_nonneg(y, "g_inv")
    if _is_scalar(y):
        y = float(y)
        if y == 0.0:
            return 0.0
        try:
            e = math.exp(y - 1.0)
        except OverflowError as exc:
            raise DomainError(f"g_inv argument {y} too large") from exc
        hi = y if y <= 1.0 else max(1.0, e)
        return invert_increasing(_g_scalar, y, max(0.0, e - 0.5), hi,
                                 deriv=_g_prime_scalar)
    y = np.asarray(y, dtype=float)
    lo, hi = _g_bracket(y)
    out = invert_increasing_array(g, y, lo, hi, deriv=g_prime)
    return np.where(y == 0, 0.0, out)


def _k_scalar(x):
    if x == 0.0:
        return 0.0
    if x >= 1e3:
        u = 1.0 / x
        tail = 0.0
        for coef in reversed(_K_TAIL):
            tail = tail * u + coef
        return 1.0 - tail * u * u
    return x * (1.0 + x) * math.log1p(1.0 / x) ** 2


def k(x):
    """k(x) = x (1+x) (log x - log(1+x))^2; increasing from 0 towards 1."""
    _check_nonneg(x, "k")
    if _is_scalar(x):
        return _k_scalar(float(x))
    return np.vectorize(_k_scalar, otypes=[float])(np.asarray(x, dtype=float))


def k_prime(x):
    if _is_scalar(x):
        if x <= 0:
            return math.inf
        lg = math.log1p(1.0 / x)
        return (1.0 + 2.0 * x) * lg * lg - 2.0 * lg
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        lg = np.log1p(1.0 / x)
    return (1.0 + 2.0 * x) * lg * lg - 2.0 * lg


def k_inv(y):
    """Inverse of k, defined for y in [0, 1)."""
    y_arr = np.asarray(y, dtype=float)
    if np.any((y_arr < 0) | (y_arr >= 1)):
        raise DomainError(f"k_inv requires y in [0, 1), got {y}")
    if _is_scalar(y):
        y = float(y)
        if y == 0.0:
            return 0.0
        hi = 1.0
        while _k_scalar(hi) < y:
            hi *= 2.0
        return invert_increasing(_k_scalar, y, 0.0, hi, deriv=k_prime)
    return np.array([k_inv(float(v)) for v in y_arr.ravel()]).reshape(y_arr.shape)


def ell(x):
    """Entropy of a qubit with Bloch radius |x|: h((1+x)/2), x in [-1, 1]."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0):
        raise DomainError(f"ell requires x in [-1, 1], got {x}")
    out = LOG2 - 0.5 * (xlog1py(1.0 + x_arr, x_arr) + xlog1py(1.0 - x_arr, -x_arr))
    out = np.maximum(out, 0.0)
    return float(out) if _is_scalar(x) else out


def _neg_ell(x):
    # scalar x in [0, 1]; (1-x) log(1-x) -> 0 at x = 1
    tail = (1.0 - x) * math.log1p(-x) if x < 1.0 else 0.0
    return 0.5 * ((1.0 + x) * math.log1p(x) + tail) - LOG2


def _neg_ell_prime(x):
    return math.atanh(x) if abs(x) < 1 else math.inf


def ell_inv(y):
    """Bloch radius r in [0, 1] with ell(r) = y, for y in [0, log 2]."""
    y_arr = np.asarray(y, dtype=float)
    if np.any((y_arr < 0) | (y_arr > LOG2 + 1e-15)):
        raise DomainError(f"ell_inv requires y in [0, log 2], got {y}")
    if not _is_scalar(y):
        return np.array([ell_inv(float(v)) for v in y_arr.ravel()]).reshape(y_arr.shape)
    y = float(min(y, LOG2))
    if y == LOG2:
        return 0.0
    if y == 0.0:
        return 1.0
    return invert_increasing(_neg_ell, -y, 0.0, 1.0, deriv=_neg_ell_prime, rtol=1e-15)


# --------------------------------------------------------------------------
# functional registry

VON_NEUMANN = "von_neumann"
RENYI = "renyi"
SUBENTROPY = "subentropy"
ENTROPY_POWER = "entropy_power"
PHOTON_NUMBER = "photon_number"
KINDS = (VON_NEUMANN, RENYI, SUBENTROPY, ENTROPY_POWER, PHOTON_NUMBER)


def entropy_power_limit(d) -> float:
    """Largest certified c for exp(c H) on d-dimensional states: 1/(log d)^2."""
    return 1.0 / math.log(d) ** 2


def photon_number_limit(d) -> float:
    """Largest certified c for g^{-1}(c H): 1/(d-1)."""
    return 1.0 / (d - 1)


@dataclass(frozen=True)
class EntropyFunctional:
    """A named spectral functional.

    ``param`` is alpha for Rényi and c for entropy power / photon number.
    Evaluation is allowed for any parameter; :meth:`certified` reports
    whether the parameter lies in the range where concavity is proven.
    """

    kind: str
    param: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown functional kind {self.kind!r}")
        if self.kind in (RENYI, ENTROPY_POWER, PHOTON_NUMBER):
            if self.param is None:
                raise DomainError(f"{self.kind} needs a parameter")
            object.__setattr__(self, "param", float(self.param))
        if self.kind == RENYI and not 0.0 <= self.param < 1.0:
            raise DomainError(f"Rényi order must lie in [0, 1), got {self.param}")
        if self.kind in (ENTROPY_POWER, PHOTON_NUMBER) and self.param < 0:
            raise DomainError(f"c must be non-negative, got {self.param}")

    @classmethod
    def von_neumann(cls):
        return cls(VON_NEUMANN)

    @classmethod
    def renyi(cls, alpha):
        return cls(RENYI, alpha)

    @classmethod
    def subentropy(cls):
        return cls(SUBENTROPY)

    @classmethod
    def entropy_power(cls, c):
        return cls(ENTROPY_POWER, c)

    @classmethod
    def photon_number(cls, c):
        return cls(PHOTON_NUMBER, c)

    @property
    def name(self) -> str:
        if self.param is None:
            return self.kind
        return f"{self.kind}({self.param!r})"

    def certified(self, d) -> bool:
        if self.kind == ENTROPY_POWER:
            return d < 2 or self.param <= entropy_power_limit(d) * (1 + 1e-12)
        if self.kind == PHOTON_NUMBER:
            return d < 2 or self.param <= photon_number_limit(d) * (1 + 1e-12)
        return True

    def require_certified(self, d):
        if not self.certified(d):
            raise OutOfCertifiedRange(
                f"{self.name} is outside the certified range for d={d}")

    def __call__(self, s) -> float:
        if self.kind == VON_NEUMANN:
            return von_neumann(s)
        if self.kind == RENYI:
            return renyi(s, self.param)
        if self.kind == SUBENTROPY:
            return subentropy(s)
        if self.kind == ENTROPY_POWER:
            return entropy_power(s, self.param)
        return photon_number(s, self.param)


DEFAULT_ALPHAS = (0.0, 0.25, 0.5, 0.75, 0.9)


def certified_functionals(d, alphas=DEFAULT_ALPHAS):
    """Every registered functional at its default certified parameter for dimension d."""
    funcs = [EntropyFunctional.von_neumann()]
    funcs += [EntropyFunctional.renyi(a) for a in alphas]
    funcs.append(EntropyFunctional.subentropy())
    funcs.append(EntropyFunctional.entropy_power(entropy_power_limit(d)))
    funcs.append(EntropyFunctional.photon_number(photon_number_limit(d)))
    return funcs

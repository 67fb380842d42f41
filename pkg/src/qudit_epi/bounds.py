"""Output-entropy lower bounds and Holevo-capacity upper bounds.

Each bound is a function G of the input entropy H(rho) for the channel
rho -> rho boxplus_a sigma, given H(sigma).  All values are in nats.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import xlogy

from ._solvers import golden_section_max
from .channels import FixedSigmaChannel
from .entropies import LOG2, ell, ell_inv, entropy_power_limit, g, g_inv, photon_number_limit, von_neumann
from .errors import DomainError
from .states import as_matrix, spectrum

log = logging.getLogger(__name__)

LINEAR = "linear"
ENTROPY_POWER = "entropy_power"
PHOTON_NUMBER = "photon_number"
QUBIT_OPTIMAL = "qubit_optimal"
BOUND_KINDS = (LINEAR, ENTROPY_POWER, PHOTON_NUMBER, QUBIT_OPTIMAL)


def bound_linear(h_rho, h_sigma, a, d=None) -> float:
    return a * h_rho + (1.0 - a) * h_sigma


def bound_entropy_power(h_rho, h_sigma, a, d, c=None) -> float:
    """(1/c) log[a e^{c H(rho)} + (1-a) e^{c H(sigma)}], c = 1/(log d)^2 by default."""
    c = entropy_power_limit(d) if c is None else c
    if a == 1.0:
        return h_rho
    if a == 0.0:
        return h_sigma
    # shifted by the larger entropy and written with expm1/log1p so that
    # small c does not cancel
    top = max(h_rho, h_sigma)
    mix = a * math.expm1(c * (h_rho - top)) + (1.0 - a) * math.expm1(c * (h_sigma - top))
    return top + math.log1p(mix) / c


def bound_photon_number(h_rho, h_sigma, a, d, c=None) -> float:
    """(1/c) g[a g^{-1}(c H(rho)) + (1-a) g^{-1}(c H(sigma))], c = 1/(d-1) by default."""
    c = photon_number_limit(d) if c is None else c
    if a == 1.0:
        return h_rho
    if a == 0.0:
        return h_sigma
    if h_rho == h_sigma:
        return h_rho
    return g(a * g_inv(c * h_rho) + (1.0 - a) * g_inv(c * h_sigma)) / c


def bound_qubit_optimal(h_rho, h_sigma, a, d=2) -> float:
    """ell[a ell^{-1}(H(rho)) + (1-a) ell^{-1}(H(sigma))]; tight for qubits."""
    if d != 2:
        raise DomainError(f"the qubit bound needs d=2, got d={d}")
    for h in (h_rho, h_sigma):
        if not -1e-15 <= h <= LOG2 + 1e-15:
            raise DomainError(f"qubit entropy {h} outside [0, log 2]")
    h_rho = min(max(h_rho, 0.0), LOG2)
    h_sigma = min(max(h_sigma, 0.0), LOG2)
    return ell(a * ell_inv(h_rho) + (1.0 - a) * ell_inv(h_sigma))


BOUNDS = {
    LINEAR: bound_linear,
    ENTROPY_POWER: bound_entropy_power,
    PHOTON_NUMBER: bound_photon_number,
    QUBIT_OPTIMAL: bound_qubit_optimal,
}


def bound_value(kind, h_rho, h_sigma, a, d) -> float:
    try:
        func = BOUNDS[kind]
    except KeyError:
        raise DomainError(f"unknown bound kind {kind!r}") from None
    return func(h_rho, h_sigma, a, d)


def applicable_kinds(d):
    return BOUND_KINDS if d == 2 else BOUND_KINDS[:3]


@dataclass(frozen=True)
class BoundCurve:
    kind: str
    a: float
    d: int
    sigma_entropy: float
    samples: Tuple[Tuple[float, float], ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.samples, dtype=float).reshape(-1, 2)


def bound_curve(kind, a, d, sigma_entropy, samples=101) -> BoundCurve:
    """Sample G(H0) for H0 evenly spaced over [0, log d] (endpoints included)."""
    if samples < 2:
        raise DomainError("a bound curve needs at least two samples")
    grid = np.linspace(0.0, math.log(d), samples)
    pts = tuple((float(h), float(bound_value(kind, float(h), sigma_entropy, a, d))) for h in grid)
    return BoundCurve(kind, float(a), int(d), float(sigma_entropy), pts)


def _entropy(state) -> float:
    return von_neumann(spectrum(state))


def min_output_entropy_lb(kind, a, sigma, grid=10_000) -> float:
    """Minimise G(H0) over H0 in [0, log d].

    Every implemented G is non-decreasing, so the minimum sits at H0 = 0;
    the grid scan checks that rather than assuming it, and a warning is
    logged if the curve is found to dip.
    """
    d = as_matrix(sigma).shape[0]
    h_sigma = _entropy(sigma)
    hs = np.linspace(0.0, math.log(d), grid)
    vals = np.array([bound_value(kind, float(h), h_sigma, a, d) for h in hs])
    if np.any(np.diff(vals) < -1e-12):
        log.warning("bound %s is not monotone in H0 for a=%g", kind, a)
    i = int(np.argmin(vals))
    best = float(vals[i])
    if 0 < i < grid - 1:
        x, neg = golden_section_max(lambda h: -bound_value(kind, h, h_sigma, a, d),
                                    hs[i - 1], hs[i + 1])
        best = min(best, -neg)
    return best


def holevo_upper_bound(a, sigma, d=None) -> float:
    """chi(E_{a,sigma}) <= log d - (1-a) H(sigma).

    Evaluated as a log d + (1-a) D(sigma || I/d) so that sigma = I/d gives
    a log d to the last bit.
    """
    d = as_matrix(sigma).shape[0] if d is None else d
    p = spectrum(sigma).values
    divergence = float(np.sum(xlogy(p, d * p)))
    return a * math.log(d) + (1.0 - a) * max(divergence, 0.0)


def channel_output_entropy(channel: FixedSigmaChannel, rho) -> float:
    return _entropy(channel(rho))

"""Majorization predicates and the spectral majorization check for the partial swap."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import as_params, boxplus_closed_form, boxplus_via_kraus, boxplus_via_unitary
from .errors import DimensionMismatch, LengthMismatch
from .states import as_matrix, eigenvalues_desc

DEFAULT_TOL = 1e-10
MIN_INEQUALITY_TOL = 1e-14

REALIZATIONS = {
    "closed_form": boxplus_closed_form,
    "unitary": boxplus_via_unitary,
    "kraus": boxplus_via_kraus,
}


@dataclass(frozen=True)
class MajorizationReport:
    """Outcome of a u < v test.

    ``worst_slack`` is the most negative value of prefix_v(k) - prefix_u(k)
    over k = 1..d, and ``worst_k`` is the (1-based) k where it occurs.
    ``total_gap`` is sum(v) - sum(u).
    """

    holds: bool
    worst_slack: float
    worst_k: int
    total_gap: float = 0.0


def scaled_tolerance(tol, d, norm=1.0) -> float:
    """Prefix sums pick up eigensolver error roughly linearly in d."""
    return max(tol, d * np.finfo(float).eps * norm)


def majorizes(u, v, tol=DEFAULT_TOL) -> MajorizationReport:
    """Test whether ``u`` is majorized by ``v``."""
    u = np.sort(np.asarray(u, dtype=float).ravel())[::-1]
    v = np.sort(np.asarray(v, dtype=float).ravel())[::-1]
    if u.shape != v.shape:
        raise LengthMismatch(f"vectors have lengths {u.size} and {v.size}")
    slack = np.cumsum(v) - np.cumsum(u)
    k = int(np.argmin(slack))
    worst = float(slack[k])
    total_gap = float(slack[-1])
    holds = worst >= -tol and abs(total_gap) <= tol
    return MajorizationReport(holds, worst, k + 1, total_gap)


def check_spectral_majorization(rho, sigma, p, tol=DEFAULT_TOL,
                                realization="closed_form") -> MajorizationReport:
    """lambda(rho boxplus_a sigma) < a lambda(rho) + (1-a) lambda(sigma).

    This must always hold; a failure beyond ``tol`` signals an
    implementation problem rather than a mathematical counterexample.
    """
    r, s = as_matrix(rho), as_matrix(sigma)
    if r.shape != s.shape:
        raise DimensionMismatch(f"states have different dimensions: {r.shape[0]} vs {s.shape[0]}")
    p = as_params(p)
    out = REALIZATIONS[realization](r, s, p)
    lhs = eigenvalues_desc(out)
    rhs = p.a * eigenvalues_desc(r) + (1.0 - p.a) * eigenvalues_desc(s)
    return majorizes(lhs, rhs, scaled_tolerance(tol, r.shape[0]))


def min_inequality_margin(x, y):
    """x y + sqrt(x(1-x) y(1-y)) - min(x, y); non-negative on [0, 1]^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x * y + np.sqrt(x * (1 - x) * y * (1 - y)) - np.minimum(x, y)


def min_inequality_check(x, y, tol=MIN_INEQUALITY_TOL):
    """Elementwise truth of x y + sqrt(x(1-x) y(1-y)) >= min(x, y)."""
    ok = min_inequality_margin(x, y) >= -tol
    return bool(ok) if np.ndim(ok) == 0 else ok

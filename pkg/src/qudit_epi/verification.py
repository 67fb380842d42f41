"""Seeded verification campaigns behind ``qudit-epi verify``.

Every sampled check for dimension d draws trial t from its own generator,
``default_rng([seed, d, t])``, so any reported violation can be replayed
with :func:`sample_triple` alone.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .channels import SwapParams, boxplus_closed_form, boxplus_via_kraus, boxplus_via_unitary
from .entropies import DEFAULT_ALPHAS, EntropyFunctional, entropy_power_limit, photon_number_limit
from .errors import DomainError
from .majorization import MIN_INEQUALITY_TOL, majorizes, min_inequality_margin
from .states import DensityMatrix, Spectrum, eigenvalues_desc, hermitian_part, random_state

DEFAULT_TOL = 1e-9
AGREEMENT_TOL = 1e-12
MIN_INEQUALITY_GRID = 1000

NO_FAULT = "none"
FAULTS = {
    # (sign, scale) applied to the commutator term
    NO_FAULT: (1.0, 1.0),
    "commutator-sign": (-1.0, 1.0),
    "commutator-scale": (1.0, 3.0),
}


@dataclass(frozen=True)
class RunConfig:
    dims: Tuple[int, ...] = (2, 3, 4)
    trials: int = 10_000
    seed: int = 0
    tolerance: float = DEFAULT_TOL
    alphas: Tuple[float, ...] = DEFAULT_ALPHAS
    a_grid: Tuple[float, ...] = ()
    ep_c: Optional[float] = None
    photon_c: Optional[float] = None
    force_range: bool = False
    grid: int = MIN_INEQUALITY_GRID
    fault: str = NO_FAULT
    jobs: int = 1

    def __post_init__(self):
        if not self.dims or any(d < 2 for d in self.dims):
            raise DomainError(f"dimensions must be >= 2, got {list(self.dims)}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if any(not 0.0 <= a <= 1.0 for a in self.a_grid):
            raise DomainError("every a must lie in [0, 1]")
        if any(not 0.0 <= al < 1.0 for al in self.alphas):
            raise DomainError("every alpha must lie in [0, 1)")
        if self.fault not in FAULTS:
            raise DomainError(f"unknown fault {self.fault!r}")
        if self.grid < 2:
            raise DomainError("grid must have at least two points per axis")
        for c in (self.ep_c, self.photon_c):
            if c is not None and c < 0:
                raise DomainError(f"c must be non-negative, got {c}")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["dims"] = list(self.dims)
        out["alphas"] = list(self.alphas)
        out["a_grid"] = list(self.a_grid)
        del out["jobs"]  # does not affect results
        return out


@dataclass
class CheckResult:
    check: str
    d: Optional[int]
    samples: int
    tolerance: float
    worst_margin: float = math.inf
    worst_trial: Optional[int] = None
    certified: bool = True

    @property
    def passed(self) -> bool:
        return self.worst_margin >= -self.tolerance

    def update(self, margin, trial):
        if margin < self.worst_margin:
            self.worst_margin = float(margin)
            self.worst_trial = trial

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "d": self.d,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "worst_margin": self.worst_margin,
            "worst_trial": self.worst_trial,
            "certified": self.certified,
            "passed": self.passed,
        }


def faulty_boxplus(rho, sigma, a, fault=NO_FAULT) -> DensityMatrix:
    """Closed-form partial swap with an optional deliberate defect (test mode)."""
    if fault == NO_FAULT:
        return boxplus_closed_form(rho, sigma, a)
    sign, scale = FAULTS[fault]
    p = SwapParams(a)
    r, s = np.asarray(rho, dtype=complex), np.asarray(sigma, dtype=complex)
    out = p.a * r + (1.0 - p.a) * s - sign * scale * 1j * p.cross * (r @ s - s @ r)
    return DensityMatrix(hermitian_part(out))


def sample_triple(seed, d, trial, a_grid=()):
    """The (rho, sigma, a) drawn for ``trial`` in dimension ``d``.

    Ranks are uniform in 1..d so rank-deficient states are well represented.
    """
    rng = np.random.default_rng([seed, d, trial])
    rho = random_state(d, int(rng.integers(1, d + 1)), rng)
    sigma = random_state(d, int(rng.integers(1, d + 1)), rng)
    a = float(rng.random())
    if a_grid:
        a = float(a_grid[trial % len(a_grid)])
    return rho, sigma, a


def select_functionals(d, alphas=DEFAULT_ALPHAS, ep_c=None, photon_c=None,
                       force_range=False) -> List[EntropyFunctional]:
    """The registered functionals for dimension d.

    ``ep_c`` and ``photon_c`` default to the largest certified values.  A
    value outside the certified range raises unless ``force_range`` is set.
    """
    ep_c = entropy_power_limit(d) if ep_c is None else ep_c
    photon_c = photon_number_limit(d) if photon_c is None else photon_c
    funcs = [EntropyFunctional.von_neumann()]
    funcs += [EntropyFunctional.renyi(al) for al in alphas]
    funcs.append(EntropyFunctional.subentropy())
    funcs.append(EntropyFunctional.entropy_power(ep_c))
    funcs.append(EntropyFunctional.photon_number(photon_c))
    if not force_range:
        for f in funcs:
            f.require_certified(d)
    return funcs


def campaign_functionals(config: RunConfig, d) -> List[EntropyFunctional]:
    return select_functionals(d, config.alphas, config.ep_c, config.photon_c,
                              config.force_range)


def _clamped(vals) -> Spectrum:
    return Spectrum(np.clip(vals, 0.0, None))


def run_dimension(config: RunConfig, d) -> List[CheckResult]:
    """Majorization, EPI and channel-agreement checks for one dimension."""
    funcs = campaign_functionals(config, d)
    n = config.trials
    major = CheckResult("majorization", d, n, config.tolerance)
    epi = [CheckResult(f"epi:{f.name}", d, n, config.tolerance, certified=f.certified(d))
           for f in funcs]
    agree = CheckResult("channel_agreement", d, n, AGREEMENT_TOL)

    for t in range(n):
        rho, sigma, a = sample_triple(config.seed, d, t, config.a_grid)
        out = faulty_boxplus(rho, sigma, a, config.fault)
        lam_out = eigenvalues_desc(out)
        lam_r, lam_s = eigenvalues_desc(rho), eigenvalues_desc(sigma)

        rep = majorizes(lam_out, a * lam_r + (1.0 - a) * lam_s)
        major.update(min(rep.worst_slack, -abs(rep.total_gap)), t)

        # a non-PSD output is itself a violation; its depth is the margin
        psd_margin = min(float(lam_out[-1]), 0.0)
        s_out, s_r, s_s = _clamped(lam_out), _clamped(lam_r), _clamped(lam_s)
        for f, res in zip(funcs, epi):
            margin = f(s_out) - a * f(s_r) - (1.0 - a) * f(s_s)
            res.update(min(margin, psd_margin) if psd_margin < -config.tolerance else margin, t)

        ref = out.data
        dev = max(np.max(np.abs(ref - boxplus_via_kraus(rho, sigma, a).data)),
                  np.max(np.abs(ref - boxplus_via_unitary(rho, sigma, a).data)))
        agree.update(-float(dev), t)

    return [major, *epi, agree]


def run_min_inequality(grid=MIN_INEQUALITY_GRID) -> CheckResult:
    """x y + sqrt(x(1-x) y(1-y)) >= min(x, y) on a grid x grid sweep of [0, 1]^2."""
    res = CheckResult("min_inequality", None, grid * grid, MIN_INEQUALITY_TOL)
    xs = np.linspace(0.0, 1.0, grid)
    m = min_inequality_margin(xs[:, None], xs[None, :])
    i = int(np.argmin(m))
    res.update(float(m.flat[i]), i)
    return res


@dataclass
class CampaignReport:
    config: RunConfig
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, version) -> dict:
        return {
            "tool": "qudit-epi",
            "version": version,
            "config": self.config.to_dict(),
            "seed": self.config.seed,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def run_campaign(config: RunConfig) -> CampaignReport:
    """Run every check; dimensions fan out over processes when ``jobs > 1``.

    Results are collected in dimension order, so the report does not depend
    on scheduling.
    """
    dims = list(config.dims)
    if config.jobs > 1 and len(dims) > 1:
        with ProcessPoolExecutor(max_workers=min(config.jobs, len(dims))) as pool:
            per_dim = list(pool.map(run_dimension, [config] * len(dims), dims))
    else:
        per_dim = [run_dimension(config, d) for d in dims]
    checks = [c for block in per_dim for c in block]
    checks.append(run_min_inequality(config.grid))
    return CampaignReport(config, checks)


def summarize(report: CampaignReport) -> Dict[str, float]:
    """Worst margin per check name across dimensions."""
    out: Dict[str, float] = {}
    for c in report.checks:
        out[c.check] = min(out.get(c.check, math.inf), c.worst_margin)
    return out

"""Acceptance criteria, one test each, at their stated tolerances and budgets.

Every test records a PASS/FAIL line; pytest prints the collected lines in
an "acceptance criteria" section at the end of the run, and running this
file directly prints them as each criterion finishes.
"""

import math
import sys
import time

import numpy as np
import pytest

from qudit_epi.bounds import (QUBIT_OPTIMAL, applicable_kinds, bound_qubit_optimal, bound_value,
                              holevo_upper_bound)
from qudit_epi.channels import boxplus, boxplus_bloch, boxplus_via_kraus, boxplus_via_unitary
from qudit_epi.cli import main
from qudit_epi.concavity import (c_max_entropy_power, c_max_lower_bound, curve_slopes,
                                 epni_condition_check, family_entropy, family_second_moment,
                                 l_max_bruteforce, parametric_gk_curve, w_r)
from qudit_epi.entropies import LOG2, binary_entropy, entropy_power_limit, von_neumann
from qudit_epi.majorization import majorizes, min_inequality_margin
from qudit_epi.states import (Spectrum, bloch_to_state, diagonal_state, eigenvalues_desc,
                              maximally_mixed, random_state, spectrum, state_to_bloch)
from qudit_epi.verification import sample_triple, select_functionals

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []

SEED = 20240601


def record(number, ok, detail, elapsed):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail} [{elapsed:.2f}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _entropy(state):
    return von_neumann(spectrum(state))


def test_criterion_01_qubit_threshold():
    t0 = time.perf_counter()
    c = c_max_entropy_power(2).c_max
    elapsed = time.perf_counter() - t0
    inv = 1 / math.log(2) ** 2
    ok = abs(c - 2.2767) <= 5e-4 and c > inv and abs(inv - 2.0814) <= 1e-4 and elapsed < 1
    assert record(1, ok, f"c_max(2)={c:.6f}, 1/(log 2)^2={inv:.6f}", elapsed)


def test_criterion_02_threshold_lower_bound():
    t0 = time.perf_counter()
    worst_gap, worst_lb_gap = math.inf, math.inf
    for d in range(3, 65):
        c = c_max_entropy_power(d).c_max
        lb = c_max_lower_bound(d)
        worst_gap = min(worst_gap, c - lb)
        worst_lb_gap = min(worst_lb_gap, lb - 1 / math.log(d) ** 2)
    elapsed = time.perf_counter() - t0
    ok = worst_gap >= 0 and worst_lb_gap > 0 and elapsed < 10
    assert record(2, ok, f"min(c_max-lb)={worst_gap:.3e}, min(lb-1/log^2 d)={worst_lb_gap:.3e}",
                  elapsed)


def test_criterion_03_spectral_majorization():
    t0 = time.perf_counter()
    violations, worst = 0, math.inf
    for d in range(2, 9):
        for t in range(10_000):
            rho, sigma, a = sample_triple(SEED, d, t)
            lhs = eigenvalues_desc(boxplus(rho, sigma, a))
            rhs = a * eigenvalues_desc(rho) + (1 - a) * eigenvalues_desc(sigma)
            rep = majorizes(lhs, rhs, tol=1e-10)
            worst = min(worst, rep.worst_slack)
            violations += not rep.holds
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 120
    assert record(3, ok, f"7x10^4 triples, violations={violations}, worst slack={worst:.3e}",
                  elapsed)


def test_criterion_04_epi_suite():
    t0 = time.perf_counter()
    worst, worst_name = math.inf, None
    for d in range(2, 9):
        funcs = select_functionals(d)
        assert funcs[-2].param == entropy_power_limit(d) and funcs[-1].param == 1 / (d - 1)
        for t in range(10_000):
            rho, sigma, a = sample_triple(SEED, d, t)
            s_out, s_r, s_s = (spectrum(x) for x in (boxplus(rho, sigma, a), rho, sigma))
            for f in funcs:
                margin = f(s_out) - a * f(s_r) - (1 - a) * f(s_s)
                if margin < worst:
                    worst, worst_name = margin, f"{f.name} d={d} trial={t}"
    elapsed = time.perf_counter() - t0
    ok = worst >= -1e-9 and elapsed < 300
    assert record(4, ok, f"worst margin={worst:.3e} ({worst_name})", elapsed)


def test_criterion_05_channel_agreement():
    t0 = time.perf_counter()
    worst = 0.0
    for d in (2, 3, 4):
        for t in range(1000):
            rho, sigma, a = sample_triple(SEED, d, t)
            ref = boxplus(rho, sigma, a).data
            worst = max(worst, np.max(np.abs(ref - boxplus_via_kraus(rho, sigma, a).data)),
                        np.max(np.abs(ref - boxplus_via_unitary(rho, sigma, a).data)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 30
    assert record(5, ok, f"max elementwise deviation={worst:.3e}", elapsed)


def test_criterion_06_qubit_bloch_rule():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    dev, bound_margin = 0.0, math.inf
    for _ in range(10_000):
        r1, r2 = (v * rng.random() ** (1 / 3) / np.linalg.norm(v) for v in rng.normal(size=(2, 3)))
        a = float(rng.random())
        rho, sigma = bloch_to_state(r1), bloch_to_state(r2)
        out = boxplus(rho, sigma, a)
        dev = max(dev, np.max(np.abs(state_to_bloch(out).as_array()
                                     - boxplus_bloch(r1, r2, a).as_array())))
        bound = bound_qubit_optimal(_entropy(rho), _entropy(sigma), a)
        bound_margin = min(bound_margin, _entropy(out) - bound)
    tight = 0.0
    for _ in range(1000):
        # commuting pairs with parallel Bloch vectors along z
        r1, r2, a = rng.random(3)
        rho = diagonal_state([(1 + r1) / 2, (1 - r1) / 2])
        sigma = diagonal_state([(1 + r2) / 2, (1 - r2) / 2])
        out = _entropy(boxplus(rho, sigma, a))
        tight = max(tight, abs(out - bound_qubit_optimal(_entropy(rho), _entropy(sigma), a)))
    elapsed = time.perf_counter() - t0
    ok = dev <= 1e-12 and bound_margin >= -1e-10 and tight <= 1e-10 and elapsed < 30
    assert record(6, ok, f"Bloch deviation={dev:.3e}, worst bound margin={bound_margin:.3e}, "
                         f"aligned gap={tight:.3e}", elapsed)


def test_criterion_07_two_valued_maximiser():
    t0 = time.perf_counter()
    wrong_k, worst = 0, 0.0
    for d in range(3, 9):
        for h0 in np.linspace(0.0, math.log(d), 52)[1:-1]:
            res = l_max_bruteforce(d, float(h0))
            wrong_k += res.k_star != d - 1
            worst = max(worst, abs(res.l_max - h0 ** 2 - w_r(res.x_star, d - 1)))
    ends = all(
        family_entropy(6, k, 1 / 6) == math.log(6)
        and family_second_moment(6, k, 1 / 6) == math.log(6) ** 2
        and family_entropy(6, k, 0.0) == math.log(6 - k)
        and family_second_moment(6, k, 0.0) == math.log(6 - k) ** 2
        for k in range(1, 6))
    elapsed = time.perf_counter() - t0
    ok = wrong_k == 0 and worst <= 1e-8 and ends and elapsed < 60
    assert record(7, ok, f"k* != d-1 in {wrong_k}/300, max |L-H0^2-w|={worst:.3e}, "
                         f"locus endpoints exact={ends}", elapsed)


def test_criterion_08_photon_number_condition():
    t0 = time.perf_counter()
    worst = min(epni_condition_check(d, 1 / (d - 1), grid=10_000).worst_margin
                for d in range(2, 17))
    slopes = curve_slopes(parametric_gk_curve())
    shape = bool(np.all(slopes > 0) and np.all(np.diff(slopes) <= 0))
    elapsed = time.perf_counter() - t0
    ok = worst >= -1e-10 and shape and elapsed < 10
    assert record(8, ok, f"worst margin={worst:.3e}, g-k curve concave increasing={shape}",
                  elapsed)


def test_criterion_09_bound_soundness():
    t0 = time.perf_counter()
    worst = math.inf
    for d in (2, 4, 8):
        for t in range(1000):
            rho, sigma, a = sample_triple(SEED + 9, d, t)
            h_out = _entropy(boxplus(rho, sigma, a))
            h_r, h_s = _entropy(rho), _entropy(sigma)
            for kind in applicable_kinds(d):
                worst = min(worst, h_out - bound_value(kind, h_r, h_s, a, d))
    holevo_exact = all(holevo_upper_bound(a, maximally_mixed(d), d) == a * math.log(d)
                       for d in range(2, 9) for a in np.linspace(0, 1, 21))
    flip = max(abs(holevo_upper_bound(a, diagonal_state([dl, 1 - dl]))
                   - (LOG2 - (1 - a) * binary_entropy(dl)))
               for dl in np.linspace(0, 1, 21) for a in np.linspace(0, 1, 21))
    elapsed = time.perf_counter() - t0
    ok = worst >= -1e-9 and holevo_exact and flip <= 1e-12 and elapsed < 60
    assert record(9, ok, f"worst bound margin={worst:.3e}, Holevo(I/d)=a log d exact="
                         f"{holevo_exact}, flip-channel deviation={flip:.3e}", elapsed)


def test_criterion_10_min_inequality():
    t0 = time.perf_counter()
    xs = np.linspace(0.0, 1.0, 1000)
    m = min_inequality_margin(xs[:, None], xs[None, :])
    violations = int(np.sum(m < -1e-14))
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 5
    assert record(10, ok, f"10^6 grid points, violations={violations}, min={m.min():.3e}",
                  elapsed)


def test_criterion_11_deterministic_reports(tmp_path, capsys):
    t0 = time.perf_counter()
    outs = [tmp_path / "first.json", tmp_path / "second.json", tmp_path / "parallel.json"]
    argv = ["verify", "--dim", "2", "--dim", "3", "--dim", "4", "--trials", "300",
            "--seed", "12345"]
    codes = [main(argv + ["--output", str(outs[0])]),
             main(argv + ["--output", str(outs[1])]),
             main(argv + ["--jobs", "3", "--output", str(outs[2])])]
    capsys.readouterr()
    same = outs[0].read_bytes() == outs[1].read_bytes() == outs[2].read_bytes()
    elapsed = time.perf_counter() - t0
    ok = codes == [0, 0, 0] and same
    assert record(11, ok, f"exit codes={codes}, byte-identical={same}", elapsed)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))

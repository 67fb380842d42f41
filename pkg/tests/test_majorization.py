import numpy as np
import pytest
from hypothesis import given, strategies as st

from qudit_epi.errors import DimensionMismatch, LengthMismatch
from qudit_epi.majorization import (REALIZATIONS, check_spectral_majorization, majorizes,
                                    min_inequality_check, min_inequality_margin)
from qudit_epi.states import maximally_mixed, random_state

seeds = st.integers(0, 2 ** 32 - 1)


def test_uniform_is_majorized_by_everything():
    rep = majorizes([0.25] * 4, [0.7, 0.1, 0.1, 0.1])
    assert rep.holds and rep.worst_slack >= -1e-15


def test_violation_reports_position():
    rep = majorizes([0.9, 0.1, 0.0], [0.5, 0.3, 0.2])
    assert not rep.holds
    assert rep.worst_k == 1
    assert rep.worst_slack == pytest.approx(-0.4)


def test_unequal_totals_fail():
    assert not majorizes([0.5, 0.5], [0.5, 0.4]).holds


def test_majorizes_sorts_inputs():
    assert majorizes([0.1, 0.9], [1.0, 0.0]).holds


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        majorizes([1.0], [0.5, 0.5])


@pytest.mark.parametrize("realization", sorted(REALIZATIONS))
@given(st.integers(2, 5), seeds, st.floats(0.0, 1.0))
def test_spectral_majorization(realization, d, seed, a):
    rng = np.random.default_rng(seed)
    rho = random_state(d, int(rng.integers(1, d + 1)), rng)
    sigma = random_state(d, int(rng.integers(1, d + 1)), rng)
    rep = check_spectral_majorization(rho, sigma, a, realization=realization)
    assert rep.holds, rep


def test_spectral_majorization_dimension_check():
    with pytest.raises(DimensionMismatch):
        check_spectral_majorization(maximally_mixed(2), maximally_mixed(3), 0.5)


def test_min_inequality_known_points():
    assert min_inequality_margin(0.3, 0.3) == pytest.approx(0.0, abs=1e-16)
    assert min_inequality_margin(0.0, 0.7) == 0.0
    assert min_inequality_margin(1.0, 0.7) == pytest.approx(0.0, abs=1e-16)
    assert min_inequality_margin(0.2, 0.8) == pytest.approx(0.16 + 0.16 - 0.2)


@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_min_inequality_holds(x, y):
    assert min_inequality_check(x, y)


def test_min_inequality_vectorised():
    xs = np.linspace(0, 1, 101)
    ok = min_inequality_check(xs[:, None], xs[None, :])
    assert ok.shape == (101, 101) and ok.all()

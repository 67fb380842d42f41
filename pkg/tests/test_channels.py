import numpy as np
import pytest
from hypothesis import given, strategies as st

from qudit_epi.channels import (SwapParams, boxplus, boxplus_bloch, boxplus_closed_form,
                                boxplus_via_kraus, boxplus_via_unitary, fixed_sigma_channel,
                                kraus_operators, mixing_channel, partial_swap_unitary,
                                swap_operator)
from qudit_epi.errors import DimensionMismatch, DomainError
from qudit_epi.states import (bloch_to_state, diagonal_state, maximally_mixed, random_state,
                              state_to_bloch, validate)

seeds = st.integers(0, 2 ** 32 - 1)
a_vals = st.floats(0.0, 1.0)


def _pair(d, seed):
    rng = np.random.default_rng(seed)
    return (random_state(d, int(rng.integers(1, d + 1)), rng),
            random_state(d, int(rng.integers(1, d + 1)), rng))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_swap_operator(d):
    s = swap_operator(d)
    assert np.array_equal(s @ s, np.eye(d * d))
    e = np.eye(d)
    for i in range(d):
        for j in range(d):
            assert np.array_equal(s @ np.kron(e[i], e[j]), np.kron(e[j], e[i]))


def test_swap_needs_two_levels():
    with pytest.raises(DomainError):
        swap_operator(1)


@pytest.mark.parametrize("d", [2, 3, 5])
@pytest.mark.parametrize("a", [0.0, 0.3, 1.0])
def test_partial_swap_is_unitary(d, a):
    u = partial_swap_unitary(d, a)
    assert np.allclose(u.conj().T @ u, np.eye(d * d), atol=1e-14)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_kraus_completeness(d):
    ks = kraus_operators(d, 0.37)
    assert ks.dim == d
    assert len(ks.operators) == d
    assert np.allclose(ks.completeness(), np.eye(d * d), atol=1e-14)


def test_swap_params_domain():
    with pytest.raises(DomainError):
        SwapParams(1.5)
    with pytest.raises(DomainError):
        SwapParams(-0.1)
    p = SwapParams(0.25)
    assert p.cross == pytest.approx(np.sqrt(0.25 * 0.75))


@given(st.integers(2, 4), seeds, a_vals)
def test_three_realisations_agree(d, seed, a):
    rho, sigma = _pair(d, seed)
    ref = boxplus_closed_form(rho, sigma, a).data
    assert np.max(np.abs(ref - boxplus_via_unitary(rho, sigma, a).data)) <= 1e-12
    assert np.max(np.abs(ref - boxplus_via_kraus(rho, sigma, a).data)) <= 1e-12


@given(st.integers(2, 6), seeds, a_vals)
def test_output_is_a_state(d, seed, a):
    rho, sigma = _pair(d, seed)
    validate(boxplus(rho, sigma, a))


@given(st.integers(2, 5), seeds)
def test_endpoints(d, seed):
    rho, sigma = _pair(d, seed)
    assert np.allclose(boxplus(rho, sigma, 1.0).data, rho.data, atol=1e-15)
    assert np.allclose(boxplus(rho, sigma, 0.0).data, sigma.data, atol=1e-15)


def test_commuting_inputs_mix():
    rho, sigma = diagonal_state([0.1, 0.2, 0.7]), diagonal_state([0.5, 0.5, 0.0])
    out = boxplus(rho, sigma, 0.4).data
    assert np.allclose(out, mixing_channel(rho, sigma, 0.4).data, atol=1e-15)
    assert np.allclose(out, np.diag([0.34, 0.38, 0.28]))


@given(st.integers(2, 5), seeds, a_vals)
def test_maximally_mixed_sigma_depolarises(d, seed, a):
    rho, _ = _pair(d, seed)
    chan = fixed_sigma_channel(maximally_mixed(d), a)
    expected = a * rho.data + (1 - a) * np.eye(d) / d
    assert np.allclose(chan(rho).data, expected, atol=1e-14)
    assert chan.dim == d and chan.a == a


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        boxplus(maximally_mixed(2), maximally_mixed(3), 0.5)
    with pytest.raises(DimensionMismatch):
        kraus_operators(2, 0.5).apply(np.eye(3) / 3)


@given(seeds, a_vals)
def test_bloch_rule(seed, a):
    rng = np.random.default_rng(seed)
    r1, r2 = (v / max(1.0, np.linalg.norm(v)) for v in rng.uniform(-1, 1, (2, 3)))
    out = boxplus(bloch_to_state(r1), bloch_to_state(r2), a)
    via_bloch = boxplus_bloch(r1, r2, a).as_array()
    assert np.allclose(state_to_bloch(out).as_array(), via_bloch, atol=1e-12)


def test_bloch_rule_cross_term_orientation():
    # x cross y = z picks the sign of the commutator term
    out = boxplus_bloch([1, 0, 0], [0, 1, 0], 0.5).as_array()
    assert np.allclose(out, [0.5, 0.5, 0.5])

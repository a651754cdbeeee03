"""Signed uncertainty gaps, extended several-state forms, complementary split."""

import math

import numpy as np
import pytest

from urstates.errors import (
    BasisMismatchError,
    InvalidInputError,
    TruncationError,
)
from urstates.hilbert import Operator, basis_state, fock_basis, su11_basis
from urstates.moments import ObservableSet, observable_set
from urstates.states import canonical_ss, glauber, su2_cs
from urstates.urcheck import (
    char_ur_report,
    complementary,
    one_observable_two_state,
    pair_ur_gaps,
    two_state_schrodinger,
)


def qp(N):
    obs = observable_set("canonical", N=N)
    return obs.ops[0], obs.ops[1]


def test_vacuum_saturates_everything():
    q, p = qp(16)
    rec = pair_ur_gaps(q, p, basis_state(fock_basis(16), 0))
    assert rec.labels == ("q", "p")
    assert abs(rec.sum_gap) < 1e-12
    assert abs(rec.heis_gap) < 1e-12
    assert abs(rec.schr_gap) < 1e-12
    assert rec.saturated == {"sum": True, "heis": True, "schr": True}


def test_fock_level_gaps():
    q, p = qp(32)
    rec = pair_ur_gaps(q, p, basis_state(fock_basis(32), 1))
    # variances 3/2 each: sum gap 3 - 1 = 2, product gap 9/4 - 1/4 = 2
    assert rec.sum_gap == pytest.approx(2.0, abs=1e-12)
    assert rec.heis_gap == pytest.approx(2.0, abs=1e-12)
    assert not rec.saturated["sum"]


def test_squeezed_state_saturates_schrodinger_not_sum():
    q, p = qp(128)
    st = canonical_ss(0.4, math.cosh(0.8), math.sinh(0.8) * np.exp(0.9j),
                      N=128)
    rec = pair_ur_gaps(q, p, st)
    assert rec.saturated["schr"]
    assert rec.sum_gap > 1e-3


def test_char_report_orders_and_pairs():
    obs = observable_set("su11:0.5", N=48)
    rep = char_ur_report(obs, basis_state(su11_basis(0.5, 48), 0))
    assert sorted(rep.order_gaps) == [1, 2, 3]
    assert sorted(rep.pair_gaps) == [(0, 1), (0, 2), (1, 2)]
    # r = 1 compares tr sigma against tr C = 0
    assert rep.order_gaps[1].c_comm == 0.0
    assert rep.order_gaps[1].gap == pytest.approx(rep.order_gaps[1].c_sigma)
    assert rep.n_states == 1


def test_char_report_needs_two_observables():
    obs = observable_set("canonical", N=16)
    single = ObservableSet([obs.ops[0]])
    with pytest.raises(InvalidInputError):
        char_ur_report(single, basis_state(fock_basis(16), 0))


def test_extended_report_sums_matrices():
    obs = observable_set("canonical", N=64)
    s1 = glauber(0.5, N=64)
    s2 = glauber(-0.3j, N=64)
    both = char_ur_report(obs, [s1, s2])
    assert both.n_states == 2
    # two coherent states: sigma_sum = I, C_sum has entries +-1, so the
    # det-form gap is 1 - 1 = 0 (Glauber pairs saturate the extended form)
    assert both.order_gaps[2].gap == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(InvalidInputError):
        char_ur_report(obs, [])
    with pytest.raises(InvalidInputError):
        char_ur_report(obs, [s1] * 9)


def test_two_state_schrodinger_reduces_to_single():
    q, p = qp(96)
    st = canonical_ss(0.2, math.cosh(0.5), math.sinh(0.5), N=96)
    gap2 = two_state_schrodinger(q, p, st, st)
    rec = pair_ur_gaps(q, p, st)
    assert gap2 == pytest.approx(rec.schr_gap, abs=1e-12)


def test_two_state_schrodinger_positive_on_mismatched_pair():
    q, p = qp(96)
    narrow = canonical_ss(0.0, math.cosh(0.9), math.sinh(0.9), N=96)
    wide = canonical_ss(0.0, math.cosh(0.9), -math.sinh(0.9), N=96)
    assert two_state_schrodinger(q, p, narrow, wide) > 0.1


def test_one_observable_two_state():
    q, _p = qp(64)
    s1 = glauber(0.4, N=64)
    assert one_observable_two_state(q, s1, s1) == pytest.approx(0.0, abs=1e-12)
    s2 = glauber(1.2j, N=64)
    assert one_observable_two_state(q, s1, s2) >= -1e-12
    with pytest.raises(BasisMismatchError):
        one_observable_two_state(q, s1, glauber(0.4, N=48))
    # the relation is defined for pure states only
    from urstates.hilbert import DensityMatrix
    rho = DensityMatrix(np.outer(s1.amplitudes, s1.amplitudes.conj()),
                        s1.basis)
    with pytest.raises(InvalidInputError):
        one_observable_two_state(q, rho, s1)


def test_one_observable_rejects_non_hermitian():
    obs = observable_set("canonical", N=16)
    bad = Operator("a-ish", np.triu(np.ones((16, 16)), 1), obs.basis)
    with pytest.raises(InvalidInputError):
        one_observable_two_state(bad, basis_state(fock_basis(16), 0),
                                 basis_state(fock_basis(16), 1))


def test_tail_gate_applies():
    q, p = qp(20)
    top = basis_state(fock_basis(20), 19)
    with pytest.raises(TruncationError):
        pair_ur_gaps(q, p, top)


def test_complementary_split_spin_half():
    # spin-1/2 coherent states have C_2(sigma) = C_2(C) = 1/16 exactly, so
    # the order-2 split at alpha = C_2(sigma) is an exact partition of one
    obs = observable_set("su2:0.5")
    st = su2_cs(0.7 + 0.2j, 0.5)
    rep = char_ur_report(obs, st)
    alpha = rep.order_gaps[2].c_sigma
    pair = complementary(rep, 2, alpha)
    assert pair.P_sq + pair.V_sq == pytest.approx(1.0, abs=1e-12)
    assert rep.complementary is pair
    doc = pair.to_json_dict()
    assert set(doc) == {"r", "alpha", "P2", "V2"}


def test_complementary_with_slack_scale():
    obs = observable_set("su2:0.5")
    rep = char_ur_report(obs, su2_cs(0.4, 0.5))
    alpha = 2.0 * rep.order_gaps[2].c_sigma
    pair = complementary(rep, 2, alpha)
    assert pair.P_sq + pair.V_sq <= 1.0 + 1e-12
    assert pair.P_sq == pytest.approx(0.5, abs=1e-10)


def test_complementary_validation():
    obs = observable_set("su2:0.5")
    rep = char_ur_report(obs, su2_cs(0.4, 0.5))
    with pytest.raises(InvalidInputError):
        complementary(rep, 5, 1.0)
    with pytest.raises(InvalidInputError):
        complementary(rep, 2, 0.0)
    with pytest.raises(InvalidInputError):
        complementary(rep, 2, rep.order_gaps[2].c_sigma / 2.0)


def test_report_json_shape():
    obs = observable_set("canonical", N=32)
    rep = char_ur_report(obs, glauber(0.3, N=32))
    doc = rep.to_json_dict()
    assert set(doc) == {"observables", "n_states", "orders", "pairs"}
    assert set(doc["orders"]) == {"1", "2"}
    assert set(doc["pairs"]) == {"0,1"}
    assert doc["pairs"]["0,1"]["saturated"]["schr"] is True

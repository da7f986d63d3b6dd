"""Basis-change certificates, orbit lattices, and subgroup orders."""
from __future__ import annotations

import random

import pytest

from bwstab.beyond import (
    UnknownNameError,
    basis_change,
    basis_change_z_lattice,
    group_order_and_center,
    group_order_full,
    group_order_mod_center,
    group_spec,
    membership_state,
    membership_unitary,
    module_z_lattice,
    orbit_z_lattice,
    qudit_clifford_spec,
)
from bwstab.clifford import CliffordCircuit, Htilde, apply_circuit, evaluate_circuit
from bwstab.cyclo import CycNum, zeta
from bwstab.linalg import FieldMatrix, FieldVector


def _random_word(rng, spec, length=6):
    m = FieldMatrix.identity(spec.generators[0].rows, spec.conductor)
    for _ in range(length):
        g = rng.choice(spec.generators)
        k = max(m.conductor, g.conductor)
        m = g.lift(k) @ m.lift(k)
    return m


@pytest.mark.parametrize("name", ["clifford-1", "clifford-2", "real-clifford-1",
                                  "rational-2", "rational-3"])
def test_generator_words_are_members(name):
    rng = random.Random(hash(name) % 1000)
    spec = group_spec(name)
    bc = basis_change(name)
    for _ in range(5):
        u = _random_word(rng, spec)
        ok, reason = membership_unitary(u, bc)
        assert ok, reason


@pytest.mark.parametrize("name", ["clifford-1", "real-clifford-1"])
def test_non_members_fail(name):
    bc = basis_change(name)
    k = bc.conductor
    # diag(1, zeta_16) lies outside the field for both basis changes
    t = FieldMatrix(2, 2, [CycNum.one(16), CycNum.zero(16),
                           CycNum.zero(16), zeta(16)])
    ok, reason = membership_unitary(t, bc)
    assert not ok and reason == "not in field"
    # a non-unitary integral matrix is refused up front
    d = FieldMatrix(2, 2, [CycNum.one(4), CycNum.zero(4),
                           CycNum.zero(4), CycNum.rational(3, 4)])
    ok, reason = membership_unitary(d, bc)
    assert not ok and reason == "not unitary"


def test_s_gate_not_in_real_subgroup():
    from bwstab.clifford import S

    bc = basis_change("real-clifford-1")
    s = evaluate_circuit(CliffordCircuit(1, (S(0),)))
    ok, reason = membership_unitary(s, bc)
    assert not ok and reason == "not in field"


def test_state_membership():
    bc = basis_change("clifford-1")
    one, zero = CycNum.one(4), CycNum.zero(4)
    assert membership_state(FieldVector([one, zero]), bc)[0]
    assert membership_state(FieldVector([one, one]), bc)[0]
    half = CycNum.rational(1, 4) * CycNum.rational(2, 4).inverse()
    ok, reason = membership_state(FieldVector([half, zero]), bc)
    assert not ok


def test_orbit_lattice_equals_basis_change_lattice():
    for group, basis, seed_index in (("clifford-1", "clifford-1", 0),
                                     ("rational-2", "rational-2", 0)):
        spec = group_spec(group)
        dim = spec.generators[0].rows
        seed = FieldVector.basis_state(dim, seed_index, spec.conductor)
        lat = orbit_z_lattice(spec, seed)
        assert lat == basis_change_z_lattice(basis_change(basis))


def test_rational_three_orbit_matches_alternate_basis():
    spec = group_spec("rational-3")
    one, zero = CycNum.one(1), CycNum.zero(1)
    seed = FieldVector([one, zero, zero, zero, one, zero, zero, zero])
    lat = orbit_z_lattice(spec, seed)
    assert lat == basis_change_z_lattice(basis_change("rational-3-alt"))


def test_rational_three_lattices_are_invariant():
    spec = group_spec("rational-3")
    for name in ("rational-3", "rational-3-alt"):
        bc = basis_change(name)
        lat = basis_change_z_lattice(bc)
        cols = [bc.matrix.col(c) for c in range(bc.matrix.cols)]
        from bwstab.beyond import flatten_vector

        for g in spec.generators:
            for v in cols:
                k = max(g.conductor, v.conductor)
                w = g.lift(k).apply(v.lift(k))
                assert lat.contains(flatten_vector(w, bc.conductor))


def test_qutrit_group_order():
    spec = group_spec("qutrit-1")
    count, scalars = group_order_and_center(spec)
    assert count == 216
    assert spec.center_order % scalars == 0  # declared center may be larger


def test_clifford_two_order_via_spec():
    assert group_order_mod_center(group_spec("clifford-2")) == 11520


def test_qudit_spec_validation():
    with pytest.raises(ValueError):
        qudit_clifford_spec(7)
    spec = qudit_clifford_spec(3)
    for g in spec.generators:
        assert g.is_unitary()


def test_unknown_names():
    with pytest.raises(UnknownNameError):
        basis_change("no-such-basis")
    with pytest.raises(UnknownNameError):
        group_spec("no-such-group")


def test_fixture_checksums_verified():
    for name in ("clifford-1", "real-clifford-1", "rational-2",
                 "rational-3", "rational-3-alt", "qutrit-1", "qutrit-2",
                 "qudit-5"):
        bc = basis_change(name)
        assert bc.matrix.rows == bc.matrix.cols


def test_tensor_power_basis_changes():
    b1 = basis_change("clifford-1").matrix
    b2 = basis_change("clifford-2").matrix
    assert b2 == b1.tensor(b1)

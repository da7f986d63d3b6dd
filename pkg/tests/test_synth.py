"""Recognition and synthesis of post-selected stabilizer operators."""
from __future__ import annotations

import random

import pytest

from bwstab.barneswall import BWLattice, bw_norm, in_lattice
from bwstab.clifford import CliffordCircuit, evaluate_circuit, random_clifford_circuit
from bwstab.cyclo import CycNum, one_plus_i, zeta
from bwstab.linalg import FieldMatrix, FieldVector
from bwstab.synth import (
    NotStabilizerOperator,
    check_theorem1,
    choi_state,
    recognize,
    recognize_state,
    reconstruct,
)
from conftest import random_stab_form, random_stab_state


def test_round_trip_random_operators():
    rng = random.Random(0)
    for _ in range(60):
        n_in, n_out = rng.randint(1, 2), rng.randint(1, 2)
        m = rng.choice([2, 3])
        f = random_stab_form(rng, n_in, n_out, m)
        a = reconstruct(f)
        v = check_theorem1(a, n_in, n_out, m)
        assert v.passed
        g = recognize(a, n_in, n_out, m)
        assert g.k == f.k
        assert reconstruct(g) == a


def test_round_trip_three_qubit_cases():
    rng = random.Random(1)
    for _ in range(8):
        n_in, n_out = rng.choice([(3, 2), (2, 3), (3, 3), (3, 1)])
        m = rng.choice([2, 3])
        f = random_stab_form(rng, n_in, n_out, m)
        a = reconstruct(f)
        g = recognize(a, n_in, n_out, m)
        assert g.k == f.k and reconstruct(g) == a


def test_soundness_single_entry_mutation():
    rng = random.Random(2)
    for _ in range(20):
        n_in, n_out = rng.randint(1, 2), rng.randint(1, 2)
        f = random_stab_form(rng, n_in, n_out, 2)
        a = reconstruct(f)
        r, c = rng.randrange(a.rows), rng.randrange(a.cols)
        ents = list(a.entries)
        ents[r * a.cols + c] = ents[r * a.cols + c] + CycNum.one(a.conductor)
        mut = FieldMatrix(a.rows, a.cols, ents)
        try:
            g = recognize(mut, n_in, n_out, 2)
        except NotStabilizerOperator:
            continue
        assert reconstruct(g) == mut  # a mutant may itself be a stabilizer op


def test_t_gate_rejected():
    t = FieldMatrix(2, 2, [CycNum.one(8), CycNum.zero(8),
                           CycNum.zero(8), zeta(8)])
    v = check_theorem1(t, 1, 1, 3)
    assert not v.passed
    with pytest.raises(NotStabilizerOperator):
        recognize(t, 1, 1, 3)


def test_projector_scaling():
    one, zero = CycNum.one(4), CycNum.zero(4)
    proj = FieldMatrix(2, 2, [one, zero, zero, zero])
    v = check_theorem1(proj, 1, 1, 2)
    assert not v.trace_ok and not v.passed

    scaled = proj.scale(one_plus_i())
    g = recognize(scaled, 1, 1, 2)
    assert g.k == 0
    assert reconstruct(g) == scaled


def test_zero_matrix_rejected():
    z = FieldMatrix.zero(2, 2, 4)
    v = check_theorem1(z, 1, 1, 2)
    assert not v.passed and "zero" in v.failure_reason


def test_scalar_covariance():
    rng = random.Random(3)
    f = random_stab_form(rng, 2, 2, 3)
    a = reconstruct(f)
    g = recognize(a, 2, 2, 3)
    a2 = a.scale(zeta(8).lift(a.conductor))
    g2 = recognize(a2, 2, 2, 3)
    assert g2.phase_exp == (g.phase_exp + 1) % 8
    assert g2.k == g.k


def test_clifford_unitaries_have_full_inner_dimension():
    rng = random.Random(4)
    for n in (1, 2, 3):
        u = evaluate_circuit(random_clifford_circuit(n, rng, 20))
        g = recognize(u, n, n, 2)
        assert g.k == n
        assert reconstruct(g) == u


def test_choi_states_are_lattice_vectors_of_fixed_norm():
    rng = random.Random(5)
    for _ in range(15):
        n_in, n_out = rng.randint(1, 2), rng.randint(1, 2)
        a = reconstruct(random_stab_form(rng, n_in, n_out, 2))
        psi = choi_state(a, n_in, n_out).vector
        lat = BWLattice(n_in + n_out, 2)
        assert in_lattice(psi, lat)
        assert bw_norm(psi, lat) == 1 << (n_in + n_out)


def test_recognize_state_round_trip():
    rng = random.Random(6)
    from bwstab.clifford import apply_circuit

    for _ in range(25):
        n = rng.randint(1, 3)
        m = rng.choice([2, 3])
        psi = random_stab_state(rng, n, m)
        res = recognize_state(psi, m)
        assert res is not None
        j, t, circ = res
        k = 1 << m
        w = apply_circuit(circ, FieldVector.basis_state(1 << n, 0, 4))
        assert w.lift(k).scale(zeta(k, j) * one_plus_i(k) ** t) == psi.lift(k)


def test_recognize_state_rejects_non_stabilizer():
    one, zero = CycNum.one(4), CycNum.zero(4)
    two = CycNum.rational(2, 4)
    assert recognize_state(FieldVector([one, zero, zero, two]), 2) is None
    half = CycNum.rational(1, 4) * CycNum.rational(2, 4).inverse()
    assert recognize_state(FieldVector([half, zero]), 2) is None


def test_infer_conductor():
    from bwstab.cyclo import FieldError
    from bwstab.synth import infer_dyadic_conductor

    assert infer_dyadic_conductor([CycNum.one(4), zeta(8)]) == 8
    assert infer_dyadic_conductor([CycNum.one(1)]) == 4
    with pytest.raises(FieldError):
        infer_dyadic_conductor([zeta(3)])

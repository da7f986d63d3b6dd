"""End-to-end acceptance gate.

Each test covers one advertised guarantee; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""
from __future__ import annotations

import functools
import random
import time
from fractions import Fraction

import pytest

from bwstab.barneswall import (
    BWLattice,
    brute_force_short_vectors,
    bw_norm,
    certify_stabilizer_form,
    enumerate_minimal_vectors,
    in_lattice,
    lattice_minimum,
    operator_in_bw,
)
from bwstab.beyond import (
    basis_change,
    basis_change_z_lattice,
    group_order_and_center,
    group_order_full,
    group_order_mod_center,
    group_spec,
    membership_unitary,
    orbit_z_lattice,
)
from bwstab.clifford import (
    ResourceCapExceeded,
    apply_circuit,
    clifford_order,
    evaluate_circuit,
    random_clifford_circuit,
)
from bwstab.cyclo import CycNum, one_plus_i, zeta
from bwstab.linalg import (
    FieldMatrix,
    FieldVector,
    kron_apply,
    tensor_all,
)
from bwstab.pauli import is_stabilizer_state
from bwstab.synth import (
    NotStabilizerOperator,
    check_theorem1,
    choi_state,
    recognize,
    reconstruct,
)
from conftest import random_stab_form
from test_pauli import run_trace_criterion_suite


def test_criterion_01_clifford_group_orders():
    """Tableau BFS reproduces the one- and two-qubit Clifford group sizes."""
    t0 = time.time()
    assert clifford_order(1) == 24
    assert clifford_order(2) == 11520
    assert time.time() - t0 < 60
    # three qubits is declined cleanly under a small cap
    with pytest.raises(ResourceCapExceeded):
        clifford_order(3, cap=100_000)


def test_criterion_02_subgroup_orders():
    """Qutrit, five-level, and three-qubit rational subgroup orders."""
    t0 = time.time()
    count3, scal3 = group_order_and_center(group_spec("qutrit-1"))
    assert count3 == 216
    count5, scal5 = group_order_and_center(group_spec("qudit-5"))
    assert count5 == 3000
    assert group_order_full(group_spec("rational-3")) == 2_580_480
    assert time.time() - t0 < 600


@pytest.mark.parametrize("n,m,count", [(1, 2, 24), (1, 3, 48), (2, 2, 240)])
def test_criterion_03_minimal_vectors(n, m, count):
    """Recursive enumeration matches the box-search oracle; every minimal
    vector is a phased stabilizer state with an explicit circuit."""
    lat = BWLattice(n, m)
    k = lat.conductor
    mins = enumerate_minimal_vectors(lat)
    oracle = brute_force_short_vectors(lat, lattice_minimum(lat))
    assert len(mins) == len(oracle) == count
    assert ({v.key(k) for v in mins} == {v.key(k) for v in oracle})
    for v in mins:
        assert is_stabilizer_state(v)
        cert = certify_stabilizer_form(v, lat)
        assert cert is not None
        j, circ = cert
        w = apply_circuit(circ, FieldVector.basis_state(lat.dim, 0, 4))
        assert w.lift(k).scale(zeta(k, j) * one_plus_i(k) ** n) == v.lift(k)


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (2, 2)])
def test_criterion_04_lattice_minimum(n, m):
    """The enumerated minimum equals the closed form 2^(m-2) * 2^n."""
    lat = BWLattice(n, m)
    oracle = brute_force_short_vectors(lat, lattice_minimum(lat))
    least = min(bw_norm(v, lat) for v in oracle)
    assert least == lattice_minimum(lat) == Fraction(2 ** (m - 2) * 2 ** n)


@functools.lru_cache(maxsize=1)
def _round_trip_run():
    """1000 random operators: round trip, mutation soundness, Choi norms."""
    rng = random.Random(20260824)
    ops = []
    t0 = time.time()
    for _ in range(1000):
        n_in, n_out = rng.randint(1, 3), rng.randint(1, 3)
        m = rng.choice([2, 3])
        f = random_stab_form(rng, n_in, n_out, m)
        a = reconstruct(f)
        assert check_theorem1(a, n_in, n_out, m).passed
        g = recognize(a, n_in, n_out, m)
        assert g.k == f.k
        assert reconstruct(g) == a
        ops.append((a, n_in, n_out, m))
    elapsed = time.time() - t0

    mutants_rejected = 0
    for a, n_in, n_out, m in ops:
        r, c = rng.randrange(a.rows), rng.randrange(a.cols)
        ents = list(a.entries)
        ents[r * a.cols + c] = ents[r * a.cols + c] + CycNum.one(a.conductor)
        mut = FieldMatrix(a.rows, a.cols, ents)
        try:
            g = recognize(mut, n_in, n_out, m)
        except NotStabilizerOperator:
            mutants_rejected += 1
            continue
        if reconstruct(g) != mut:
            mutants_rejected += 1

    choi_ok = 0
    for a, n_in, n_out, m in ops:
        psi = choi_state(a, n_in, n_out).vector
        lat = BWLattice(n_in + n_out, m)
        if in_lattice(psi, lat) and bw_norm(psi, lat) == (
                Fraction(2 ** (m - 2)) * 2 ** (n_in + n_out)):
            choi_ok += 1
    return len(ops), elapsed, mutants_rejected, choi_ok


def test_criterion_05_round_trip_1000_operators():
    """1000 random stabilizer operators round-trip exactly in under 5 min."""
    total, elapsed, _, _ = _round_trip_run()
    assert total == 1000
    assert elapsed < 300


def test_criterion_06_soundness():
    """Every single-entry mutation is rejected; T and the bare projector
    are rejected; the (1+i)-scaled projector is accepted with k = 0."""
    total, _, mutants_rejected, _ = _round_trip_run()
    assert mutants_rejected == total

    t = FieldMatrix(2, 2, [CycNum.one(8), CycNum.zero(8),
                           CycNum.zero(8), zeta(8)])
    assert not check_theorem1(t, 1, 1, 3).passed

    one, zero = CycNum.one(4), CycNum.zero(4)
    proj = FieldMatrix(2, 2, [one, zero, zero, zero])
    verdict = check_theorem1(proj, 1, 1, 2)
    assert not verdict.trace_ok
    g = recognize(proj.scale(one_plus_i()), 1, 1, 2)
    assert g.k == 0


def test_criterion_07_choi_states_are_minimal_vectors():
    """Choi states of all generated operators lie in the Barnes-Wall lattice
    with the minimal norm for their conductor."""
    total, _, _, choi_ok = _round_trip_run()
    assert choi_ok == total


def test_criterion_08_clifford_lattice_compatibility():
    """200 random Clifford matrices preserve the lattice; the butterfly
    Kronecker application agrees with the naive product up to 5 qubits."""
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 3)
        u = evaluate_circuit(random_clifford_circuit(n, rng, 15))
        ok, transformed = operator_in_bw(u, n, n, 2)
        assert ok and transformed.is_integral()

    from test_linalg import _rand_matrix, _rand_vector

    for n in range(1, 6):
        m = _rand_matrix(rng, 2, 2, 8)
        v = _rand_vector(rng, 1 << n, 8)
        assert kron_apply(m, n, v) == tensor_all([m] * n).apply(v)


def test_criterion_09_trace_equality_suite():
    """100 random stabilizer states: the trace equality holds exactly for
    stabilizer generators and fails for non-stabilizing Hermitian Paulis."""
    run_trace_criterion_suite(100, seed=9)


def test_criterion_10_membership_and_orbit_certificates():
    """Generator words certify as members, mutations fail, and the orbit
    lattices equal the tabulated basis-change lattices."""
    rng = random.Random(10)
    for name in ("clifford-1", "clifford-2", "real-clifford-1",
                 "rational-2", "rational-3"):
        spec = group_spec(name)
        bc = basis_change(name)
        for _ in range(5):
            u = FieldMatrix.identity(spec.generators[0].rows, spec.conductor)
            for _ in range(6):
                g = rng.choice(spec.generators)
                k = max(u.conductor, g.conductor)
                u = g.lift(k) @ u.lift(k)
            ok, reason = membership_unitary(u, bc)
            assert ok, (name, reason)

    for name in ("clifford-1", "real-clifford-1"):
        t = FieldMatrix(2, 2, [CycNum.one(16), CycNum.zero(16),
                               CycNum.zero(16), zeta(16)])
        assert not membership_unitary(t, basis_change(name))[0]
    s = FieldMatrix(2, 2, [CycNum.one(4), CycNum.zero(4),
                           CycNum.zero(4), zeta(4)])
    assert not membership_unitary(s, basis_change("real-clifford-1"))[0]

    for group, basis in (("clifford-1", "clifford-1"),
                         ("rational-2", "rational-2")):
        spec = group_spec(group)
        seed = FieldVector.basis_state(spec.generators[0].rows, 0,
                                       spec.conductor)
        assert (orbit_z_lattice(spec, seed)
                == basis_change_z_lattice(basis_change(basis)))
    spec = group_spec("rational-3")
    one, zero = CycNum.one(1), CycNum.zero(1)
    seed = FieldVector([one, zero, zero, zero, one, zero, zero, zero])
    assert (orbit_z_lattice(spec, seed)
            == basis_change_z_lattice(basis_change("rational-3-alt")))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_criterion_11_duality(n):
    """Dual pairing integrality and the double dual identity."""
    from bwstab.beyond import module_z_lattice
    from bwstab.cyclo import is_integral
    from bwstab.barneswall import from_bw_coords, in_dual
    from bwstab.linalg import inner_product

    lat = BWLattice(n, 2)
    k = lat.conductor
    basis = [from_bw_coords(FieldVector.basis_state(lat.dim, j, k), lat)
             for j in range(lat.dim)]
    scale = one_plus_i(k).inverse() ** n
    dual = [b.scale(scale) for b in basis]
    for u in dual:
        assert in_dual(u, lat)
        for w in basis:
            assert is_integral(inner_product(u, w))
    double_dual = [b.scale(one_plus_i(k) ** n) for b in dual]
    assert module_z_lattice(double_dual, k) == module_z_lattice(basis, k)

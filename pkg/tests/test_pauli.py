"""Pauli algebra, stabilizer-group extraction, and the trace criterion."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bwstab.cyclo import trace_E_over_Q
from bwstab.linalg import FieldVector, inner_product, norm_sq
from bwstab.pauli import (
    PauliOp,
    brute_force_stabilizer_group,
    is_stabilizer_state,
    stabilizer_group,
    stabilizes,
)
from conftest import random_stab_state


def test_pauli_multiplication_and_phases():
    x = PauliOp.from_label("X")
    z = PauliOp.from_label("Z")
    y = PauliOp.from_label("Y")
    assert (x * z).canonical() == y
    assert x * x == PauliOp.identity(1)
    assert (z * x).phase != (x * z).phase  # anticommute
    assert not x.commutes(z)
    assert x.commutes(x)


def test_hermitian_and_sign():
    y = PauliOp.from_label("Y")
    assert y.is_hermitian() and y.sign() == 1
    assert (-y).sign() == -1
    iy = y.times_i()
    assert not iy.is_hermitian()


def test_apply_matches_matrix():
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(1, 3)
        p = PauliOp(n, rng.randrange(1 << n), rng.randrange(1 << n),
                    rng.randrange(4))
        v = random_stab_state(rng, n, 3)
        assert p.apply(v) == p.to_matrix(8).apply(v)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stabilizer_group_matches_brute_force(n):
    rng = random.Random(100 + n)
    for _ in range(10):
        psi = random_stab_state(rng, n, 3)
        fast = stabilizer_group(psi)
        slow = brute_force_stabilizer_group(psi)
        fast_elems = {(p.x, p.z, p.phase) for p in fast.elements()}
        slow_elems = {(p.x, p.z, p.phase) for p in slow.elements()}
        assert fast_elems == slow_elems
        assert len(fast) == n


def test_non_stabilizer_state_detected():
    from bwstab.cyclo import CycNum

    one = CycNum.one(4)
    two = CycNum.rational(2, 4)
    zero = CycNum.zero(4)
    psi = FieldVector([one, zero, zero, two])
    assert not is_stabilizer_state(psi)
    assert is_stabilizer_state(FieldVector([one, zero, zero, one]))


def _half_trace(c) -> Fraction:
    return Fraction(trace_E_over_Q(c), 2)


def run_trace_criterion_suite(n_states: int, seed: int = 0) -> None:
    """For random phased stabilizer states over Q(zeta_8): each stabilizer
    generator satisfies Tr_K<psi|P|psi> = Tr_K<psi|psi>; random Hermitian
    Paulis outside the group (up to sign) fail it."""
    rng = random.Random(seed)
    hermitian_checked = 0
    for _ in range(n_states):
        n = rng.randint(1, 3)
        psi = random_stab_state(rng, n, 3)
        target = _half_trace(norm_sq(psi))
        grp = stabilizer_group(psi)
        for p in grp:
            val = _half_trace(inner_product(psi, p.apply(psi)))
            assert val == target
            assert stabilizes(p, psi)
        masks = {(p.x, p.z) for p in grp.elements()}
        tries = 0
        while tries < 10:
            x, z = rng.randrange(1 << n), rng.randrange(1 << n)
            if (x, z) in masks or (x == 0 and z == 0):
                tries += 1
                continue
            q = PauliOp(n, x, z, 0).canonical()
            for cand in (q, -q):
                val = _half_trace(inner_product(psi, cand.apply(psi)))
                assert val != target
                assert not stabilizes(cand, psi)
            hermitian_checked += 1
            break
    assert hermitian_checked >= n_states // 2


def test_trace_criterion_small():
    run_trace_criterion_suite(15, seed=7)

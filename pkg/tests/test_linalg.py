"""Exact linear algebra: structure identities and the fast Kronecker path."""
from __future__ import annotations

import random

import pytest

from bwstab.cyclo import CycNum, zeta
from bwstab.linalg import (
    FieldMatrix,
    FieldVector,
    inner_product,
    kron_apply,
    kron_apply_matrix,
    norm_sq,
    tensor_all,
)


def _rand_cyc(rng, k=8, span=3):
    from bwstab.cyclo import euler_phi
    from fractions import Fraction

    return CycNum(k, tuple(Fraction(rng.randint(-span, span),
                                    rng.choice([1, 1, 2]))
                           for _ in range(euler_phi(k))))


def _rand_matrix(rng, rows, cols, k=8):
    return FieldMatrix(rows, cols,
                       [_rand_cyc(rng, k) for _ in range(rows * cols)])


def _rand_vector(rng, length, k=8):
    return FieldVector([_rand_cyc(rng, k) for _ in range(length)])


def test_dagger_and_trace_identities():
    rng = random.Random(0)
    a = _rand_matrix(rng, 3, 3)
    b = _rand_matrix(rng, 3, 3)
    assert a.dagger().dagger() == a
    assert (a @ b).dagger() == b.dagger() @ a.dagger()
    assert (a @ b).trace() == (b @ a).trace()
    assert (a + b).trace() == a.trace() + b.trace()


def test_matrix_inverse():
    rng = random.Random(1)
    for _ in range(5):
        a = _rand_matrix(rng, 3, 3)
        try:
            inv = a.inverse()
        except Exception:
            continue
        assert a @ inv == FieldMatrix.identity(3, a.conductor)


def test_inner_product_conjugate_linear_in_first_argument():
    rng = random.Random(2)
    u = _rand_vector(rng, 4)
    v = _rand_vector(rng, 4)
    c = zeta(8, 3)
    assert inner_product(u.scale(c), v) == c.conj() * inner_product(u, v)
    assert inner_product(u, v.scale(c)) == c * inner_product(u, v)
    assert inner_product(u, v).conj() == inner_product(v, u)
    assert norm_sq(u) == inner_product(u, u)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_kron_apply_matches_naive_kronecker(n):
    rng = random.Random(10 + n)
    m = _rand_matrix(rng, 2, 2, 8)
    v = _rand_vector(rng, 1 << n, 8)
    fast = kron_apply(m, n, v)
    naive = tensor_all([m] * n).apply(v)
    assert fast == naive


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kron_apply_matrix_matches_naive(n):
    rng = random.Random(20 + n)
    m = _rand_matrix(rng, 2, 2, 8)
    a = _rand_matrix(rng, 1 << n, 1 << n, 8)
    big = tensor_all([m] * n)
    assert kron_apply_matrix(m, n, a, side="left") == big @ a
    assert kron_apply_matrix(m, n, a, side="right") == a @ big


def test_tensor_shapes_and_values():
    rng = random.Random(3)
    a = _rand_matrix(rng, 2, 2)
    b = _rand_matrix(rng, 2, 2)
    t = a.tensor(b)
    assert t.rows == 4 and t.cols == 4
    for r in range(4):
        for c in range(4):
            assert t[r, c] == a[r >> 1, c >> 1] * b[r & 1, c & 1]

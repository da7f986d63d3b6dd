"""Exact dense linear algebra over cyclotomic fields.

Index convention: the first tensor factor is the most significant index
(qubit 1 is the leftmost factor and the top bit of a computational-basis
index).  This is fixed once here and relied on everywhere else.
"""
from __future__ import annotations

import math
from typing import Callable, Sequence

from .cyclo import CycNum, FieldError, euler_phi


class ShapeError(ValueError):
    """Raised on dimension mismatches."""


def _coerce(x, conductor: int | None = None) -> CycNum:
    if not isinstance(x, CycNum):
        x = CycNum.rational(x, 1)
    if conductor is not None:
        x = x.lift(conductor)
    return x


def _common_conductor(items) -> int:
    k = 1
    for x in items:
        k = math.lcm(k, x.conductor)
    return k


class FieldVector:
    """A dense vector of CycNum sharing one conductor."""

    __slots__ = ("conductor", "entries")

    def __init__(self, entries: Sequence):
        es = [_coerce(e) for e in entries]
        k = _common_conductor(es)
        self.conductor = k
        self.entries = tuple(e.lift(k) for e in es)

    @staticmethod
    def zero(length: int, conductor: int = 1) -> FieldVector:
        return FieldVector([CycNum.zero(conductor)] * length)

    @staticmethod
    def basis_state(length: int, index: int, conductor: int = 1) -> FieldVector:
        es = [CycNum.zero(conductor)] * length
        es[index] = CycNum.one(conductor)
        return FieldVector(es)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, j) -> CycNum:
        return self.entries[j]

    def lift(self, conductor: int) -> FieldVector:
        return FieldVector([e.lift(conductor) for e in self.entries])

    def __add__(self, other: FieldVector) -> FieldVector:
        if len(self) != len(other):
            raise ShapeError("vector length mismatch")
        return FieldVector([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: FieldVector) -> FieldVector:
        if len(self) != len(other):
            raise ShapeError("vector length mismatch")
        return FieldVector([a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> FieldVector:
        return FieldVector([-a for a in self.entries])

    def scale(self, c) -> FieldVector:
        c = _coerce(c)
        return FieldVector([c * a for a in self.entries])

    def conj(self) -> FieldVector:
        return FieldVector([a.conj() for a in self.entries])

    def tensor(self, other: FieldVector) -> FieldVector:
        return FieldVector([a * b for a in self.entries for b in other.entries])

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_integral(self) -> bool:
        return all(e.is_integral() for e in self.entries)

    def support(self) -> list[int]:
        return [j for j, e in enumerate(self.entries) if not e.is_zero()]

    def __eq__(self, other):
        if not isinstance(other, FieldVector):
            return NotImplemented
        return len(self) == len(other) and all(
            a == b for a, b in zip(self.entries, other.entries)
        )

    def __hash__(self):
        return hash(tuple(self.entries))

    def key(self, conductor: int | None = None):
        """Canonical dedup key: coefficient tuples at a fixed conductor."""
        v = self if conductor is None else self.lift(conductor)
        return tuple(e.coeffs for e in v.entries)

    def __repr__(self):
        return f"FieldVector({list(self.entries)!r})"


def inner_product(a: FieldVector, b: FieldVector) -> CycNum:
    """<a|b> = sum_j conj(a_j) b_j (conjugate-linear in the first argument)."""
    if len(a) != len(b):
        raise ShapeError("vector length mismatch in inner product")
    total = CycNum.zero(math.lcm(a.conductor, b.conductor))
    for x, y in zip(a.entries, b.entries):
        total = total + x.conj() * y
    return total


def norm_sq(a: FieldVector) -> CycNum:
    return inner_product(a, a)


class FieldMatrix:
    """A dense row-major matrix of CycNum sharing one conductor."""

    __slots__ = ("conductor", "rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if rows * cols != len(entries):
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        es = [_coerce(e) for e in entries]
        k = _common_conductor(es)
        self.conductor = k
        self.rows = rows
        self.cols = cols
        self.entries = tuple(e.lift(k) for e in es)

    @staticmethod
    def from_rows(data: Sequence[Sequence]) -> FieldMatrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        flat = []
        for r in data:
            if len(r) != cols:
                raise ShapeError("ragged rows")
            flat.extend(r)
        return FieldMatrix(rows, cols, flat)

    @staticmethod
    def identity(n: int, conductor: int = 1) -> FieldMatrix:
        one, zero = CycNum.one(conductor), CycNum.zero(conductor)
        return FieldMatrix(n, n, [one if i == j else zero
                                  for i in range(n) for j in range(n)])

    @staticmethod
    def zero(rows: int, cols: int, conductor: int = 1) -> FieldMatrix:
        return FieldMatrix(rows, cols, [CycNum.zero(conductor)] * (rows * cols))

    def __getitem__(self, rc) -> CycNum:
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> FieldVector:
        return FieldVector(self.entries[r * self.cols:(r + 1) * self.cols])

    def col(self, c: int) -> FieldVector:
        return FieldVector([self.entries[r * self.cols + c] for r in range(self.rows)])

    def lift(self, conductor: int) -> FieldMatrix:
        return FieldMatrix(self.rows, self.cols,
                           [e.lift(conductor) for e in self.entries])

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix shape mismatch")
        return FieldMatrix(self.rows, self.cols,
                           [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        return self + (-other)

    def __neg__(self) -> FieldMatrix:
        return FieldMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> FieldMatrix:
        c = _coerce(c)
        return FieldMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other):
        if isinstance(other, FieldVector):
            return self.apply(other)
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        k = math.lcm(self.conductor, other.conductor)
        a, b = self.lift(k), other.lift(k)
        zero = CycNum.zero(k)
        out = []
        for r in range(a.rows):
            arow = a.entries[r * a.cols:(r + 1) * a.cols]
            for c in range(b.cols):
                acc = zero
                for t in range(a.cols):
                    x = arow[t]
                    if not x.is_zero():
                        acc = acc + x * b.entries[t * b.cols + c]
                out.append(acc)
        return FieldMatrix(a.rows, b.cols, out)

    def apply(self, v: FieldVector) -> FieldVector:
        if self.cols != len(v):
            raise ShapeError("matrix/vector dimension mismatch")
        k = math.lcm(self.conductor, v.conductor)
        a, w = self.lift(k), v.lift(k)
        zero = CycNum.zero(k)
        out = []
        for r in range(a.rows):
            acc = zero
            for t in range(a.cols):
                x = a.entries[r * a.cols + t]
                if not x.is_zero():
                    acc = acc + x * w.entries[t]
            out.append(acc)
        return FieldVector(out)

    def dagger(self) -> FieldMatrix:
        return FieldMatrix(self.cols, self.rows,
                           [self[r, c].conj()
                            for c in range(self.cols) for r in range(self.rows)])

    def transpose(self) -> FieldMatrix:
        return FieldMatrix(self.cols, self.rows,
                           [self[r, c]
                            for c in range(self.cols) for r in range(self.rows)])

    def conj(self) -> FieldMatrix:
        return FieldMatrix(self.rows, self.cols, [e.conj() for e in self.entries])

    def tensor(self, other: FieldMatrix) -> FieldMatrix:
        out = []
        for r1 in range(self.rows):
            for r2 in range(other.rows):
                for c1 in range(self.cols):
                    for c2 in range(other.cols):
                        out.append(self[r1, c1] * other[r2, c2])
        return FieldMatrix(self.rows * other.rows, self.cols * other.cols, out)

    def trace(self) -> CycNum:
        if self.rows != self.cols:
            raise ShapeError("trace of a non-square matrix")
        acc = CycNum.zero(self.conductor)
        for j in range(self.rows):
            acc = acc + self[j, j]
        return acc

    def is_integral(self) -> bool:
        return all(e.is_integral() for e in self.entries)

    def is_unitary(self) -> bool:
        if self.rows != self.cols:
            return False
        return self @ self.dagger() == FieldMatrix.identity(self.rows)

    def inverse(self) -> FieldMatrix:
        if self.rows != self.cols:
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        k = self.conductor
        aug = [[self[r, c] for c in range(n)]
               + [CycNum.one(k) if r == c else CycNum.zero(k) for c in range(n)]
               for r in range(n)]
        for c in range(n):
            pr = next((r for r in range(c, n) if not aug[r][c].is_zero()), None)
            if pr is None:
                raise FieldError("matrix is singular")
            aug[c], aug[pr] = aug[pr], aug[c]
            pivinv = aug[c][c].inverse()
            aug[c] = [x * pivinv for x in aug[c]]
            for r in range(n):
                if r != c and not aug[r][c].is_zero():
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return FieldMatrix.from_rows([row[n:] for row in aug])

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def key(self, conductor: int | None = None):
        m = self if conductor is None else self.lift(conductor)
        return (m.rows, m.cols) + tuple(e.coeffs for e in m.entries)

    def __repr__(self):
        return f"FieldMatrix({self.rows}x{self.cols})"


def tensor_all(mats: Sequence[FieldMatrix]) -> FieldMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.tensor(m)
    return out


def kron_apply(m: FieldMatrix, n: int, v: FieldVector) -> FieldVector:
    """Apply m^{tensor n} to v with n butterfly passes.

    m is s x s and v has length s^n.  Cost is O(s^2 n s^n) field operations,
    versus O(s^(2n)) for materializing the Kronecker product.
    """
    s = m.rows
    if m.cols != s:
        raise ShapeError("kron_apply needs a square factor")
    if len(v) != s**n:
        raise ShapeError(f"vector length {len(v)} is not {s}^{n}")
    k = math.lcm(m.conductor, v.conductor)
    mm = m.lift(k)
    cur = list(v.lift(k).entries)
    zero = CycNum.zero(k)
    total = len(cur)
    for slot in range(n):
        stride = s ** (n - 1 - slot)
        block = stride * s
        nxt = cur[:]
        for base in range(0, total, block):
            for off in range(stride):
                idx = [base + off + a * stride for a in range(s)]
                vals = [cur[t] for t in idx]
                for r in range(s):
                    acc = zero
                    for c in range(s):
                        x = mm.entries[r * s + c]
                        if not x.is_zero():
                            acc = acc + x * vals[c]
                    nxt[idx[r]] = acc
        cur = nxt
    return FieldVector(cur)


def kron_apply_matrix(m: FieldMatrix, n: int, a: FieldMatrix,
                      side: str = "left") -> FieldMatrix:
    """Apply m^{tensor n} to a matrix without materializing the power.

    side="left" computes (m^{tensor n}) a column by column; side="right"
    computes a (m^{tensor n}) row by row.
    """
    if side == "left":
        cols = [kron_apply(m, n, a.col(c)) for c in range(a.cols)]
        return FieldMatrix.from_rows(
            [[cols[c][r] for c in range(a.cols)] for r in range(a.rows)]
        )
    if side == "right":
        # a (m^n) = ((m^n)^T a^T)^T
        rows = [kron_apply(m.transpose(), n, a.row(r)) for r in range(a.rows)]
        return FieldMatrix.from_rows([list(r.entries) for r in rows])
    raise ValueError(f"unknown side {side!r}")

"""Pauli operators and stabilizer groups of exact vectors.

A Pauli operator is P = i^phase * X^x Z^z with factor order X-then-Z per
qubit.  Qubit 0 is the most significant bit of a mask and of a
computational-basis index, matching the tensor convention in linalg.

Hermitian Paulis (the elements of +-{I,X,Y,Z}^n) satisfy
phase == popcount(x & z) (mod 2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .cyclo import CycNum, imag_unit
from .linalg import FieldMatrix, FieldVector


def _pc(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class PauliOp:
    n: int
    x: int
    z: int
    phase: int  # exponent of i, mod 4

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("mask exceeds qubit count")

    @staticmethod
    def identity(n: int) -> PauliOp:
        return PauliOp(n, 0, 0, 0)

    @staticmethod
    def from_label(label: str, sign: int = 1) -> PauliOp:
        """Build from a string like "XIZY"; sign is +1 or -1."""
        n = len(label)
        x = z = 0
        phase = 0
        for q, ch in enumerate(label.upper()):
            bit = 1 << (n - 1 - q)
            if ch == "X":
                x |= bit
            elif ch == "Z":
                z |= bit
            elif ch == "Y":
                x |= bit
                z |= bit
                phase += 1
            elif ch != "I":
                raise ValueError(f"bad Pauli letter {ch!r}")
        if sign == -1:
            phase += 2
        return PauliOp(n, x, z, phase)

    def label(self) -> str:
        letters = []
        for q in range(self.n):
            bit = 1 << (self.n - 1 - q)
            xb, zb = bool(self.x & bit), bool(self.z & bit)
            letters.append("Y" if xb and zb else "X" if xb else "Z" if zb else "I")
        return "".join(letters)

    def is_hermitian(self) -> bool:
        return self.phase % 2 == _pc(self.x & self.z) % 2

    def sign(self) -> int:
        """+1 or -1 for a Hermitian Pauli relative to its canonical form."""
        if not self.is_hermitian():
            raise ValueError("sign of a non-Hermitian phased Pauli")
        return 1 if self.phase % 4 == _pc(self.x & self.z) % 4 else -1

    def canonical(self) -> PauliOp:
        """The +1-sign Hermitian Pauli with the same masks."""
        return PauliOp(self.n, self.x, self.z, _pc(self.x & self.z))

    def __mul__(self, other: PauliOp) -> PauliOp:
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        phase = self.phase + other.phase + 2 * _pc(self.z & other.x)
        return PauliOp(self.n, self.x ^ other.x, self.z ^ other.z, phase)

    def __neg__(self) -> PauliOp:
        return PauliOp(self.n, self.x, self.z, self.phase + 2)

    def times_i(self) -> PauliOp:
        return PauliOp(self.n, self.x, self.z, self.phase + 1)

    def commutes(self, other: PauliOp) -> bool:
        return (_pc(self.x & other.z) + _pc(self.z & other.x)) % 2 == 0

    def is_identity_mask(self) -> bool:
        return self.x == 0 and self.z == 0

    def apply(self, v: FieldVector) -> FieldVector:
        """P v in O(N) with exact phases."""
        n = self.n
        if len(v) != 1 << n:
            raise ValueError("vector dimension mismatch")
        k = v.conductor
        if k % 4 != 0:
            k = math.lcm(k, 4)
            v = v.lift(k)
        iu = imag_unit(k)
        scal = [CycNum.one(k)]
        for _ in range(3):
            scal.append(scal[-1] * iu)
        out: list[CycNum] = [CycNum.zero(k)] * len(v)
        for j, c in enumerate(v.entries):
            if c.is_zero():
                continue
            p = (self.phase + 2 * _pc(self.z & j)) % 4
            out[j ^ self.x] = scal[p] * c
        return FieldVector(out)

    def to_matrix(self, conductor: int = 4) -> FieldMatrix:
        n = self.n
        dim = 1 << n
        iu = imag_unit(conductor)
        scal = [CycNum.one(conductor)]
        for _ in range(3):
            scal.append(scal[-1] * iu)
        zero = CycNum.zero(conductor)
        entries = [zero] * (dim * dim)
        for j in range(dim):
            p = (self.phase + 2 * _pc(self.z & j)) % 4
            entries[(j ^ self.x) * dim + j] = scal[p]
        return FieldMatrix(dim, dim, entries)

    def restrict(self, qubits: Iterable[int]) -> PauliOp:
        """Canonical-sign restriction to the given qubits (in order)."""
        qs = list(qubits)
        m = len(qs)
        x = z = 0
        for t, q in enumerate(qs):
            bit = 1 << (self.n - 1 - q)
            if self.x & bit:
                x |= 1 << (m - 1 - t)
            if self.z & bit:
                z |= 1 << (m - 1 - t)
        return PauliOp(m, x, z, _pc(x & z))

    def embed(self, n: int, qubits: Iterable[int]) -> PauliOp:
        """Embed into n qubits, mapping local qubit t to global qubits[t]."""
        qs = list(qubits)
        x = z = 0
        for t, q in enumerate(qs):
            src = 1 << (self.n - 1 - t)
            dst = 1 << (n - 1 - q)
            if self.x & src:
                x |= dst
            if self.z & src:
                z |= dst
        return PauliOp(n, x, z, self.phase)

    def __repr__(self):
        pre = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase % 4]
        return f"{pre}{self.label()}"


def stabilizes(p: PauliOp, psi: FieldVector) -> bool:
    """Exact test of P psi == psi."""
    if psi.is_zero():
        raise ValueError("the zero vector has every Pauli as a stabilizer")
    return p.apply(psi) == psi


@dataclass(frozen=True)
class StabGroup:
    n: int
    generators: tuple[PauliOp, ...]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def elements(self) -> list[PauliOp]:
        out = [PauliOp.identity(self.n)]
        for g in self.generators:
            out += [e * g for e in out]
        return out


def independent_generators(paulis: Iterable[PauliOp], n: int) -> list[PauliOp]:
    """Extract independent generators by GF(2) elimination with exact phases."""
    basis: dict[int, PauliOp] = {}  # leading-bit position -> generator
    for p in paulis:
        cur = p
        while not cur.is_identity_mask():
            vec = (cur.x << n) | cur.z
            lead = vec.bit_length() - 1
            if lead in basis:
                cur = cur * basis[lead]
            else:
                basis[lead] = cur
                break
    return [basis[k] for k in sorted(basis, reverse=True)]


def _power_of_i(c: CycNum) -> Optional[int]:
    """Exponent t with c = i^t, or None."""
    k = math.lcm(c.conductor, 4)
    c = c.lift(k)
    cur = CycNum.one(k)
    iu = imag_unit(k)
    for t in range(4):
        if c == cur:
            return t
        cur = cur * iu
    return None


def _solve_gf2(rows: list[int], rhs: list[int], nvars: int):
    """Solve A z = b over GF(2); returns (particular, nullspace_basis) or None.

    Rows are bitmasks over nvars variables (bit q = variable for qubit q,
    stored with qubit 0 at the most significant mask bit).
    """
    aug = [(r << 1) | b for r, b in zip(rows, rhs)]
    pivots: dict[int, int] = {}
    for i in range(len(aug)):
        cur = aug[i]
        while cur >> 1:
            lead = (cur >> 1).bit_length() - 1
            if lead in pivots:
                cur ^= pivots[lead]
            else:
                pivots[lead] = cur
                cur = 0
                break
        if cur == 1:
            return None  # inconsistent: 0 = 1
    # Back-substitute to reduced form.
    order = sorted(pivots, reverse=True)
    for idx, lead in enumerate(order):
        row = pivots[lead]
        for other in order[:idx]:
            if (pivots[other] >> 1) & (1 << lead):
                pivots[other] ^= row
    particular = 0
    for lead, row in pivots.items():
        if row & 1:
            particular |= 1 << lead
    free = [q for q in range(nvars) if q not in pivots]
    null_basis = []
    for f in free:
        vec = 1 << f
        for lead, row in pivots.items():
            if (row >> 1) & (1 << f):
                vec |= 1 << lead
        null_basis.append(vec)
    return particular, null_basis


def stabilizer_elements(psi: FieldVector) -> list[PauliOp]:
    """All Hermitian Paulis P with P psi = psi, via the amplitude-ratio method."""
    if psi.is_zero():
        raise ValueError("stabilizer group of the zero vector")
    dim = len(psi)
    n = dim.bit_length() - 1
    if 1 << n != dim:
        raise ValueError("vector length is not a power of two")
    support = psi.support()
    sset = set(support)
    j0 = support[0]
    found: list[PauliOp] = []
    for j1 in support:
        x = j0 ^ j1
        if any((j ^ x) not in sset for j in support):
            continue
        ratios = {}
        ok = True
        for j in support:
            t = _power_of_i(psi[j ^ x] / psi[j])
            if t is None:
                ok = False
                break
            ratios[j] = t
        if not ok:
            continue
        s0 = ratios[j0]
        rows, rhs = [], []
        for j in support:
            d = (ratios[j] - s0) % 4
            if d % 2 == 1:
                ok = False
                break
            rows.append(j ^ j0)
            rhs.append((d // 2) % 2)
        if not ok:
            continue
        sol = _solve_gf2(rows, rhs, n)
        if sol is None:
            continue
        z0, null_basis = sol
        zs = [z0]
        for nb in null_basis:
            zs += [z ^ nb for z in zs]
        for z in zs:
            p = (s0 - 2 * _pc(z & j0)) % 4
            cand = PauliOp(n, x, z, p)
            if cand.is_hermitian() and cand.apply(psi) == psi:
                found.append(cand)
    return found


def stabilizer_group(psi: FieldVector) -> StabGroup:
    """Independent generators of {P in +-{I,X,Y,Z}^n : P psi = psi}."""
    dim = len(psi)
    n = dim.bit_length() - 1
    elems = [p for p in stabilizer_elements(psi) if not p.is_identity_mask()]
    return StabGroup(n, tuple(independent_generators(elems, n)))


def brute_force_stabilizer_group(psi: FieldVector) -> StabGroup:
    """Test oracle: exhaust all 2*4^n Hermitian Paulis.  Keep n <= 4."""
    dim = len(psi)
    n = dim.bit_length() - 1
    if n > 4:
        raise ValueError("brute-force oracle capped at 4 qubits")
    elems = []
    for x in range(1 << n):
        for z in range(1 << n):
            base = PauliOp(n, x, z, _pc(x & z))
            for p in (base, -base):
                if not p.is_identity_mask() and p.apply(psi) == psi:
                    elems.append(p)
    return StabGroup(n, tuple(independent_generators(elems, n)))


def is_stabilizer_state(psi: FieldVector) -> bool:
    """True iff psi is stabilized by n independent commuting Paulis."""
    dim = len(psi)
    n = dim.bit_length() - 1
    if psi.is_zero():
        return False
    return len(stabilizer_group(psi)) == n

"""Clifford tableaus, circuits, matrix conversion and group-order BFS.

A tableau records the images of the generators X_q, Z_q under conjugation,
as Hermitian Paulis.  Circuits are sequences over the gate set
{CNOT, S, Htilde, X, Z, Transvection(P), GlobalPhase} and evaluate to exact
matrices.  Gate list order is temporal: the first gate acts first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cyclo import (
    CycNum,
    imag_unit,
    is_root_of_unity,
    zeta,
)
from .linalg import FieldMatrix, FieldVector
from .pauli import PauliOp, _pc, _solve_gf2

# Resource guard defaults for the tableau BFS.
DEFAULT_BFS_CAP = 20_000_000


class NotCliffordError(ValueError):
    """The matrix does not conjugate every Pauli generator to a Pauli."""


class NotUnitaryError(ValueError):
    pass


class ResourceCapExceeded(RuntimeError):
    """An enumeration was declined because it exceeds the configured cap."""


# ---------------------------------------------------------------------------
# Gates and circuits


@dataclass(frozen=True)
class Gate:
    name: str  # CNOT | S | H | X | Z | TRANSVECTION | PHASE
    qubits: tuple[int, ...] = ()
    pauli: Optional[PauliOp] = None
    # PHASE gate: the scalar zeta_conductor^exponent.
    conductor: int = 0
    exponent: int = 0

    def __repr__(self):
        if self.name == "PHASE":
            return f"PHASE(z{self.conductor}^{self.exponent})"
        if self.name == "TRANSVECTION":
            return f"TRANSVECTION({self.pauli!r})"
        return f"{self.name}{self.qubits}"


def CNOT(c: int, t: int) -> Gate:
    return Gate("CNOT", (c, t))


def S(q: int) -> Gate:
    return Gate("S", (q,))


def Htilde(q: int) -> Gate:
    return Gate("H", (q,))


def Xg(q: int) -> Gate:
    return Gate("X", (q,))


def Zg(q: int) -> Gate:
    return Gate("Z", (q,))


def Transvection(p: PauliOp) -> Gate:
    return Gate("TRANSVECTION", (), p)


def GlobalPhase(conductor: int, exponent: int) -> Gate:
    return Gate("PHASE", (), None, conductor, exponent % conductor)


@dataclass(frozen=True)
class CliffordCircuit:
    n: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n:
                    raise ValueError(f"qubit {q} out of range in {g!r}")
            if g.name == "TRANSVECTION" and g.pauli.n != self.n:
                raise ValueError("transvection Pauli qubit count mismatch")

    def __len__(self):
        return len(self.gates)

    def inverse(self) -> CliffordCircuit:
        out: list[Gate] = []
        for g in reversed(self.gates):
            if g.name == "S":
                out += [g, g, g]
            elif g.name == "H":
                # Htilde^2 = -i I, so Htilde^-1 = i Htilde.
                out.append(g)
                out.append(GlobalPhase(4, 1))
            elif g.name == "TRANSVECTION":
                # T(P) T(-P) = i I; cancel the leftover scalar explicitly.
                out.append(Transvection(-g.pauli))
                out.append(GlobalPhase(4, 3))
            elif g.name == "PHASE":
                out.append(GlobalPhase(g.conductor, -g.exponent))
            else:
                out.append(g)
        return CliffordCircuit(self.n, tuple(out))

    def conj(self) -> CliffordCircuit:
        """The circuit whose matrix is the entry-wise complex conjugate."""
        out: list[Gate] = []
        for g in self.gates:
            if g.name == "S":
                out += [g, g, g]  # S* = S^3
            elif g.name == "H":
                # Htilde* = i Htilde
                out.append(g)
                out.append(GlobalPhase(4, 1))
            elif g.name == "TRANSVECTION":
                # (aI + bP)* = conj(a) I + conj(b) P*; P* has negated i-phase.
                pc = PauliOp(g.pauli.n, g.pauli.x, g.pauli.z, -g.pauli.phase)
                out.append(Transvection(-pc))
                out.append(GlobalPhase(4, 3))
            elif g.name == "PHASE":
                out.append(GlobalPhase(g.conductor, -g.exponent))
            else:
                out.append(g)
        return CliffordCircuit(self.n, tuple(out))

    def tableau(self) -> CliffordTableau:
        t = CliffordTableau.identity(self.n)
        for g in self.gates:
            if g.name == "PHASE":
                continue
            t = gate_tableau(g, self.n).compose(t)
        return t

    def matrix(self, conductor: int = 4) -> FieldMatrix:
        return evaluate_circuit(self, conductor)

    def to_json(self) -> list[dict]:
        out = []
        for g in self.gates:
            d: dict = {"gate": g.name, "qubits": list(g.qubits)}
            if g.name == "TRANSVECTION":
                d["pauli"] = {"n": g.pauli.n, "x": g.pauli.x, "z": g.pauli.z,
                              "phase": g.pauli.phase}
            if g.name == "PHASE":
                d["conductor"] = g.conductor
                d["exponent"] = g.exponent
            out.append(d)
        return out

    @staticmethod
    def from_json(n: int, items: Sequence[dict]) -> CliffordCircuit:
        gates = []
        for d in items:
            name = d["gate"]
            if name == "TRANSVECTION":
                p = d["pauli"]
                gates.append(Transvection(PauliOp(p["n"], p["x"], p["z"], p["phase"])))
            elif name == "PHASE":
                gates.append(GlobalPhase(d["conductor"], d["exponent"]))
            else:
                gates.append(Gate(name, tuple(d["qubits"])))
        return CliffordCircuit(n, tuple(gates))


# ---------------------------------------------------------------------------
# Tableaus


@dataclass(frozen=True)
class CliffordTableau:
    """Images of X_0..X_{n-1}, Z_0..Z_{n-1} under conjugation."""

    n: int
    images: tuple[PauliOp, ...]

    def __post_init__(self):
        if len(self.images) != 2 * self.n:
            raise ValueError("a tableau needs 2n images")
        for p in self.images:
            if not p.is_hermitian():
                raise ValueError(f"non-Hermitian image {p!r}")

    @staticmethod
    def identity(n: int) -> CliffordTableau:
        imgs = [PauliOp(n, 1 << (n - 1 - q), 0, 0) for q in range(n)]
        imgs += [PauliOp(n, 0, 1 << (n - 1 - q), 0) for q in range(n)]
        return CliffordTableau(n, tuple(imgs))

    def image_x(self, q: int) -> PauliOp:
        return self.images[q]

    def image_z(self, q: int) -> PauliOp:
        return self.images[self.n + q]

    def conjugate(self, p: PauliOp) -> PauliOp:
        """U P U^dagger for any phased Pauli P."""
        n = self.n
        out = PauliOp(n, 0, 0, p.phase)
        for q in range(n):
            if p.x & (1 << (n - 1 - q)):
                out = out * self.images[q]
        for q in range(n):
            if p.z & (1 << (n - 1 - q)):
                out = out * self.images[n + q]
        return out

    def compose(self, other: CliffordTableau) -> CliffordTableau:
        """Tableau of U_self U_other."""
        return CliffordTableau(
            self.n, tuple(self.conjugate(p) for p in other.images)
        )

    def inverse(self) -> CliffordTableau:
        circ = tableau_to_circuit(self)
        return circ.inverse().tableau()

    def is_valid(self) -> bool:
        n = self.n
        for a in range(2 * n):
            for b in range(a + 1, 2 * n):
                want = (a % n == b % n) and (a // n != b // n)
                if self.images[a].commutes(self.images[b]) == want:
                    return False
        return True

    def key(self) -> tuple:
        return tuple((p.x, p.z, p.phase) for p in self.images)


def gate_tableau(g: Gate, n: int) -> CliffordTableau:
    """Tableau of a single gate on n qubits."""
    imgs = list(CliffordTableau.identity(n).images)

    def bit(q):
        return 1 << (n - 1 - q)

    if g.name == "CNOT":
        c, t = g.qubits
        imgs[c] = PauliOp(n, bit(c) | bit(t), 0, 0)          # X_c -> X_c X_t
        imgs[n + t] = PauliOp(n, 0, bit(c) | bit(t), 0)      # Z_t -> Z_c Z_t
    elif g.name == "S":
        (q,) = g.qubits
        imgs[q] = PauliOp(n, bit(q), bit(q), 1)              # X -> Y
    elif g.name == "H":
        (q,) = g.qubits
        imgs[q] = PauliOp(n, 0, bit(q), 0)                   # X -> Z
        imgs[n + q] = PauliOp(n, bit(q), 0, 0)               # Z -> X
    elif g.name == "X":
        (q,) = g.qubits
        imgs[n + q] = PauliOp(n, 0, bit(q), 2)               # Z -> -Z
    elif g.name == "Z":
        (q,) = g.qubits
        imgs[q] = PauliOp(n, bit(q), 0, 2)                   # X -> -X
    elif g.name == "TRANSVECTION":
        p = g.pauli
        for idx in range(2 * n):
            if not imgs[idx].commutes(p):
                imgs[idx] = (imgs[idx] * p).times_i()        # Q -> i Q P
    elif g.name == "PHASE":
        pass
    else:
        raise ValueError(f"unknown gate {g.name!r}")
    return CliffordTableau(n, tuple(imgs))


# ---------------------------------------------------------------------------
# Exact circuit evaluation


def _gate_rows(g: Gate, n: int, rows: list[list[CycNum]], conductor: int
               ) -> tuple[list[list[CycNum]], int]:
    """Left-multiply the row list by the gate matrix; returns (rows, conductor)."""
    dim = 1 << n

    def bit(q):
        return 1 << (n - 1 - q)

    if g.name == "PHASE":
        k = math.lcm(conductor, g.conductor)
        if k != conductor:
            rows = [[e.lift(k) for e in row] for row in rows]
            conductor = k
        s = zeta(conductor, (g.exponent * (conductor // g.conductor)) % conductor)
        return [[s * e for e in row] for row in rows], conductor

    iu = imag_unit(conductor)
    one = CycNum.one(conductor)
    if g.name == "CNOT":
        c, t = g.qubits
        out = [None] * dim
        for j in range(dim):
            j2 = j ^ bit(t) if j & bit(c) else j
            out[j2] = rows[j]
        return out, conductor  # type: ignore[return-value]
    if g.name == "X":
        (q,) = g.qubits
        out = [None] * dim
        for j in range(dim):
            out[j ^ bit(q)] = rows[j]
        return out, conductor  # type: ignore[return-value]
    if g.name == "Z":
        (q,) = g.qubits
        return [[-e for e in row] if j & bit(q) else row
                for j, row in enumerate(rows)], conductor
    if g.name == "S":
        (q,) = g.qubits
        return [[iu * e for e in row] if j & bit(q) else row
                for j, row in enumerate(rows)], conductor
    if g.name == "H":
        (q,) = g.qubits
        inv = (one + iu).inverse()  # 1/(1+i)
        out = [row[:] for row in rows]
        for j in range(dim):
            if j & bit(q):
                continue
            j1 = j | bit(q)
            r0, r1 = rows[j], rows[j1]
            out[j] = [inv * (a + b) for a, b in zip(r0, r1)]
            out[j1] = [inv * (a - b) for a, b in zip(r0, r1)]
        return out, conductor
    if g.name == "TRANSVECTION":
        p = g.pauli
        a = (one + iu) * Fraction(1, 2)
        b = (one - iu) * Fraction(1, 2)
        scal = [one, iu, iu * iu, iu * iu * iu]
        out = []
        for j in range(dim):
            # (P M)[j] = i^p (-1)^(z . (j^x)) M[j^x]
            ph = (p.phase + 2 * _pc(p.z & (j ^ p.x))) % 4
            prow = rows[j ^ p.x]
            out.append([a * e + b * (scal[ph] * f)
                        for e, f in zip(rows[j], prow)])
        return out, conductor
    raise ValueError(f"unknown gate {g.name!r}")


def evaluate_circuit(c: CliffordCircuit, conductor: int = 4) -> FieldMatrix:
    """Exact matrix of the circuit (gate list order is temporal)."""
    dim = 1 << c.n
    one, zero = CycNum.one(conductor), CycNum.zero(conductor)
    rows = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
    k = conductor
    for g in c.gates:
        rows, k = _gate_rows(g, c.n, rows, k)
    return FieldMatrix(dim, dim, [e for row in rows for e in row])


def apply_circuit(c: CliffordCircuit, v: FieldVector) -> FieldVector:
    """Exact circuit action on a vector."""
    k = math.lcm(v.conductor, 4)
    rows = [[e.lift(k)] for e in v.entries]
    for g in c.gates:
        rows, k = _gate_rows(g, c.n, rows, k)
    return FieldVector([row[0] for row in rows])


# ---------------------------------------------------------------------------
# Tableau -> circuit synthesis (symplectic Gaussian elimination)


def tableau_to_circuit(t: CliffordTableau) -> CliffordCircuit:
    """A circuit over {CNOT, S, Htilde, X, Z} whose tableau equals t.

    Deterministic: qubits are processed in ascending order and an
    Htilde-free pivot is preferred whenever the row already has an X
    component.
    """
    n = t.n
    work = list(t.images)
    applied: list[Gate] = []

    def bit(q):
        return 1 << (n - 1 - q)

    def conj_all(g: Gate):
        gt = gate_tableau(g, n)
        for i in range(2 * n):
            work[i] = gt.conjugate(work[i])
        applied.append(g)

    def reduce_row_to_x(idx: int, q: int, allow_pivot: bool):
        """Bring work[idx] to +-X_q using gates on qubits >= q."""
        row = work[idx]
        if allow_pivot:
            if not row.x & bit(q):
                piv = next((j for j in range(q, n) if row.x & bit(j)), None)
                if piv is None:
                    piv = next(j for j in range(q, n) if row.z & bit(j))
                    conj_all(Htilde(piv))
                    row = work[idx]
                if piv != q:
                    conj_all(CNOT(q, piv))
                    conj_all(CNOT(piv, q))
                    conj_all(CNOT(q, piv))
                    row = work[idx]
            if not work[idx].x & bit(q) and work[idx].z & bit(q):
                conj_all(Htilde(q))
        for j in range(q + 1, n):
            if work[idx].x & bit(j):
                conj_all(CNOT(q, j))
        while work[idx].z & bit(q):
            conj_all(S(q))
        for j in range(q + 1, n):
            if work[idx].z & bit(j):
                conj_all(Htilde(j))
                conj_all(CNOT(q, j))
                conj_all(Htilde(j))
        assert work[idx].x == bit(q) and work[idx].z == 0

    for q in range(n):
        reduce_row_to_x(q, q, allow_pivot=True)
        conj_all(Htilde(q))
        # Now work[q] = +-Z_q and work[n+q] anticommutes with it (x bit set).
        assert work[n + q].x & bit(q)
        reduce_row_to_x(n + q, q, allow_pivot=False)
        conj_all(Htilde(q))
        if work[q].phase % 4 == 2:
            conj_all(Zg(q))
        if work[n + q].phase % 4 == 2:
            conj_all(Xg(q))
        assert work[q] == PauliOp(n, bit(q), 0, 0)
        assert work[n + q] == PauliOp(n, 0, bit(q), 0)

    # applied conjugations reduce t to the identity, so t equals the
    # composition of their inverses in reverse order.
    gates: list[Gate] = []
    for g in reversed(applied):
        if g.name == "S":
            gates += [g, g, g]
        else:
            gates.append(g)
    return CliffordCircuit(n, tuple(gates))


# ---------------------------------------------------------------------------
# Matrix -> tableau


def clifford_from_matrix(u: FieldMatrix) -> tuple[CliffordTableau, CycNum]:
    """Tableau of a Clifford matrix plus its residual global phase.

    The residual phase s satisfies u = s * matrix(tableau_to_circuit(T)).
    Raises NotUnitaryError / NotCliffordError.
    """
    dim = u.rows
    n = dim.bit_length() - 1
    if u.cols != dim or 1 << n != dim:
        raise NotUnitaryError("matrix is not square of dimension 2^n")
    if not u.is_unitary():
        raise NotUnitaryError("matrix is not unitary")
    ud = u.dagger()
    imgs = []
    for kind in ("X", "Z"):
        for q in range(n):
            gen = PauliOp(n, 1 << (n - 1 - q), 0, 0) if kind == "X" else \
                PauliOp(n, 0, 1 << (n - 1 - q), 0)
            m = u @ gen.to_matrix(u.conductor) @ ud
            imgs.append(_match_pauli(m, n))
    t = CliffordTableau(n, tuple(imgs))
    canon = evaluate_circuit(tableau_to_circuit(t), u.conductor)
    s = None
    for idx, e in enumerate(canon.entries):
        if not e.is_zero():
            s = u.entries[idx] / e
            break
    assert s is not None
    if canon.scale(s) != u:
        raise NotCliffordError("matrix does not match its tableau circuit")
    return t, s


def _match_pauli(m: FieldMatrix, n: int) -> PauliOp:
    """Pattern-match a matrix to a phased Pauli i^p X^x Z^z or raise."""
    from .pauli import _power_of_i

    dim = 1 << n
    x = None
    for r in range(dim):
        if not m[r, 0].is_zero():
            x = r
            break
    if x is None:
        raise NotCliffordError("conjugated generator has a zero column")
    p = _power_of_i(m[x, 0])
    if p is None:
        raise NotCliffordError("conjugated generator is not a phased Pauli")
    z = 0
    for q in range(n):
        col = 1 << (n - 1 - q)
        val = m[x ^ col, col]
        ratio = val / m[x, 0]
        if ratio == 1:
            pass
        elif ratio == -1:
            z |= col
        else:
            raise NotCliffordError("conjugated generator is not a phased Pauli")
    cand = PauliOp(n, x, z, p)
    if cand.to_matrix(m.conductor) != m:
        raise NotCliffordError("conjugated generator is not a phased Pauli")
    return cand


def circuit_from_clifford_matrix(u: FieldMatrix) -> CliffordCircuit:
    """Exact circuit (with a GlobalPhase gate) for a Clifford matrix."""
    t, s = clifford_from_matrix(u)
    circ = tableau_to_circuit(t)
    gates = list(circ.gates)
    res = is_root_of_unity(s)
    if res is None:
        raise NotCliffordError("residual phase is not a root of unity")
    sign, expo = res
    k = s.conductor
    if sign == -1:
        k = math.lcm(k, 2)
        expo = (expo * (k // s.conductor) + k // 2) % k
    if expo % k != 0:
        gates.append(GlobalPhase(k, expo))
    return CliffordCircuit(t.n, tuple(gates))


# ---------------------------------------------------------------------------
# Symplectic completion


def _sp_row(p: PauliOp, n: int) -> int:
    return (p.z << n) | p.x


def symplectic_completion(targets: Sequence[PauliOp], n: int
                          ) -> tuple[list[PauliOp], list[PauliOp]]:
    """Extend commuting independent Paulis to a full conjugate system.

    Returns (ts, us) with len n each: ts extends targets, sp(ts_l, us_l) = 1
    and all other pairs commute.  Extension elements carry canonical signs.
    """
    ts = list(targets)
    us: list[PauliOp] = []

    def solve(rhs_one_at: Optional[int]):
        rows = [_sp_row(t, n) for t in ts] + [_sp_row(u, n) for u in us]
        rhs = [0] * len(rows)
        if rhs_one_at is not None:
            rhs[rhs_one_at] = 1
        sol = _solve_gf2(rows, rhs, 2 * n)
        if sol is None:
            return None
        return sol

    def from_vec(v: int) -> PauliOp:
        x = (v >> n) & ((1 << n) - 1)
        z = v & ((1 << n) - 1)
        return PauliOp(n, x, z, _pc(x & z))

    def in_span(v: int, vecs: list[int]) -> bool:
        basis: dict[int, int] = {}  # leading bit -> reduced vector
        for w in vecs:
            while w:
                lead = w.bit_length() - 1
                if lead in basis:
                    w ^= basis[lead]
                else:
                    basis[lead] = w
                    break
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                return False
            v ^= basis[lead]
        return True

    while True:
        # Pair every unpaired target.
        while len(us) < len(ts):
            sol = solve(len(us))
            assert sol is not None, "symplectic completion failed"
            us.append(from_vec(sol[0]))
        if len(ts) == n:
            break
        # Add a fresh commuting element outside the current span.
        sol = solve(None)
        assert sol is not None
        _, null_basis = sol
        # Solution vectors are laid out as (x << n) | z, matching from_vec.
        span = [(p.x << n) | p.z for p in ts + us]
        pick = next(v for v in null_basis if v and not in_span(v, span))
        ts.append(from_vec(pick))
    return ts, us


def tableau_mapping_z_to(targets: Sequence[PauliOp], n: int) -> CliffordTableau:
    """A tableau T with T Z_l T^dagger = targets[l] (signs included)."""
    ts, us = symplectic_completion(targets, n)
    return CliffordTableau(n, tuple(us + ts))


# ---------------------------------------------------------------------------
# Group-order BFS over tableaus


def _pack_row(p: PauliOp, n: int) -> int:
    sign = 0 if p.phase % 4 == _pc(p.x & p.z) % 4 else 1
    return (sign << (2 * n)) | (p.x << n) | p.z


def _unpack_row(code: int, n: int) -> PauliOp:
    mask = (1 << n) - 1
    z = code & mask
    x = (code >> n) & mask
    sign = (code >> (2 * n)) & 1
    return PauliOp(n, x, z, _pc(x & z) + 2 * sign)


def _row_table(t: CliffordTableau) -> list[int]:
    n = t.n
    size = 1 << (2 * n + 1)
    return [_pack_row(t.conjugate(_unpack_row(code, n)), n)
            for code in range(size)]


def tableau_closure_count(n: int, generators: Sequence[CliffordTableau],
                          cap: int = DEFAULT_BFS_CAP,
                          force_python: bool = False) -> int:
    """Number of distinct tableaus generated by the given tableaus."""
    from . import kernels

    tables = [_row_table(g) for g in generators]
    start = [_pack_row(p, n) for p in CliffordTableau.identity(n).images]
    row_bits = 2 * n + 1
    if 2 * n * row_bits > 64:
        raise ResourceCapExceeded("packed tableau state exceeds 64 bits")
    fn = kernels.closure_count_py if force_python else kernels.closure_count
    count = fn(tables, start, row_bits, cap)
    if count == -1:
        raise ResourceCapExceeded(
            f"tableau closure exceeds the configured cap of {cap}"
        )
    return count


def standard_clifford_generators(n: int) -> list[CliffordTableau]:
    """Tableaus of CNOT (all ordered pairs), S and Htilde (each qubit)."""
    gens = []
    for q in range(n):
        gens.append(gate_tableau(S(q), n))
        gens.append(gate_tableau(Htilde(q), n))
    for a in range(n):
        for b in range(n):
            if a != b:
                gens.append(gate_tableau(CNOT(a, b), n))
    return gens


def clifford_order(n: int, mod_phases: bool = True,
                   cap: int = DEFAULT_BFS_CAP) -> int:
    """Order of the n-qubit Clifford group up to phases, by tableau BFS.

    With mod_phases=False the full matrix group generated by CNOT, S and
    Htilde is enumerated instead (exact matrices; n = 1 only).
    """
    if mod_phases:
        return tableau_closure_count(n, standard_clifford_generators(n), cap)
    if n != 1:
        raise ResourceCapExceeded("matrix-level enumeration supported for n=1 only")
    from .groups import matrix_group_order

    gens = [evaluate_circuit(CliffordCircuit(1, (S(0),))),
            evaluate_circuit(CliffordCircuit(1, (Htilde(0),)))]
    return matrix_group_order(gens, cap=cap)


def random_tableau(n: int, rng, length: int = 40) -> CliffordTableau:
    """Tableau of a random word over the standard generator gates."""
    gates = []
    for _ in range(length):
        kind = rng.randrange(3 if n > 1 else 2)
        if kind == 0:
            gates.append(S(rng.randrange(n)))
        elif kind == 1:
            gates.append(Htilde(rng.randrange(n)))
        else:
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            gates.append(CNOT(a, b if b < a else b + 1))
    return CliffordCircuit(n, tuple(gates)).tableau()


def random_clifford_circuit(n: int, rng, length: int = 40) -> CliffordCircuit:
    """A random word over {CNOT, S, Htilde, X, Z}."""
    gates: list[Gate] = []
    for _ in range(length):
        kind = rng.randrange(5 if n > 1 else 4)
        if kind == 0:
            gates.append(S(rng.randrange(n)))
        elif kind == 1:
            gates.append(Htilde(rng.randrange(n)))
        elif kind == 2:
            gates.append(Xg(rng.randrange(n)))
        elif kind == 3:
            gates.append(Zg(rng.randrange(n)))
        else:
            a = rng.randrange(n)
            b = rng.randrange(n - 1)
            gates.append(CNOT(a, b if b < a else b + 1))
    return CliffordCircuit(n, tuple(gates))

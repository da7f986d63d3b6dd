"""Basis-change certificates and group machinery past the qubit Clifford case.

Covers the real and rational subgroups of the Clifford group and the qutrit
and d=5 qudit Clifford groups: tabulated basis changes (fixtures), unitary
and state membership certificates, orbit lattices as flattened Z-lattices,
and group orders modulo scalars.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from .clifford import (
    CNOT,
    CliffordCircuit,
    CliffordTableau,
    Htilde,
    S,
    Xg,
    Zg,
    evaluate_circuit,
    gate_tableau,
    tableau_closure_count,
)
from .cyclo import CycNum, descend_to, euler_phi, zeta
from .groups import projective_group_order
from .hnf import ZLattice
from .linalg import FieldMatrix, FieldVector
from .serialize import checksum, matrix_from_json


class UnknownNameError(KeyError):
    pass


class OrbitCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class BasisChange:
    name: str
    matrix: FieldMatrix
    real_subfield: bool

    @property
    def conductor(self) -> int:
        return self.matrix.conductor


@dataclass(frozen=True)
class GroupSpec:
    name: str
    conductor: int
    generators: tuple[FieldMatrix, ...]
    center_order: int  # declared order of the scalar subgroup
    tableau_generators: Optional[tuple[CliffordTableau, ...]] = None
    n_qubits: Optional[int] = None


_FIXTURE_NAMES = (
    "clifford-1", "real-clifford-1", "rational-1", "rational-2",
    "rational-3", "rational-3-alt", "rational-4", "qutrit-1", "qutrit-2",
    "qudit-5",
)


def _load_fixture(name: str) -> BasisChange:
    path = resources.files("bwstab.fixtures").joinpath(name + ".json")
    doc = json.loads(path.read_text())
    want = checksum({k: doc[k] for k in ("conductor", "rows", "cols", "entries")})
    if doc.get("sha256") != want:
        raise ValueError(f"fixture {name} failed its checksum")
    return BasisChange(name, matrix_from_json(doc), bool(doc["real_subfield"]))


def basis_change(name: str) -> BasisChange:
    """Tabulated basis change; clifford-n / real-clifford-n are tensor powers."""
    if name in _FIXTURE_NAMES:
        return _load_fixture(name)
    for stem in ("clifford", "real-clifford"):
        if name.startswith(stem + "-"):
            try:
                n = int(name[len(stem) + 1:])
            except ValueError:
                break
            if n >= 1:
                base = _load_fixture(stem + "-1")
                m = base.matrix
                for _ in range(n - 1):
                    m = m.tensor(base.matrix)
                return BasisChange(name, m, base.real_subfield)
    raise UnknownNameError(name)


# ---------------------------------------------------------------------------
# Generator sets


def _gate_matrix(n: int, *gates) -> FieldMatrix:
    return evaluate_circuit(CliffordCircuit(n, tuple(gates)))


def _cz_tableau(n: int, a: int, b: int) -> CliffordTableau:
    t = gate_tableau(Htilde(b), n)
    t = gate_tableau(CNOT(a, b), n).compose(t)
    return gate_tableau(Htilde(b), n).compose(t)


def _real_h_matrix(conductor: int = 8) -> FieldMatrix:
    s = (zeta(8, 1) - zeta(8, 3)) * Fraction(1, 2)  # sqrt(2)/2
    s = s.lift(conductor) if conductor != 8 else s
    return FieldMatrix(2, 2, [s, s, s, -s])


def _cz_matrix(n: int, a: int, b: int) -> FieldMatrix:
    return _gate_matrix(n, Htilde(b), CNOT(a, b), Htilde(b), ).scale(
        zeta(4, 1))  # undo the two Htilde phases: (1/(1+i))^2 H CX H = -i CZ


def qudit_clifford_spec(d: int) -> GroupSpec:
    """Generalized X, Z, Fourier and phase gates for a single odd-prime qudit.

    The Fourier gate is normalised by the Gauss sum g = sum_x omega^{x^2},
    keeping all entries inside Q(zeta_d).
    """
    if d not in (3, 5):
        raise ValueError("supported qudit dimensions are 3 and 5")
    w = [zeta(d, t) for t in range(d)]
    zero, one = CycNum.zero(d), CycNum.one(d)

    xmat = FieldMatrix(d, d, [one if r == (c + 1) % d else zero
                              for r in range(d) for c in range(d)])
    zmat = FieldMatrix(d, d, [w[r] if r == c else zero
                              for r in range(d) for c in range(d)])
    gauss = CycNum.zero(d)
    for x in range(d):
        gauss = gauss + w[(x * x) % d]
    ginv = gauss.inverse()
    hmat = FieldMatrix(d, d, [ginv * w[(r * c) % d]
                              for r in range(d) for c in range(d)])
    inv2 = pow(2, -1, d)
    smat = FieldMatrix(d, d, [w[(r * (r - 1) // 2 * inv2) % d] if r == c else zero
                              for r in range(d) for c in range(d)])
    return GroupSpec(f"qudit-{d}", d, (xmat, zmat, hmat, smat),
                     center_order=2 * d)


def group_spec(name: str) -> GroupSpec:
    """Builtin generator sets keyed by the same names as the basis changes."""
    if name == "qutrit-1":
        return qudit_clifford_spec(3)
    if name == "qudit-5":
        return qudit_clifford_spec(5)
    for stem, kind in (("clifford", "clifford"), ("real-clifford", "real"),
                       ("rational", "rational")):
        if name.startswith(stem + "-") and not name.endswith("-alt"):
            try:
                n = int(name[len(stem) + 1:])
            except ValueError:
                continue
            if kind == "clifford":
                return _clifford_spec(name, n)
            if kind == "real":
                return _real_spec(name, n)
            return _rational_spec(name, n)
    raise UnknownNameError(name)


def _clifford_spec(name: str, n: int) -> GroupSpec:
    mats, tabs = [], []
    for q in range(n):
        for g in (Xg(q), Zg(q), Htilde(q), S(q)):
            mats.append(_gate_matrix(n, g))
            tabs.append(gate_tableau(g, n))
    for a in range(n):
        for b in range(n):
            if a != b:
                mats.append(_gate_matrix(n, CNOT(a, b)))
                tabs.append(gate_tableau(CNOT(a, b), n))
    for a in range(n):
        for b in range(a + 1, n):
            mats.append(_cz_matrix(n, a, b))
            tabs.append(_cz_tableau(n, a, b))
    return GroupSpec(name, 4, tuple(mats), 4, tuple(tabs), n)


def _real_spec(name: str, n: int) -> GroupSpec:
    mats, tabs = [], []
    eye = FieldMatrix.identity(2, 8)
    for q in range(n):
        h1 = _real_h_matrix()
        full = None
        for t in range(n):
            blk = h1 if t == q else eye
            full = blk if full is None else full.tensor(blk)
        for g, mat in ((Xg(q), _gate_matrix(n, Xg(q))),
                       (Zg(q), _gate_matrix(n, Zg(q)))):
            mats.append(mat)
            tabs.append(gate_tableau(g, n))
        mats.append(full)
        tabs.append(gate_tableau(Htilde(q), n))
    for a in range(n):
        for b in range(n):
            if a != b:
                mats.append(_gate_matrix(n, CNOT(a, b)))
                tabs.append(gate_tableau(CNOT(a, b), n))
    for a in range(n):
        for b in range(a + 1, n):
            mats.append(_cz_matrix(n, a, b))
            tabs.append(_cz_tableau(n, a, b))
    return GroupSpec(name, 8, tuple(mats), 2, tuple(tabs), n)


def _rational_spec(name: str, n: int) -> GroupSpec:
    mats, tabs = [], []
    for q in range(n):
        for g in (Xg(q), Zg(q)):
            mats.append(_gate_matrix(n, g))
            tabs.append(gate_tableau(g, n))
    for a in range(n):
        for b in range(n):
            if a != b:
                mats.append(_gate_matrix(n, CNOT(a, b)))
                tabs.append(gate_tableau(CNOT(a, b), n))
    for a in range(n):
        for b in range(a + 1, n):
            mats.append(_cz_matrix(n, a, b))
            tabs.append(_cz_tableau(n, a, b))
            # H x H is rational even though H alone is not
            mats.append(_gate_matrix(n, Htilde(a), Htilde(b)).scale(zeta(4, 1)))
            tabs.append(gate_tableau(Htilde(b), n).compose(
                gate_tableau(Htilde(a), n)))
    return GroupSpec(name, 1, tuple(mats), 2, tuple(tabs), n)


# ---------------------------------------------------------------------------
# Membership certificates


def _into_field(e: CycNum, bc: BasisChange) -> Optional[CycNum]:
    d = descend_to(e, bc.conductor)
    if d is None:
        return None
    if bc.real_subfield and not d.is_real():
        return None
    return d


def membership_unitary(u: FieldMatrix, bc: BasisChange
                       ) -> tuple[bool, Optional[str]]:
    """Certificate that u lies in the group of bc, up to its center."""
    if u.rows != bc.matrix.rows or u.cols != bc.matrix.cols:
        return False, "shape mismatch"
    lowered = []
    for e in u.entries:
        d = _into_field(e, bc)
        if d is None:
            return False, "not in field"
        lowered.append(d)
    u = FieldMatrix(u.rows, u.cols, lowered)
    if not u.is_unitary():
        return False, "not unitary"
    conj = bc.matrix.inverse() @ u @ bc.matrix
    for e in conj.entries:
        ok = e.is_real_integral() if bc.real_subfield else e.is_integral()
        if not ok:
            return False, "conjugated matrix not integral"
    return True, None


def membership_state(psi: FieldVector, bc: BasisChange
                     ) -> tuple[bool, Optional[str]]:
    """Certificate that psi is preparable from |0> by the group of bc."""
    if len(psi) != bc.matrix.rows:
        return False, "shape mismatch"
    lowered = []
    for e in psi.entries:
        d = _into_field(e, bc)
        if d is None:
            return False, "not in field"
        lowered.append(d)
    coords = bc.matrix.inverse().apply(FieldVector(lowered))
    for e in coords.entries:
        ok = e.is_real_integral() if bc.real_subfield else e.is_integral()
        if not ok:
            return False, "coordinates not integral"
    return True, None


# ---------------------------------------------------------------------------
# Orbit lattices (flattened to Z)


def flatten_vector(v: FieldVector, conductor: int) -> list[Fraction]:
    out: list[Fraction] = []
    for e in v.entries:
        d = descend_to(e, conductor)
        if d is None:
            raise ValueError("entry outside the declared field")
        out.extend(d.coeffs)
    return out


def unflatten_vector(row: Sequence[Fraction], conductor: int, dim: int
                     ) -> FieldVector:
    phi = euler_phi(conductor)
    return FieldVector([CycNum(conductor, row[i * phi:(i + 1) * phi])
                        for i in range(dim)])


def module_z_lattice(vectors: Sequence[FieldVector], conductor: int) -> ZLattice:
    """Z-lattice flattening of sum_v v * O_E for E = Q(zeta_conductor)."""
    rows = []
    for v in vectors:
        vk = FieldVector([descend_to(e, conductor) for e in v.entries])
        for t in range(euler_phi(conductor)):
            rows.append(flatten_vector(vk.scale(zeta(conductor, t)), conductor))
    return ZLattice.from_rational_rows(rows)


def basis_change_z_lattice(bc: BasisChange) -> ZLattice:
    return module_z_lattice([bc.matrix.col(c) for c in range(bc.matrix.cols)],
                            bc.conductor)


def orbit_z_lattice(g: GroupSpec, seed: FieldVector,
                    cap: int = 10_000) -> ZLattice:
    """Smallest G-invariant O_E-module containing the seed, flattened to Z.

    Iterates span closure: apply every generator to every current Z-basis
    vector and enlarge until stable.  This equals the integer span of the
    orbit, without enumerating the orbit itself.
    """
    k = g.conductor
    dim = g.generators[0].rows
    gens = [m.lift(math.lcm(m.conductor, k)) for m in g.generators]
    lat = module_z_lattice([seed], k)
    added = 0
    while True:
        new_rows = []
        basis_vecs = [unflatten_vector(
            [Fraction(x, lat.denominator) for x in row], k, dim)
            for row in lat.basis]
        for v in basis_vecs:
            for m in gens:
                w = m.apply(v)
                fw = flatten_vector(w, k)
                if not lat.contains(fw):
                    new_rows.append(fw)
                    added += 1
                    if added > cap:
                        raise OrbitCapExceeded(
                            f"orbit closure exceeded the cap of {cap}")
        if not new_rows:
            return lat
        old = [[Fraction(x, lat.denominator) for x in row]
               for row in lat.basis]
        # keep zeta-closure when inserting new vectors
        closed = []
        for row in new_rows:
            w = unflatten_vector(row, k, dim)
            for t in range(euler_phi(k)):
                closed.append(flatten_vector(w.scale(zeta(k, t)), k))
        lat = ZLattice.from_rational_rows(old + closed)


# ---------------------------------------------------------------------------
# Group orders


def group_order_mod_center(g: GroupSpec, cap: int = 20_000_000) -> int:
    """Order of the generated group modulo its scalar subgroup."""
    if g.tableau_generators is not None:
        return tableau_closure_count(g.n_qubits, g.tableau_generators, cap)
    count, _ = projective_group_order(g.generators, cap=cap)
    return count


def group_order_and_center(g: GroupSpec, cap: int = 2_000_000
                           ) -> tuple[int, int]:
    """(order mod scalars, discovered scalar-subgroup order) by matrix BFS."""
    return projective_group_order(g.generators, cap=cap)


def group_order_full(g: GroupSpec, cap: int = 20_000_000) -> int:
    """Order of the generated matrix group, scalars included.

    Tableau-backed specs multiply the tableau count by the declared scalar
    subgroup order (the tableau representation cannot see scalars); matrix
    specs use the scalar subgroup discovered during the projective walk.
    """
    if g.tableau_generators is not None:
        return group_order_mod_center(g, cap) * g.center_order
    count, scalars = projective_group_order(g.generators, cap=cap)
    return count * scalars

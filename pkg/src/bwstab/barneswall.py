"""Barnes-Wall lattices over dyadic cyclotomic fields.

The n-qubit lattice over E = Q(zeta_{2^m}) is B^{tensor n} O_E^{2^n} with
B = [[1+i, 1], [0, 1]].  Membership reduces to integrality of coordinates,
computed by butterfly passes instead of materialised Kronecker powers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import (
    CycNum,
    descend_to,
    euler_phi,
    imag_unit,
    one_plus_i,
    trace_E_over_Q,
    zeta,
)
from .linalg import FieldMatrix, FieldVector, kron_apply, kron_apply_matrix


class LatticeCapExceeded(RuntimeError):
    pass


def b_matrix(conductor: int = 4) -> FieldMatrix:
    iu = imag_unit(conductor)
    one = CycNum.one(conductor)
    return FieldMatrix(2, 2, [one + iu, one, CycNum.zero(conductor), one])


def b_inverse_matrix(conductor: int = 4) -> FieldMatrix:
    iu = imag_unit(conductor)
    one = CycNum.one(conductor)
    h = (one - iu) * Fraction(1, 2)  # (1-i)/2 = 1/(1+i)
    return FieldMatrix(2, 2, [h, -h, CycNum.zero(conductor), one])


@dataclass(frozen=True)
class BWLattice:
    n: int
    m: int  # field conductor is 2^m, m >= 2

    def __post_init__(self):
        if self.n < 1 or self.m < 2:
            raise ValueError("need n >= 1 and m >= 2")

    @property
    def conductor(self) -> int:
        return 1 << self.m

    @property
    def dim(self) -> int:
        return 1 << self.n


def _into_field(v: FieldVector, conductor: int) -> FieldVector | None:
    """Rewrite v over Q(zeta_conductor), or None if an entry lies outside."""
    out = []
    for e in v.entries:
        d = descend_to(e, conductor)
        if d is None:
            return None
        out.append(d)
    return FieldVector(out)


def to_bw_coords(v: FieldVector, lat: BWLattice) -> FieldVector:
    if len(v) != lat.dim:
        raise ValueError("vector length does not match the lattice dimension")
    return kron_apply(b_inverse_matrix(lat.conductor), lat.n, v.lift(
        math.lcm(v.conductor, lat.conductor)))


def from_bw_coords(c: FieldVector, lat: BWLattice) -> FieldVector:
    if len(c) != lat.dim:
        raise ValueError("vector length does not match the lattice dimension")
    return kron_apply(b_matrix(lat.conductor), lat.n, c.lift(
        math.lcm(c.conductor, lat.conductor)))


def in_lattice(v: FieldVector, lat: BWLattice) -> bool:
    coords = _into_field(to_bw_coords(v, lat), lat.conductor)
    return coords is not None and coords.is_integral()


def in_dual(v: FieldVector, lat: BWLattice) -> bool:
    coords = _into_field(to_bw_coords(v, lat), lat.conductor)
    if coords is None:
        return False
    s = one_plus_i(lat.conductor) ** lat.n
    return coords.scale(s).is_integral()


def operator_in_bw(a: FieldMatrix, n_out: int, n_in: int,
                   m: int = 2) -> tuple[bool, FieldMatrix]:
    """Integrality of (B^-1)^{tensor n_out} a B^{tensor n_in}.

    Returns the verdict together with the transformed matrix.
    """
    if a.rows != 1 << n_out or a.cols != 1 << n_in:
        raise ValueError("matrix shape does not match the qubit counts")
    conductor = 1 << m
    k = math.lcm(a.conductor, conductor)
    t = kron_apply_matrix(b_inverse_matrix(conductor), n_out, a.lift(k),
                          side="left")
    t = kron_apply_matrix(b_matrix(conductor), n_in, t, side="right")
    for e in t.entries:
        d = descend_to(e, conductor)
        if d is None or not d.is_integral():
            return False, t
    return True, t


def _half_trace(a: CycNum) -> Fraction:
    """The rational (1/2) Tr_{E/Q}(a) used as the real bilinear form."""
    if euler_phi(a.conductor) == 1:
        return a.as_rational()
    tr = trace_E_over_Q(a)
    return tr / 2


def bw_norm(v: FieldVector, lat: BWLattice) -> Fraction:
    """Trace norm (1/2) Tr_{E/Q} sum_i |v_i|^2 with E = Q(zeta_{2^m})."""
    total = Fraction(0)
    for e in v.entries:
        d = descend_to(e, lat.conductor)
        if d is None:
            raise ValueError("entry outside the lattice field")
        total += _half_trace(d * d.conj())
    return total


def lattice_minimum(lat: BWLattice) -> Fraction:
    return Fraction(2 ** (lat.m - 2) * 2 ** lat.n)


# ---------------------------------------------------------------------------
# Minimal vectors


def enumerate_minimal_vectors(lat: BWLattice, n_cap: int = 3,
                              m_cap: int = 4) -> list[FieldVector]:
    """All minimal vectors, by the one-qubit base set and the tensor recursion."""
    if lat.n > n_cap or lat.m > m_cap:
        raise LatticeCapExceeded("minimal-vector enumeration cap exceeded")
    k = lat.conductor
    if lat.n == 1:
        out: dict = {}
        zero, one = CycNum.zero(k), CycNum.one(k)
        iu = imag_unit(k)
        opi = one_plus_i(k)
        shapes = [FieldVector([opi, zero]), FieldVector([zero, opi])]
        cur = one
        for _ in range(4):
            shapes.append(FieldVector([one, cur]))
            cur = cur * iu
        for t in range(k):
            s = zeta(k, t)
            for sh in shapes:
                v = sh.scale(s)
                out[v.key(k)] = v
        return list(out.values())

    sub = enumerate_minimal_vectors(BWLattice(lat.n - 1, lat.m), n_cap, m_cap)
    target = lattice_minimum(lat)
    out = {}
    zero_half = FieldVector.zero(lat.dim // 2, k)
    opi = one_plus_i(k)
    for u in sub:
        us = u.scale(opi)
        for v in (FieldVector(list(us.entries) + list(zero_half.entries)),
                  FieldVector(list(zero_half.entries) + list(us.entries))):
            out[v.key(k)] = v
    for u0 in sub:
        for u1 in sub:
            v = FieldVector(list(u0.lift(k).entries) + list(u1.lift(k).entries))
            if v.key(k) in out:
                continue
            if bw_norm(v, lat) == target and in_lattice(v, lat):
                out[v.key(k)] = v
    return list(out.values())


# ---------------------------------------------------------------------------
# Brute-force oracle over the flattened Z-lattice


def _z_basis(lat: BWLattice) -> list[FieldVector]:
    """Z-basis of the lattice: zeta^t B^{tensor n} e_j for t < phi(2^m)."""
    k = lat.conductor
    phi = euler_phi(k)
    cols = []
    for j in range(lat.dim):
        col = from_bw_coords(FieldVector.basis_state(lat.dim, j, k), lat)
        for t in range(phi):
            cols.append(col.scale(zeta(k, t)))
    return cols


def _gram(vectors: list[FieldVector], lat: BWLattice) -> list[list[Fraction]]:
    g = []
    for u in vectors:
        row = []
        for w in vectors:
            s = CycNum.zero(lat.conductor)
            for a, b in zip(u.entries, w.entries):
                s = s + a.conj() * b
            row.append(_half_trace(descend_to(s, lat.conductor)))
        g.append(row)
    return g


def brute_force_short_vectors(lat: BWLattice, bound) -> list[FieldVector]:
    """All nonzero lattice vectors of trace norm <= bound, by box enumeration.

    Independent of the recursion: exhausts integer coordinates in a box read
    off the exact Gram matrix of the flattened Z-lattice.
    """
    if lat.n > 2 or lat.m > 3:
        raise LatticeCapExceeded("brute-force oracle capped at n <= 2, m <= 3")
    bound = Fraction(bound)
    if bound <= 0:
        return []
    import numpy as np

    basis = _z_basis(lat)
    g = _gram(basis, lat)
    rank = len(basis)
    gmat = FieldMatrix.from_rows(g)
    ginv = gmat.inverse()
    radii = []
    for i in range(rank):
        r2 = bound * ginv[i, i].as_rational()
        radii.append(math.isqrt(math.floor(r2)))
    # Integer arithmetic throughout: scale the Gram to clear half-integers.
    g2 = np.array([[int(2 * e) for e in row] for row in g], dtype=np.int64)
    bound2 = 2 * bound
    grids = np.meshgrid(*[np.arange(-r, r + 1, dtype=np.int64) for r in radii],
                        indexing="ij")
    pts = np.stack([gr.ravel() for gr in grids], axis=1)
    q = np.einsum("pi,ij,pj->p", pts, g2, pts)
    keep = pts[(q <= float(bound2)) & (q > 0)]
    out = []
    for x in keep:
        v = FieldVector.zero(lat.dim, lat.conductor)
        for c, bvec in zip(x, basis):
            if c:
                v = v + bvec.scale(int(c))
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# Stabilizer-form certification of minimal vectors


def certify_stabilizer_form(v: FieldVector, lat: BWLattice):
    """Express v as zeta_{2^m}^j (1+i)^n C|0...0> for a Clifford circuit C.

    Returns (j, circuit) or None when v has no such form.
    """
    from .clifford import apply_circuit, tableau_mapping_z_to, tableau_to_circuit
    from .cyclo import root_of_unity_exponent
    from .pauli import stabilizer_group

    n = lat.n
    grp = stabilizer_group(v)
    if len(grp) != n:
        return None
    circ = tableau_to_circuit(tableau_mapping_z_to(list(grp), n))
    w = apply_circuit(circ, FieldVector.basis_state(lat.dim, 0, 4))
    j_sup = w.support()[0]
    if v[j_sup].is_zero():
        return None
    s = v[j_sup] / w[j_sup]
    if v != w.scale(s):
        return None
    phase = s / one_plus_i(s.conductor) ** n
    phase = descend_to(phase, lat.conductor)
    if phase is None:
        return None
    j = root_of_unity_exponent(phase)
    if j is None:
        return None
    return j, circ

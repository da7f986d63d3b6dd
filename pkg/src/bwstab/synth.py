"""Recognition and synthesis of post-selected stabilizer operators.

Decides whether a matrix A over Q(zeta_{2^m}) has the form
zeta^j (1+i)^{n_out-k} R (|0..0><0..0| x I_k) L^dagger with Clifford L, R,
and reconstructs that form exactly.  The decision goes through the Choi
state: A qualifies iff Tr(A^dagger A) = 2^{n_out} and the conjugated matrix
(B^-1)^{x n_out} A B^{x n_in} is integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .barneswall import operator_in_bw
from .clifford import (
    CliffordCircuit,
    CliffordTableau,
    Gate,
    apply_circuit,
    tableau_mapping_z_to,
    tableau_to_circuit,
)
from .cyclo import (
    CycNum,
    FieldError,
    descend_to,
    one_plus_i,
    root_of_unity_exponent,
    zeta,
)
from .linalg import FieldMatrix, FieldVector, norm_sq
from .pauli import PauliOp, StabGroup, _pc, independent_generators, stabilizer_group


class NotStabilizerOperator(ValueError):
    pass


@dataclass(frozen=True)
class ChoiState:
    n_in: int
    n_out: int
    vector: FieldVector


@dataclass(frozen=True)
class StabOpForm:
    n_in: int
    n_out: int
    k: int
    m: int
    phase_exp: int  # j in zeta_{2^m}^j
    L: CliffordCircuit  # on n_in qubits
    R: CliffordCircuit  # on n_out qubits


@dataclass(frozen=True)
class Theorem1Verdict:
    n_in: int
    n_out: int
    m: int
    trace_ok: bool
    integral_ok: bool
    failure_reason: Optional[str]

    @property
    def passed(self) -> bool:
        return self.trace_ok and self.integral_ok


def infer_dyadic_conductor(entries) -> int:
    """Smallest 2^m (m >= 2) whose field contains every entry."""
    k = 1
    for e in entries:
        k = math.lcm(k, e.reduce_conductor().conductor)
    if k & (k - 1):
        raise FieldError(f"entries lie in conductor {k}, not a power of two")
    return max(k, 4)


def choi_state(a: FieldMatrix, n_in: int, n_out: int) -> ChoiState:
    """(1+i)^{n_in} sum_j |j> x A|j>, input copy on the first n_in qubits."""
    if a.rows != 1 << n_out or a.cols != 1 << n_in:
        raise ValueError("matrix shape does not match the qubit counts")
    k = math.lcm(a.conductor, 4)
    s = one_plus_i(k) ** n_in
    zero = CycNum.zero(k)
    out = [zero] * (1 << (n_in + n_out))
    for j in range(1 << n_in):
        for l in range(1 << n_out):
            e = a[l, j]
            if not e.is_zero():
                out[(j << n_out) | l] = s * e.lift(k)
    return ChoiState(n_in, n_out, FieldVector(out))


def check_theorem1(a: FieldMatrix, n_in: int, n_out: int,
                   m: Optional[int] = None) -> Theorem1Verdict:
    if a.rows != 1 << n_out or a.cols != 1 << n_in:
        raise ValueError("matrix shape does not match the qubit counts")
    if m is None:
        m = max(infer_dyadic_conductor(a.entries).bit_length() - 1, 2)
    if all(e.is_zero() for e in a.entries):
        return Theorem1Verdict(n_in, n_out, m, False, False,
                               "zero matrix is not a stabilizer operator")
    tr = (a.dagger() @ a).trace()
    trace_ok = tr == CycNum.rational(1 << n_out, tr.conductor)
    integral_ok, _ = operator_in_bw(a, n_out, n_in, m)
    reason = None
    if not trace_ok:
        reason = "trace of A^dagger A differs from 2^{n_out}"
    elif not integral_ok:
        reason = "conjugated matrix is not integral"
    return Theorem1Verdict(n_in, n_out, m, trace_ok, integral_ok, reason)


# ---------------------------------------------------------------------------
# Bipartite normal form


def _restrict_keep_phase(p: PauliOp, qubits) -> PauliOp:
    """Restriction of a Pauli supported inside the given qubits, phase kept."""
    qs = list(qubits)
    out = p.restrict(qs)
    return PauliOp(out.n, out.x, out.z, p.phase)


def _side_masks(n_in: int, n_out: int):
    n = n_in + n_out
    in_mask = ((1 << n_in) - 1) << n_out
    out_mask = (1 << n_out) - 1
    return n, in_mask, out_mask


def _local_subgroup(gens, side_mask, n):
    """Products of generators supported only inside side_mask."""
    others = ~side_mask & ((1 << n) - 1)
    work = list(gens)
    basis: dict[int, PauliOp] = {}
    local = []
    for g in work:
        cur = g
        while True:
            vec = ((cur.x & others) << n) | (cur.z & others)
            if vec == 0:
                if not cur.is_identity_mask():
                    local.append(cur)
                break
            lead = vec.bit_length() - 1
            if lead in basis:
                cur = cur * basis[lead]
            else:
                basis[lead] = cur
                break
    return independent_generators(local, n)


def bipartite_normal_form(g: StabGroup, n_in: int, n_out: int
                          ) -> tuple[CliffordCircuit, CliffordCircuit, int]:
    """Local Cliffords (input side, output side) canonicalising the group.

    After conjugating g by (C_in x C_out), the group is generated by Z on the
    first n_in-k input qubits, Z on the first n_out-k output qubits, and the
    pairs X_a X_a', Z_a Z_a' linking the last k qubits of each side.
    """
    n, in_mask, out_mask = _side_masks(n_in, n_out)
    if len(g.generators) != n:
        raise ValueError("not a full stabilizer group")
    gens = list(g.generators)
    in_qubits = list(range(n_in))
    out_qubits = list(range(n_in, n))

    in_local = _local_subgroup(gens, in_mask, n)
    out_local = _local_subgroup(gens, out_mask, n)
    k = n_in - len(in_local)
    if n_out - len(out_local) != k:
        raise ValueError("inconsistent local subgroup ranks")

    gates: dict[str, list[Gate]] = {"in": [], "out": []}

    def local_stage(local_gens, qubits, side):
        nloc = len(qubits)
        targets = [_restrict_keep_phase(p, qubits) for p in local_gens]
        if targets:
            tab = tableau_mapping_z_to(targets, nloc)
            circ = tableau_to_circuit(tab).inverse()
        else:
            circ = CliffordCircuit(nloc, ())
        gates[side].extend(circ.gates)
        tab_full = circ.tableau()
        return [p.embed(n, qubits) for p in tab_full.images]

    def conj_by_images(images_in, images_out, p: PauliOp) -> PauliOp:
        # conjugation by (C_in x C_out) via the embedded tableau images
        out = PauliOp(n, 0, 0, p.phase)
        imgs = {}
        for q in range(n_in):
            imgs[("x", q)] = images_in[q]
            imgs[("z", q)] = images_in[n_in + q]
        for q in range(n_out):
            imgs[("x", n_in + q)] = images_out[q]
            imgs[("z", n_in + q)] = images_out[n_out + q]
        for q in range(n):
            if p.x & (1 << (n - 1 - q)):
                out = out * imgs[("x", q)]
        for q in range(n):
            if p.z & (1 << (n - 1 - q)):
                out = out * imgs[("z", q)]
        return out

    imgs_in = local_stage(in_local, in_qubits, "in")
    imgs_out = local_stage(out_local, out_qubits, "out")
    gens = [conj_by_images(imgs_in, imgs_out, p) for p in gens]

    # The conjugated group now contains Z_q for the leading local qubits.
    z_in = [PauliOp(n, 0, 1 << (n - 1 - q), 0) for q in range(n_in - k)]
    z_out = [PauliOp(n, 0, 1 << (n - 1 - (n_in + q)), 0)
             for q in range(n_out - k)]
    for p in z_in + z_out:
        if not _in_group(gens, p, n):
            raise ValueError("local stage failed to canonicalise Z generators")

    # Reduce the remaining generators to the k-qubit tails.
    tail_in = list(range(n_in - k, n_in))
    tail_out = list(range(n_in + n_out - k, n))
    tail_mask = 0
    for q in tail_in + tail_out:
        tail_mask |= 1 << (n - 1 - q)
    mixed = _reduce_to_support(gens, z_in + z_out, tail_mask, n)
    assert len(mixed) == 2 * k

    if k:
        # Combos whose input-tail restriction is exactly X_a / Z_a.
        gx, gz = [], []
        for a in range(k):
            bit = 1 << (k - 1 - a)
            gx.append(_solve_combo(mixed, tail_in, n, x=bit, z=0))
            gz.append(_solve_combo(mixed, tail_in, n, x=0, z=bit))
        ps = []
        for h, loc_x, loc_z in (
            [(h, 1 << (k - 1 - a), 0) for a, h in enumerate(gx)]
            + [(h, 0, 1 << (k - 1 - a)) for a, h in enumerate(gz)]
        ):
            local = PauliOp(k, loc_x, loc_z, _pc(loc_x & loc_z)).embed(n, tail_in)
            tail = local * h  # identity on the input side by construction
            ps.append(_restrict_keep_phase(tail, tail_out))
        tab = CliffordTableau(k, tuple(ps[:k] + ps[k:]))
        # tab maps X_a -> P_a, Z_a -> Q_a; its inverse sends the tails home.
        tail_circ = tableau_to_circuit(tab).inverse()
        shifted = tuple(
            Gate(gte.name, tuple(q + (n_out - k) for q in gte.qubits),
                 gte.pauli.embed(n_out, list(range(n_out - k, n_out)))
                 if gte.pauli else None, gte.conductor, gte.exponent)
            for gte in tail_circ.gates
        )
        gates["out"].extend(shifted)

    c_in = CliffordCircuit(n_in, tuple(gates["in"]))
    c_out = CliffordCircuit(n_out, tuple(gates["out"]))
    return c_in, c_out, k


def _in_group(gens, p: PauliOp, n: int) -> bool:
    """Exact membership of p in the group generated by commuting gens."""
    basis: dict[int, PauliOp] = {}
    for g in gens:
        cur = g
        while not cur.is_identity_mask():
            vec = (cur.x << n) | cur.z
            lead = vec.bit_length() - 1
            if lead in basis:
                cur = cur * basis[lead]
            else:
                basis[lead] = cur
                break
    cur = p
    while not cur.is_identity_mask():
        vec = (cur.x << n) | cur.z
        lead = vec.bit_length() - 1
        if lead not in basis:
            return False
        cur = cur * basis[lead]
    return cur.phase % 4 == 0


def _reduce_to_support(gens, z_gens, tail_mask, n):
    """Independent generators modulo z_gens, reduced inside tail_mask."""
    # eliminate z generators first, then clear residual z bits outside tails
    out = []
    basis: dict[int, PauliOp] = {}
    for p in z_gens:
        vec = (p.x << n) | p.z
        basis[vec.bit_length() - 1] = p
    for g in gens:
        cur = g
        while not cur.is_identity_mask():
            vec = (cur.x << n) | cur.z
            lead = vec.bit_length() - 1
            if lead in basis:
                cur = cur * basis[lead]
            else:
                basis[lead] = cur
                out.append(cur)
                break
    # clear z bits outside the tails using the z generators
    cleaned = []
    for p in out:
        cur = p
        for zp in z_gens:
            if cur.z & zp.z & ~tail_mask:
                cur = cur * zp
        assert (cur.x | cur.z) & ~tail_mask == 0, "support reduction failed"
        cleaned.append(cur)
    return cleaned


def _solve_combo(mixed, tail_in, n, x: int, z: int) -> PauliOp:
    """Product of mixed generators whose input-tail masks equal (x, z)."""
    from .pauli import _solve_gf2

    k = len(tail_in)
    rows = []
    for p in mixed:
        r = p.restrict(tail_in)
        rows.append((r.x << k) | r.z)
    # transpose: variables = which generators to multiply
    nvars = len(mixed)
    eqs = []
    rhs = []
    target = (x << k) | z
    for bitpos in range(2 * k):
        eq = 0
        for col, rv in enumerate(rows):
            if (rv >> bitpos) & 1:
                eq |= 1 << col
        eqs.append(eq)
        rhs.append((target >> bitpos) & 1)
    sol = _solve_gf2(eqs, rhs, nvars)
    assert sol is not None, "tail restrictions do not span"
    pick, _ = sol
    out = PauliOp.identity(n)
    for idx in range(nvars):
        if (pick >> idx) & 1:
            out = out * mixed[idx]
    return out


# ---------------------------------------------------------------------------
# Recognition pipeline


def _embed_circuit(c: CliffordCircuit, n: int, offset: int) -> tuple[Gate, ...]:
    out = []
    for g in c.gates:
        p = None
        if g.pauli is not None:
            p = g.pauli.embed(n, list(range(offset, offset + c.n)))
        out.append(Gate(g.name, tuple(q + offset for q in g.qubits), p,
                        g.conductor, g.exponent))
    return tuple(out)


def recognize(a: FieldMatrix, n_in: int, n_out: int,
              m: Optional[int] = None) -> StabOpForm:
    verdict = check_theorem1(a, n_in, n_out, m)
    if not verdict.passed:
        raise NotStabilizerOperator(verdict.failure_reason)
    m = verdict.m
    n = n_in + n_out
    psi = choi_state(a, n_in, n_out).vector
    grp = stabilizer_group(psi)
    if len(grp) != n:
        raise NotStabilizerOperator(
            "Choi state is not a stabilizer state")  # pragma: no cover
    c_in, c_out, k = bipartite_normal_form(grp, n_in, n_out)
    full = CliffordCircuit(n, _embed_circuit(c_in, n, 0)
                           + _embed_circuit(c_out, n, n_in))
    w = apply_circuit(full, psi)
    # canonical state: sum over the k-bit tail, both sides zero-padded
    sup0 = None
    gamma = None
    ok = True
    seen = 0
    for t in range(1 << k):
        idx = (t << n_out) | t
        if w[idx].is_zero():
            ok = False
            break
        if gamma is None:
            gamma = w[idx]
        elif w[idx] != gamma:
            ok = False
            break
        seen += 1
    if ok:
        nz = sum(1 for e in w.entries if not e.is_zero())
        ok = nz == seen
    if not ok or gamma is None:
        raise NotStabilizerOperator(
            "normal form did not produce the canonical Choi state")
    scale = one_plus_i(gamma.conductor) ** (n_in + n_out - k)
    phase = descend_to(gamma / scale, 1 << m)
    j = root_of_unity_exponent(phase) if phase is not None else None
    if j is None:
        raise NotStabilizerOperator("phase is not a root of unity")
    L = c_in.conj().inverse()
    R = c_out.inverse()
    form = StabOpForm(n_in, n_out, k, m, j, L, R)
    if reconstruct(form) != a:
        raise NotStabilizerOperator(
            "reconstruction mismatch")  # pragma: no cover
    return form


def reconstruct(f: StabOpForm) -> FieldMatrix:
    """zeta^j (1+i)^{n_out-k} R (|0><0|^{x(n_out-k)} x I) (<0|^{x(n_in-k)} x I) L^dagger."""
    conductor = 1 << f.m
    rows, cols = 1 << f.n_out, 1 << f.n_in
    zero = CycNum.zero(conductor)
    proj = [[zero] * cols for _ in range(rows)]
    one = CycNum.one(conductor)
    for t in range(1 << f.k):
        proj[t][t] = one
    p = FieldMatrix(rows, cols, [e for row in proj for e in row])
    lmat = f.L.matrix(conductor)
    rmat = f.R.matrix(conductor)
    s = zeta(conductor, f.phase_exp) * one_plus_i(conductor) ** (f.n_out - f.k)
    return (rmat @ p @ lmat.dagger()).scale(s)


def recognize_state(psi: FieldVector, m: int):
    """(j, t, circuit) with psi = zeta_{2^m}^j (1+i)^t R|0...0>, or None."""
    from .barneswall import BWLattice, in_dual
    from .pauli import is_stabilizer_state

    if psi.is_zero():
        return None
    dim = len(psi)
    n = dim.bit_length() - 1
    if 1 << n != dim:
        raise ValueError("vector length is not a power of two")
    if n and not in_dual(psi, BWLattice(n, m)):
        return None
    nrm = norm_sq(psi)
    if not nrm.is_rational():
        return None
    r = nrm.as_rational()
    if r.denominator != 1 or r.numerator & (r.numerator - 1):
        return None
    t = r.numerator.bit_length() - 1
    if n == 0:
        phase = descend_to(psi[0] / one_plus_i(psi[0].conductor) ** t, 1 << m)
        j = root_of_unity_exponent(phase) if phase is not None else None
        if j is None:
            return None
        return j, t, CliffordCircuit(0, ())
    if not is_stabilizer_state(psi):
        return None
    grp = stabilizer_group(psi)
    circ = tableau_to_circuit(tableau_mapping_z_to(list(grp), n))
    w = apply_circuit(circ, FieldVector.basis_state(dim, 0, 4))
    sup = w.support()[0]
    if psi[sup].is_zero():
        return None
    s = psi[sup] / w[sup]
    if psi != w.scale(s):
        return None  # pragma: no cover
    phase = descend_to(s / one_plus_i(s.conductor) ** t, 1 << m)
    j = root_of_unity_exponent(phase) if phase is not None else None
    if j is None:
        return None
    return j, t, circ

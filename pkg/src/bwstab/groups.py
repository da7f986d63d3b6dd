"""Breadth-first enumeration of finite matrix groups with exact entries.

Two flavours: the full matrix group, and the projective group (matrices up
to scalar multiples).  The projective walk also recovers the order of the
scalar subgroup, so the full order is available without enumerating every
scalar multiple.
"""
from __future__ import annotations

import math
from collections import deque
from typing import Optional, Sequence

from .cyclo import CycNum, is_root_of_unity
from .linalg import FieldMatrix


class GroupCapExceeded(RuntimeError):
    pass


def _first_nonzero(m: FieldMatrix) -> Optional[int]:
    for idx, e in enumerate(m.entries):
        if not e.is_zero():
            return idx
    return None


def _monomial_parts(g: FieldMatrix):
    """(source_row, phase) per output row if g has one nonzero per row."""
    src, ph = [], []
    for r in range(g.rows):
        hits = [c for c in range(g.cols) if not g[r, c].is_zero()]
        if len(hits) != 1:
            return None
        src.append(hits[0])
        ph.append(g[r, hits[0]])
    return src, ph


def _left_mul(g: FieldMatrix, mono, m: FieldMatrix) -> FieldMatrix:
    if mono is None:
        return g @ m
    src, ph = mono
    dim = m.cols
    entries = []
    for r in range(g.rows):
        row = m.entries[src[r] * dim:(src[r] + 1) * dim]
        p = ph[r]
        entries.extend(p * e for e in row)
    return FieldMatrix(g.rows, dim, entries)


def matrix_group_order(generators: Sequence[FieldMatrix],
                       cap: int = 2_000_000) -> int:
    """Order of the group generated by exact matrices, by BFS."""
    dim = generators[0].rows
    conductor = math.lcm(*[g.conductor for g in generators])
    gens = [g.lift(conductor) for g in generators]
    monos = [_monomial_parts(g) for g in gens]
    start = FieldMatrix.identity(dim, conductor)
    seen = {start.key(conductor)}
    frontier = deque([start])
    while frontier:
        m = frontier.popleft()
        for g, mono in zip(gens, monos):
            nxt = _left_mul(g, mono, m)
            k = nxt.key(conductor)
            if k not in seen:
                if len(seen) >= cap:
                    raise GroupCapExceeded(
                        f"matrix group exceeds the configured cap of {cap}")
                seen.add(k)
                frontier.append(nxt)
    return len(seen)


def projective_group_order(generators: Sequence[FieldMatrix],
                           cap: int = 2_000_000) -> tuple[int, int]:
    """(projective order, scalar subgroup order) of the generated group.

    States are matrices normalised by their first nonzero entry, so the walk
    visits each projective class once.  Unnormalised lifts are tracked along
    a spanning tree; the scalar ratios on the remaining edges generate the
    subgroup of scalar matrices, whose order is reported second.
    """
    dim = generators[0].rows
    conductor = math.lcm(*[g.conductor for g in generators])
    gens = [g.lift(conductor) for g in generators]
    monos = [_monomial_parts(g) for g in gens]

    def normalise(m: FieldMatrix) -> FieldMatrix:
        idx = _first_nonzero(m)
        if idx is None:
            raise ValueError("zero matrix in group walk")
        return m.scale(m.entries[idx].inverse())

    start = FieldMatrix.identity(dim, conductor)
    reps = {start.key(conductor): start}  # normalised key -> unnormalised lift
    frontier = deque([start])
    scalar_order = 1
    while frontier:
        m = frontier.popleft()
        for g, mono in zip(gens, monos):
            nxt = _left_mul(g, mono, m)
            norm = normalise(nxt)
            k = norm.key(conductor)
            if k not in reps:
                if len(reps) >= cap:
                    raise GroupCapExceeded(
                        f"projective group exceeds the configured cap of {cap}")
                reps[k] = nxt
                frontier.append(nxt)
            else:
                # Non-tree edge: nxt = s * reps[k] for a scalar s in the group.
                old = reps[k]
                idx = _first_nonzero(old)
                s = nxt.entries[idx] / old.entries[idx]
                scalar_order = _join_scalar(scalar_order, s)
    return len(reps), scalar_order


def _join_scalar(current_order: int, s: CycNum) -> int:
    """Order of the group generated by a cyclic group and the root of unity s."""
    res = is_root_of_unity(s)
    if res is None:
        raise ValueError("non-root-of-unity scalar ratio in a finite group")
    sign, expo = res
    k = s.conductor
    if sign == -1:
        k = math.lcm(k, 2)
        expo = (expo * (k // s.conductor) + k // 2) % k
    # s = zeta_k^expo has order k / gcd(k, expo).
    order = k // math.gcd(k, expo) if expo else 1
    return math.lcm(current_order, order)

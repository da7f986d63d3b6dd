"""Integer row Hermite normal form and flattened Z-lattices.

Modules over cyclotomic integer rings are compared by flattening to
Z-lattices (each generator contributes its zeta-multiples) and reducing the
integer generator matrix to a canonical HNF basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF: positive pivots left to right, entries above a pivot
    reduced into [0, pivot).  Zero rows are dropped."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    done: list[list[int]] = []
    col = 0
    while work and col < ncols:
        live = [r for r in work if r[col] != 0]
        if not live:
            col += 1
            continue
        # gcd elimination in this column
        while len([r for r in work if r[col] != 0]) > 1:
            live = sorted((r for r in work if r[col] != 0),
                          key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                q = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= q * piv[j]
            work = [r for r in work if any(r)]
        piv = next(r for r in work if r[col] != 0)
        work.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        done.append(piv)
        col += 1
    # reduce entries above each pivot
    pivots = []
    for r in done:
        c = next(j for j in range(ncols) if r[j] != 0)
        pivots.append(c)
    for i in range(len(done)):
        for below in range(i + 1, len(done)):
            c = pivots[below]
            q = done[i][c] // done[below][c]
            if q:
                for j in range(ncols):
                    done[i][j] -= q * done[below][j]
    return done


def _reduce_against(v: list[int], basis: list[list[int]]) -> list[int]:
    """Reduce v by exact integer multiples of HNF basis rows."""
    v = list(v)
    for row in basis:
        c = next(j for j in range(len(row)) if row[j] != 0)
        if v[c] % row[c] == 0:
            q = v[c] // row[c]
            if q:
                for j in range(len(v)):
                    v[j] -= q * row[j]
    return v


@dataclass(frozen=True)
class ZLattice:
    """A Z-lattice (1/denominator) * rowspan_Z(basis), basis in HNF."""

    denominator: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rational_rows(rows: Sequence[Sequence[Fraction]]) -> ZLattice:
        rows = [[Fraction(x) for x in r] for r in rows]
        den = 1
        for r in rows:
            for x in r:
                den = math.lcm(den, x.denominator)
        ints = [[int(x * den) for x in r] for r in rows]
        h = hermite_normal_form(ints)
        g = 0
        for r in h:
            for x in r:
                g = math.gcd(g, x)
        g = math.gcd(g, den)
        if g > 1:
            h = [[x // g for x in r] for r in h]
            den //= g
        return ZLattice(den, tuple(tuple(r) for r in h))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec: Sequence[Fraction]) -> bool:
        scaled = [Fraction(x) * self.denominator for x in vec]
        if any(x.denominator != 1 for x in scaled):
            return False
        red = _reduce_against([int(x) for x in scaled],
                              [list(r) for r in self.basis])
        return not any(red)

    def __eq__(self, other):
        if not isinstance(other, ZLattice):
            return NotImplemented
        return (self.denominator == other.denominator
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.denominator, self.basis))

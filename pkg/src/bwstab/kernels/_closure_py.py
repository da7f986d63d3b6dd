"""Pure-Python fallback for the tableau closure kernel.

Semantics are identical to the compiled version in ``_closure.pyx``: a BFS
over packed tableau states, where each generator acts row-wise through a
precomputed conjugation table.
"""
from __future__ import annotations

from collections import deque


def closure_count(tables, start_rows, row_bits: int, cap: int) -> int:
    """Count distinct tableau states reachable from ``start_rows``.

    tables     : sequence of lookup tables, one per generator; each maps a
                 packed Hermitian-Pauli row code to its conjugated row code.
    start_rows : row codes of the starting tableau (usually the identity).
    row_bits   : bits per row code.
    cap        : maximum number of states; -1 is returned when exceeded.
    """
    nrows = len(start_rows)
    mask = (1 << row_bits) - 1
    shifts = [i * row_bits for i in range(nrows)]

    def pack(rows):
        key = 0
        for r, s in zip(rows, shifts):
            key |= r << s
        return key

    start = pack(start_rows)
    seen = {start}
    frontier = deque([start])
    tabs = [list(t) for t in tables]
    while frontier:
        key = frontier.popleft()
        rows = [(key >> s) & mask for s in shifts]
        for tab in tabs:
            new = pack([tab[r] for r in rows])
            if new not in seen:
                if len(seen) >= cap:
                    return -1
                seen.add(new)
                frontier.append(new)
    return len(seen)

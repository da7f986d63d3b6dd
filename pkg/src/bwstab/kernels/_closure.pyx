# cython: boundscheck=False, wraparound=False, language_level=3
# distutils: language = c++
"""Compiled tableau closure kernel.

BFS over packed tableau states; each generator acts row-wise through a
precomputed conjugation table.  Mirrors ``_closure_py.closure_count``.
"""
from libc.stdint cimport uint32_t, uint64_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

import numpy as np


def closure_count(tables, start_rows, int row_bits, long long cap):
    """Count distinct tableau states reachable from ``start_rows``."""
    cdef int nrows = len(start_rows)
    cdef int ngens = len(tables)
    if nrows * row_bits > 64:
        raise ValueError("packed tableau state exceeds 64 bits")

    tab_arr = np.ascontiguousarray(
        np.asarray([np.asarray(t, dtype=np.uint32) for t in tables]),
        dtype=np.uint32,
    )
    cdef uint32_t[:, ::1] tabs = tab_arr
    cdef uint64_t mask = (<uint64_t> 1 << row_bits) - 1

    cdef uint64_t start = 0
    cdef int i
    for i in range(nrows):
        start |= (<uint64_t> start_rows[i]) << (i * row_bits)

    cdef unordered_set[uint64_t] seen
    cdef vector[uint64_t] frontier
    seen.insert(start)
    frontier.push_back(start)

    cdef uint64_t key, new_key, row
    cdef size_t head = 0
    cdef int g
    while head < frontier.size():
        key = frontier[head]
        head += 1
        for g in range(ngens):
            new_key = 0
            for i in range(nrows):
                row = (key >> (i * row_bits)) & mask
                new_key |= (<uint64_t> tabs[g, <size_t> row]) << (i * row_bits)
            if seen.find(new_key) == seen.end():
                if <long long> seen.size() >= cap:
                    return -1
                seen.insert(new_key)
                frontier.push_back(new_key)
    return <long long> seen.size()

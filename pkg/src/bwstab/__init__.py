"""bwstab: exact stabilizer-circuit recognition via Barnes-Wall lattice bases.

Everything is exact: scalars are elements of cyclotomic fields represented
by rational coefficient vectors, and no correctness path ever touches
floating point.
"""
from __future__ import annotations

from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
__all__ = ["KERNEL_BACKEND", "__version__"]

"""Closure kernel backend selection.

The compiled Cython kernel is preferred; the pure-Python fallback is used
when the extension is unavailable or when ``BWSTAB_PURE=1`` is set.
"""
from __future__ import annotations

import os

from . import _closure_py

if os.environ.get("BWSTAB_PURE") == "1":
    _impl = _closure_py
    BACKEND = "python"
else:
    try:
        from . import _closure as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _closure_py
        BACKEND = "python"

closure_count = _impl.closure_count
closure_count_py = _closure_py.closure_count

__all__ = ["closure_count", "closure_count_py", "BACKEND"]

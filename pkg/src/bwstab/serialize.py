"""Bit-exact JSON encodings for matrices, vectors and circuits.

Every field element is an array of phi(conductor) rational strings "p/q",
so no consumer can silently lose precision.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any

from .clifford import CliffordCircuit
from .cyclo import CycNum, euler_phi
from .linalg import FieldMatrix, FieldVector


class FormatError(ValueError):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise FormatError(msg)


def matrix_to_json(m: FieldMatrix) -> dict:
    return {
        "conductor": m.conductor,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [m[r, c].to_strings()
                    for r in range(m.rows) for c in range(m.cols)],
    }


def matrix_from_json(d: dict) -> FieldMatrix:
    _require(isinstance(d, dict), "matrix document must be an object")
    for f in ("conductor", "rows", "cols", "entries"):
        _require(f in d, f"missing field {f!r}")
    k, rows, cols = d["conductor"], d["rows"], d["cols"]
    _require(isinstance(k, int) and k >= 1, "conductor must be a positive integer")
    _require(isinstance(rows, int) and rows >= 1, "rows must be a positive integer")
    _require(isinstance(cols, int) and cols >= 1, "cols must be a positive integer")
    ents = d["entries"]
    _require(isinstance(ents, list) and len(ents) == rows * cols,
             f"entries must hold {rows * cols} items")
    phi = euler_phi(k)
    out = []
    for idx, item in enumerate(ents):
        _require(isinstance(item, list) and len(item) == phi,
                 f"entry {idx} must hold {phi} rational strings")
        try:
            out.append(CycNum.from_strings(k, item))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"entry {idx}: {exc}") from exc
    return FieldMatrix(rows, cols, out)


def vector_to_json(v: FieldVector) -> dict:
    return {
        "conductor": v.conductor,
        "length": len(v),
        "entries": [e.to_strings() for e in v.entries],
    }


def vector_from_json(d: dict) -> FieldVector:
    _require(isinstance(d, dict), "vector document must be an object")
    for f in ("conductor", "length", "entries"):
        _require(f in d, f"missing field {f!r}")
    k, length, ents = d["conductor"], d["length"], d["entries"]
    _require(isinstance(k, int) and k >= 1, "conductor must be a positive integer")
    _require(isinstance(ents, list) and len(ents) == length,
             f"entries must hold {length} items")
    phi = euler_phi(k)
    out = []
    for idx, item in enumerate(ents):
        _require(isinstance(item, list) and len(item) == phi,
                 f"entry {idx} must hold {phi} rational strings")
        try:
            out.append(CycNum.from_strings(k, item))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"entry {idx}: {exc}") from exc
    return FieldVector(out)


def circuit_to_json(c: CliffordCircuit) -> dict:
    return {"n": c.n, "gates": c.to_json()}


def circuit_from_json(d: dict) -> CliffordCircuit:
    _require(isinstance(d, dict) and "n" in d and "gates" in d,
             "circuit document must hold n and gates")
    return CliffordCircuit.from_json(d["n"], d["gates"])


def checksum(payload: Any) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()

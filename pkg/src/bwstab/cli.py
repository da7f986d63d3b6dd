"""Command-line front end with bit-exact JSON input and output.

Exit codes: 0 = affirmative / success, 1 = clean negative, 2 = malformed
input or a resource cap.  A ResultEnvelope JSON document is always printed.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from .barneswall import (
    BWLattice,
    LatticeCapExceeded,
    brute_force_short_vectors,
    bw_norm,
    certify_stabilizer_form,
    enumerate_minimal_vectors,
    in_dual,
    in_lattice,
    lattice_minimum,
)
from .beyond import (
    OrbitCapExceeded,
    UnknownNameError,
    basis_change,
    group_order_and_center,
    group_order_full,
    group_order_mod_center,
    group_spec,
    membership_state,
    membership_unitary,
    orbit_z_lattice,
)
from .clifford import ResourceCapExceeded
from .cyclo import FieldError
from .groups import GroupCapExceeded
from .linalg import FieldVector
from .serialize import (
    FormatError,
    circuit_to_json,
    matrix_from_json,
    vector_from_json,
    vector_to_json,
)
from .synth import NotStabilizerOperator, check_theorem1, choi_state, recognize, recognize_state

_CAP_ERRORS = (ResourceCapExceeded, GroupCapExceeded, OrbitCapExceeded,
               LatticeCapExceeded)


def _emit(command: list[str], verdict: str, payload: Any = None,
          failure_reason: Optional[str] = None) -> None:
    doc = {"command": command, "verdict": verdict}
    if payload is not None:
        doc["payload"] = payload
    if failure_reason is not None:
        doc["failure_reason"] = failure_reason
    json.dump(doc, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _qubit_shape(rows: int, cols: int) -> tuple[int, int]:
    n_out = rows.bit_length() - 1
    n_in = cols.bit_length() - 1
    if 1 << n_out != rows or 1 << n_in != cols:
        raise FormatError("matrix dimensions must be powers of two")
    return n_in, n_out


def _cmd_check_unitary(args, argv) -> int:
    a = matrix_from_json(_load_json(args.infile))
    n_in, n_out = _qubit_shape(a.rows, a.cols)
    v = check_theorem1(a, n_in, n_out, args.m)
    payload = {"m": v.m, "trace_ok": v.trace_ok, "integral_ok": v.integral_ok}
    if v.passed:
        _emit(argv, "ok", payload)
        return 0
    _emit(argv, "no", payload, v.failure_reason)
    return 1


def _cmd_check_state(args, argv) -> int:
    psi = vector_from_json(_load_json(args.infile))
    m = args.m
    if m is None:
        from .synth import infer_dyadic_conductor

        m = max(infer_dyadic_conductor(psi.entries).bit_length() - 1, 2)
    res = recognize_state(psi, m)
    if res is None:
        _emit(argv, "no", None, "not a stabilizer state up to phase")
        return 1
    j, t, circ = res
    _emit(argv, "ok", {"m": m, "phase_exp": j, "one_plus_i_power": t,
                       "circuit": circuit_to_json(circ)})
    return 0


def _cmd_synthesize(args, argv) -> int:
    a = matrix_from_json(_load_json(args.infile))
    n_in, n_out = _qubit_shape(a.rows, a.cols)
    try:
        f = recognize(a, n_in, n_out, args.m)
    except NotStabilizerOperator as exc:
        _emit(argv, "no", None, str(exc))
        return 1
    _emit(argv, "ok", {
        "n_in": f.n_in, "n_out": f.n_out, "k": f.k, "m": f.m,
        "phase_exp": f.phase_exp,
        "L": circuit_to_json(f.L), "R": circuit_to_json(f.R),
    })
    return 0


def _cmd_choi(args, argv) -> int:
    a = matrix_from_json(_load_json(args.infile))
    n_in, n_out = _qubit_shape(a.rows, a.cols)
    cs = choi_state(a, n_in, n_out)
    _emit(argv, "ok", {"n_in": n_in, "n_out": n_out,
                       "vector": vector_to_json(cs.vector)})
    return 0


def _cmd_minvec(args, argv) -> int:
    lat = BWLattice(args.n, args.m)
    vecs = enumerate_minimal_vectors(lat)
    payload: dict = {"count": len(vecs),
                     "minimum": str(lattice_minimum(lat))}
    if args.oracle:
        oracle = brute_force_short_vectors(lat, lattice_minimum(lat))
        same = ({v.key(lat.conductor) for v in vecs}
                == {v.key(lat.conductor) for v in oracle})
        payload["oracle_count"] = len(oracle)
        payload["oracle_agrees"] = same
        if not same:
            _emit(argv, "no", payload, "oracle disagreement")
            return 1
    if args.certify:
        certs = [certify_stabilizer_form(v, lat) for v in vecs]
        payload["all_stabilizer_certified"] = all(c is not None for c in certs)
    payload["vectors"] = [vector_to_json(v) for v in vecs]
    _emit(argv, "ok", payload)
    return 0


def _cmd_lattice_member(args, argv) -> int:
    psi = vector_from_json(_load_json(args.infile))
    n = len(psi).bit_length() - 1
    if 1 << n != len(psi):
        raise FormatError("vector length must be a power of two")
    lat = BWLattice(n, args.m)
    member = in_dual(psi, lat) if args.dual else in_lattice(psi, lat)
    payload = {"n": n, "m": args.m, "dual": bool(args.dual),
               "norm": str(bw_norm(psi, lat))}
    if member:
        _emit(argv, "ok", payload)
        return 0
    _emit(argv, "no", payload, "coordinates not integral")
    return 1


def _cmd_group_order(args, argv) -> int:
    name = args.group if args.n is None else f"{args.group}-{args.n}"
    spec = group_spec(name)
    cap = args.cap or 20_000_000
    payload: dict = {"group": name, "declared_center_order": spec.center_order}
    if spec.tableau_generators is not None:
        count = group_order_mod_center(spec, cap)
        payload["order_mod_center"] = count
        payload["order"] = group_order_full(spec, cap)
    else:
        count, scalars = group_order_and_center(spec, cap)
        payload["order_mod_center"] = count
        payload["scalar_order"] = scalars
        payload["order"] = count * scalars
    _emit(argv, "ok", payload)
    return 0


def _cmd_beyond_member(args, argv) -> int:
    bc = basis_change(args.basis)
    doc = _load_json(args.infile)
    if args.state:
        psi = vector_from_json(doc)
        ok, reason = membership_state(psi, bc)
    else:
        u = matrix_from_json(doc)
        ok, reason = membership_unitary(u, bc)
    payload = {"basis": args.basis, "state": bool(args.state)}
    if ok:
        _emit(argv, "ok", payload)
        return 0
    _emit(argv, "no", payload, reason)
    return 1


def _cmd_orbit_lattice(args, argv) -> int:
    spec = group_spec(args.group if args.n is None else f"{args.group}-{args.n}")
    if args.seed:
        seed = vector_from_json(_load_json(args.seed))
    else:
        dim = spec.generators[0].rows
        seed = FieldVector.basis_state(dim, 0, spec.conductor)
    lat = orbit_z_lattice(spec, seed, cap=args.cap or 10_000)
    _emit(argv, "ok", {"denominator": lat.denominator,
                       "rank": lat.rank,
                       "basis": [list(r) for r in lat.basis]})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bwstab",
        description="Exact recognition and synthesis of post-selected "
                    "stabilizer circuits via Barnes-Wall lattices.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check-unitary", _cmd_check_unitary,
             help="decide the stabilizer-operator conditions for a matrix")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--m", type=int, default=None)

    sp = add("check-state", _cmd_check_state,
             help="recognize a vector as a phased stabilizer state")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--m", type=int, default=None)

    sp = add("synthesize", _cmd_synthesize,
             help="synthesize the post-selected circuit form of a matrix")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--m", type=int, default=None)

    sp = add("choi", _cmd_choi, help="Choi state of a matrix")
    sp.add_argument("--in", dest="infile", required=True)

    sp = add("minvec", _cmd_minvec, help="minimal vectors of a lattice")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--certify", action="store_true")
    sp.add_argument("--cap", type=int, default=None)

    sp = add("lattice-member", _cmd_lattice_member,
             help="lattice or dual-lattice membership of a vector")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--dual", action="store_true")

    sp = add("group-order", _cmd_group_order, help="group order by BFS")
    sp.add_argument("--group", required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--cap", type=int, default=None)

    sp = add("beyond-member", _cmd_beyond_member,
             help="basis-change membership certificate")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--basis", required=True)
    sp.add_argument("--state", action="store_true")

    sp = add("orbit-lattice", _cmd_orbit_lattice,
             help="flattened Z-lattice of a group orbit")
    sp.add_argument("--group", required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--seed", default=None)
    sp.add_argument("--cap", type=int, default=None)

    p.add_argument("--format", choices=["json"], default="json")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args, argv)
    except _CAP_ERRORS as exc:
        _emit(argv, "error", None, f"resource cap: {exc}")
        return 2
    except (FormatError, FieldError, UnknownNameError, ValueError) as exc:
        _emit(argv, "error", None, str(exc))
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line interface: serialization, exit codes, and determinism."""
from __future__ import annotations

import json
import random

import pytest

from bwstab.cli import main
from bwstab.clifford import CliffordCircuit, Htilde, evaluate_circuit, random_clifford_circuit
from bwstab.cyclo import CycNum, zeta
from bwstab.linalg import FieldMatrix, FieldVector
from bwstab.serialize import (
    FormatError,
    checksum,
    circuit_from_json,
    circuit_to_json,
    matrix_from_json,
    matrix_to_json,
    vector_from_json,
    vector_to_json,
)


@pytest.mark.parametrize("k", [4, 8, 3, 5, 16])
def test_matrix_serialization_round_trip(k):
    rng = random.Random(k)
    from fractions import Fraction

    from bwstab.cyclo import euler_phi

    ents = [CycNum(k, tuple(Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3]))
                            for _ in range(euler_phi(k))))
            for _ in range(4)]
    m = FieldMatrix(2, 2, ents)
    assert matrix_from_json(matrix_to_json(m)) == m
    v = FieldVector(ents)
    assert vector_from_json(vector_to_json(v)) == v


def test_circuit_serialization_round_trip():
    rng = random.Random(0)
    c = random_clifford_circuit(3, rng, 12)
    assert circuit_from_json(circuit_to_json(c)) == c


def test_malformed_documents_name_the_field():
    with pytest.raises(FormatError, match="conductor"):
        matrix_from_json({"rows": 1, "cols": 1, "entries": [["1"]]})
    with pytest.raises(FormatError, match="entry 1"):
        matrix_from_json({"conductor": 4, "rows": 2, "cols": 1,
                          "entries": [["1", "0"], ["1"]]})
    with pytest.raises(FormatError, match="entries"):
        vector_from_json({"conductor": 4, "length": 2, "entries": []})


def test_checksum_is_stable():
    doc = {"b": 1, "a": [1, 2]}
    assert checksum(doc) == checksum({"a": [1, 2], "b": 1})


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_exit_codes_and_envelope(tmp_path, capsys):
    h = evaluate_circuit(CliffordCircuit(1, (Htilde(0),)))
    path = _write(tmp_path, "h.json", matrix_to_json(h))

    assert main(["check-unitary", "--in", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "ok"
    assert doc["command"][0] == "check-unitary"

    t = FieldMatrix(2, 2, [CycNum.one(8), CycNum.zero(8),
                           CycNum.zero(8), zeta(8)])
    tpath = _write(tmp_path, "t.json", matrix_to_json(t))
    assert main(["check-unitary", "--in", tpath]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "no" and doc["failure_reason"]

    bad = _write(tmp_path, "bad.json", {"conductor": 4, "rows": 2, "cols": 2,
                                        "entries": []})
    assert main(["check-unitary", "--in", bad]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "error"


def test_cap_exit_code(capsys):
    assert main(["group-order", "--group", "clifford", "--n", "2",
                 "--cap", "10"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "error" and "cap" in doc["failure_reason"]


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert main(["frobnicate"]) == 2


def test_determinism(tmp_path, capsys):
    h = evaluate_circuit(CliffordCircuit(1, (Htilde(0),)))
    path = _write(tmp_path, "h.json", matrix_to_json(h))
    outs = []
    for _ in range(2):
        assert main(["synthesize", "--in", path]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]

    for _ in range(2):
        assert main(["minvec", "--n", "1", "--m", "2"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[2] == outs[3]


def test_state_commands(tmp_path, capsys):
    one, zero = CycNum.one(4), CycNum.zero(4)
    bell = _write(tmp_path, "bell.json",
                  vector_to_json(FieldVector([one, zero, zero, one])))
    assert main(["check-state", "--in", bell]) == 0
    capsys.readouterr()
    assert main(["lattice-member", "--in", bell, "--m", "2", "--dual"]) == 0
    capsys.readouterr()
    two = CycNum.rational(2, 4)
    bad = _write(tmp_path, "bad.json",
                 vector_to_json(FieldVector([one, zero, zero, two])))
    assert main(["check-state", "--in", bad]) == 1
    capsys.readouterr()


def test_beyond_and_orbit_commands(tmp_path, capsys):
    from bwstab.clifford import S

    s = evaluate_circuit(CliffordCircuit(1, (S(0),)))
    path = _write(tmp_path, "s.json", matrix_to_json(s))
    assert main(["beyond-member", "--in", path, "--basis", "clifford-1"]) == 0
    capsys.readouterr()
    assert main(["beyond-member", "--in", path,
                 "--basis", "real-clifford-1"]) == 1
    capsys.readouterr()
    assert main(["orbit-lattice", "--group", "clifford", "--n", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["payload"]["rank"] == 4

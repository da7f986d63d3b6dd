"""Shared helpers and the acceptance-summary reporting hook."""
from __future__ import annotations

import random

from bwstab.clifford import CliffordCircuit, apply_circuit, random_clifford_circuit
from bwstab.cyclo import one_plus_i, zeta
from bwstab.linalg import FieldVector
from bwstab.synth import StabOpForm, reconstruct


def random_stab_form(rng: random.Random, n_in: int, n_out: int,
                     m: int) -> StabOpForm:
    """A random post-selected circuit form with a uniform inner-qubit count."""
    k = rng.randint(0, min(n_in, n_out))
    return StabOpForm(
        n_in, n_out, k, m, rng.randrange(1 << m),
        random_clifford_circuit(n_in, rng, 25),
        random_clifford_circuit(n_out, rng, 25))


def random_stab_operator(rng: random.Random, n_in: int, n_out: int, m: int):
    """(form, matrix) for a random stabilizer operator."""
    f = random_stab_form(rng, n_in, n_out, m)
    return f, reconstruct(f)


def random_stab_state(rng: random.Random, n: int, m: int,
                      length: int = 25) -> FieldVector:
    """zeta_{2^m}^j (1+i)^t C|0...0> for random j, t and circuit C."""
    c = random_clifford_circuit(n, rng, length)
    v = apply_circuit(c, FieldVector.basis_state(1 << n, 0, 4))
    k = 1 << m
    s = zeta(k, rng.randrange(k)) * one_plus_i(k) ** rng.randrange(3)
    return v.scale(s)


# ---------------------------------------------------------------------------
# Acceptance criteria summary lines


_ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    outcome = "PASS" if report.passed else "FAIL"
    _ACCEPTANCE_RESULTS.append((name, outcome, report.nodeid))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome, _ in sorted(_ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{outcome} {name}")

#!/usr/bin/env python3
"""Compare the compiled and pure-Python tableau-closure kernels.

Usage: python3 benchmarks/bench_closure.py [--n 2] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

from bwstab import kernels
from bwstab.clifford import standard_clifford_generators, tableau_closure_count


def bench(n: int, repeat: int) -> None:
    gens = standard_clifford_generators(n)
    print(f"n = {n} qubits, {len(gens)} generators "
          f"(active backend: {kernels.BACKEND})")
    for label, force in (("compiled", False), ("pure python", True)):
        if label == "compiled" and kernels.BACKEND != "compiled":
            print("  compiled    : unavailable")
            continue
        best = None
        count = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            count = tableau_closure_count(n, gens, force_python=force)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        print(f"  {label:<12}: {count:>12,} tableaus in {best:.3f} s "
              f"({count / best:,.0f}/s)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    for n in range(1, args.n + 1):
        bench(n, args.repeat)


if __name__ == "__main__":
    main()

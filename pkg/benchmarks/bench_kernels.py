#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

Runs both backends on the same inputs at realistic sizes (a year of hourly
slots for the greedy fill, dense receptor grids for the dispersion apply),
checks that they agree, and reports best-of-N wall times. This is the one
place that imports both backend modules directly instead of going through
``airtoll.kernels``.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from airtoll import _kernels_py

try:
    from airtoll import _kernels as compiled
except ImportError:
    compiled = None


def best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def greedy_case(rng: np.random.Generator, slots: int, sites: int):
    keys = rng.uniform(0.0, 100.0, (slots, sites))
    order = np.ascontiguousarray(np.argsort(keys, axis=1).astype(np.int64))
    caps = np.ascontiguousarray(rng.uniform(0.5, 3.0, sites))
    demand = np.ascontiguousarray(rng.uniform(0.0, caps.sum(), slots))
    return (order, caps, demand), f"greedy_fill {slots}x{sites}"


def apply_case(rng: np.random.Generator, receptors: int, sources: int):
    coeff = np.ascontiguousarray(rng.uniform(0.0, 0.01, (receptors, sources, 4)))
    emissions = np.ascontiguousarray(rng.uniform(0.0, 50.0, (sources, 4)))
    return (coeff, emissions), f"sr_apply {receptors}x{sources}x4"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best is kept)")
    args = parser.parse_args()

    rng = np.random.default_rng(20260819)
    cases = [
        ("greedy_fill", greedy_case(rng, 8760, 13)),
        ("greedy_fill", greedy_case(rng, 8760, 200)),
        ("sr_apply", apply_case(rng, 500, 100)),
        ("sr_apply", apply_case(rng, 3000, 300)),
    ]

    if compiled is None:
        print("compiled extension not built; timing the pure-Python backend only")
    header = f"{'case':<28} {'python':>12} {'compiled':>12} {'speedup':>9} {'max|diff|':>11}"
    print(header)
    print("-" * len(header))
    for kernel_name, (inputs, label) in cases:
        py_fn = getattr(_kernels_py, kernel_name)
        py_result = np.asarray(py_fn(*inputs))
        py_time = best_time(lambda: py_fn(*inputs), args.repeats)
        if compiled is None:
            print(f"{label:<28} {py_time * 1e3:>10.2f}ms {'-':>12} {'-':>9} {'-':>11}")
            continue
        c_fn = getattr(compiled, kernel_name)
        c_result = np.asarray(c_fn(*inputs))
        c_time = best_time(lambda: c_fn(*inputs), args.repeats)
        diff = float(np.max(np.abs(py_result - c_result)))
        print(
            f"{label:<28} {py_time * 1e3:>10.2f}ms {c_time * 1e3:>10.2f}ms "
            f"{py_time / c_time:>8.1f}x {diff:>11.3e}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

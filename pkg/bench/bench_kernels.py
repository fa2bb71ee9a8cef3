#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the same simulation workload through both implementations (identical
pre-drawn random arrays, identical results) and prints best-of-N timings.

    python3 bench/bench_kernels.py [--slots N] [--repeat R]
"""

import argparse
import time

import agejam._kernels as kernels
from agejam.scenario import scenario_from_dict
from agejam.simulate import run


def bench(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--slots", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if not kernels.USE_NUMBA:
        raise SystemExit(
            "numba path unavailable (AGEJAM_NO_NUMBA set or numba missing); "
            "nothing to compare"
        )

    scenarios = {
        "queued (M1), decoys on": scenario_from_dict({"traffic": {"q": 1.0}}),
        "just-in-time (M2)": scenario_from_dict({"traffic": {"model": "jit", "q": 1.0}}),
    }

    jit_impls = (kernels.run_m1_blocks, kernels.run_m2_blocks)
    np_impls = (kernels._m1_numpy, kernels._m2_numpy)

    print(f"workload: {args.slots:,} slots per run, best of {args.repeat}")
    for name, sc in scenarios.items():
        run(sc, n_slots=min(10_000, args.slots))  # warm the JIT cache

        t_jit = bench(lambda: run(sc, n_slots=args.slots), args.repeat)
        kernels.run_m1_blocks, kernels.run_m2_blocks = np_impls
        try:
            t_np = bench(lambda: run(sc, n_slots=args.slots), args.repeat)
        finally:
            kernels.run_m1_blocks, kernels.run_m2_blocks = jit_impls

        print(f"{name}")
        print(f"  numba kernel : {t_jit * 1e3:9.1f} ms")
        print(f"  numpy kernel : {t_np * 1e3:9.1f} ms")
        print(f"  speedup      : x{t_np / t_jit:.2f}")


if __name__ == "__main__":
    main()

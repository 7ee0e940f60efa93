#!/usr/bin/env python3
"""Benchmark the sieve kernels on both backends.

Runs the prime mask, the largest-factor table, and the (possibly
segmented) prime list on a ladder of limits, once per backend, and prints
a timing table plus the numba/numpy speedup. Backend selection happens per
call through SMOOTHBOUND_BACKEND; the first numba call is warmed
separately so JIT compilation does not pollute the numbers.

Usage: python benchmarks/bench_kernels.py [--limits 1e6,3e6,1e7] [--repeat 3]
"""

import argparse
import os
import time

import numpy as np

from smoothbound import _kernels


def timed(backend, repeat, fn, *args):
    os.environ["SMOOTHBOUND_BACKEND"] = backend
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--limits", default="1e6,3e6,1e7")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    limits = [int(float(x)) for x in args.limits.split(",")]

    backends = ["numpy"]
    if _kernels.HAS_NUMBA:
        backends.append("numba")
        os.environ["SMOOTHBOUND_BACKEND"] = "numba"
        _kernels.prime_mask(1000)            # warm the JIT cache
        _kernels.largest_factor_table(1000)
        _kernels.primes_up_to(1000)
    else:
        print("numba unavailable: timing the numpy path only")

    jobs = [("prime_mask", _kernels.prime_mask),
            ("largest_factor_table", _kernels.largest_factor_table),
            ("primes_up_to", _kernels.primes_up_to)]

    print(f"{'kernel':<22}{'limit':>12}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, fn in jobs:
        for limit in limits:
            line = f"{name:<22}{limit:>12,d}"
            times, results = {}, {}
            for backend in backends:
                times[backend], results[backend] = timed(backend, args.repeat,
                                                         fn, limit)
            if len(results) == 2:
                assert np.array_equal(results["numpy"], results["numba"]), \
                    f"backend mismatch in {name} at {limit}"
            for backend in ("numpy", "numba"):
                line += f"{times[backend]:>12.4f}" if backend in times else f"{'-':>12}"
            if len(times) == 2 and times["numba"] > 0:
                line += f"{times['numpy'] / times['numba']:>10.2f}"
            print(line)


if __name__ == "__main__":
    main()

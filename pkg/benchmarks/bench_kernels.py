#!/usr/bin/env python3
"""Benchmark the JIT vs pure-numpy landscape kernels.

Usage:
    python benchmarks/bench_kernels.py [--points N] [--repeats R]

Times the qubit and qutrit ergotropy grid fills on an N x N grid through
both code paths and prints per-fill timings plus the speed ratio. The JIT
path is warmed up first so compilation time is reported separately.
"""

import argparse
import time

import numpy as np

from gadengine import _kernels


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=1201, help="grid points per axis")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats (best-of)")
    args = parser.parse_args()

    n = args.points
    f_axis = np.linspace(0.0, 1.0, n)
    t_axis = np.linspace(0.0, 1.28, n)
    lam = -np.expm1(-1.0 * t_axis)
    lam1 = -np.expm1(-1.0 * t_axis)
    lam2 = -np.expm1(-0.25 * t_axis)

    cases = {
        "qubit": (
            lambda: _kernels.qubit_fill_numpy(1.0, 0.0, f_axis, lam, -0.5, 0.5),
            lambda: _kernels.qubit_fill_numba(1.0, 0.0, f_axis, lam, -0.5, 0.5),
        ),
        "qutrit": (
            lambda: _kernels.qutrit_fill_numpy(1.0, 0.0, 0.0, f_axis, lam1, lam2, 0.0, 1.0, 2.0),
            lambda: _kernels.qutrit_fill_numba(1.0, 0.0, 0.0, f_axis, lam1, lam2, 0.0, 1.0, 2.0),
        ),
    }

    print(f"grid {n} x {n} ({n * n} cells), best of {args.repeats}")
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable: timing the numpy path only")

    for name, (numpy_fn, numba_fn) in cases.items():
        t_numpy = best_of(numpy_fn, args.repeats)
        line = f"{name:>7}: numpy {t_numpy * 1e3:8.2f} ms"
        if _kernels.HAVE_NUMBA:
            warm_start = time.perf_counter()
            jit_result = numba_fn()
            warmup = time.perf_counter() - warm_start
            t_numba = best_of(numba_fn, args.repeats)
            match = np.array_equal(jit_result, numpy_fn())
            line += (
                f" | numba {t_numba * 1e3:8.2f} ms"
                f" | ratio {t_numpy / t_numba:5.2f}x"
                f" | first call {warmup * 1e3:7.1f} ms"
                f" | identical={match}"
            )
        print(line)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Compare the compiled and pure-Python elimination kernels.

Micro-benchmarks time rref / rank / matmul on random matrices over a few
fields; the macro benchmark runs an all-pairs flag-distance sweep through
whichever backend the library selected at import.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from flagcodes import _kernel_py
from flagcodes._backend import backend_name
from flagcodes.gf import PrimePowerField

try:
    from flagcodes import _kernel
except ImportError:
    _kernel = None


def kernel_args(field):
    return field.p, field.m, field.q, field.exp, field.log


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_micro(repeat):
    rng = np.random.default_rng(0)
    cases = []
    for p, m in [(2, 1), (3, 1), (2, 2)]:
        field = PrimePowerField(p, m)
        for rows, cols in [(6, 12), (16, 32), (32, 64)]:
            mats = [rng.integers(0, field.q, size=(rows, cols), dtype=np.int64)
                    for _ in range(400)]
            cases.append((field, rows, cols, mats))

    print(f"{'op':<8}{'field':<8}{'shape':<10}{'python':>12}{'compiled':>12}{'speedup':>9}")
    for field, rows, cols, mats in cases:
        args = kernel_args(field)

        def run(kernel):
            def inner():
                for m in mats:
                    kernel.rref(m.copy(), *args)
            return inner

        t_py = time_call(run(_kernel_py), repeat)
        line = f"{'rref':<8}GF({field.q}){'':<2}{rows}x{cols:<6}{t_py * 1e3:>10.2f}ms"
        if _kernel is not None:
            t_c = time_call(run(_kernel), repeat)
            line += f"{t_c * 1e3:>10.2f}ms{t_py / t_c:>8.1f}x"
        print(line)

    field = PrimePowerField(2, 1)
    args = kernel_args(field)
    a = rng.integers(0, 2, size=(32, 32), dtype=np.int64)
    b = rng.integers(0, 2, size=(32, 32), dtype=np.int64)

    def run_matmul(kernel):
        def inner():
            out = np.zeros((32, 32), dtype=np.int64)
            for _ in range(200):
                out[:] = 0
                kernel.matmul(a, b, out, *args)
        return inner

    t_py = time_call(run_matmul(_kernel_py), repeat)
    line = f"{'matmul':<8}GF(2){'':<3}32x32{'':<3}{t_py * 1e3:>10.2f}ms"
    if _kernel is not None:
        t_c = time_call(run_matmul(_kernel), repeat)
        line += f"{t_c * 1e3:>10.2f}ms{t_py / t_c:>8.1f}x"
    print(line)


def bench_macro(repeat):
    from flagcodes.codes import full_flag_code_from_spread
    from flagcodes.flags import flag_distance
    from flagcodes.spreads import build_spread

    field = PrimePowerField(3, 1)
    code = full_flag_code_from_spread(build_spread(field, 2, 4))

    def sweep():
        flags = code.flags
        return min(flag_distance(a, b)
                   for i, a in enumerate(flags) for b in flags[i + 1:])

    t = time_call(sweep, repeat)
    print(f"\nall-pairs flag distances, 10 flags over GF(3)^4 "
          f"[{backend_name()} backend]: {t * 1e3:.2f}ms")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions (best-of)")
    args = parser.parse_args()
    if _kernel is None:
        print("compiled kernel not available; timing the pure-Python kernel only")
    bench_micro(args.repeat)
    bench_macro(args.repeat)


if __name__ == "__main__":
    main()

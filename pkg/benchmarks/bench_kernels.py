#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs the two hot paths (Monte Carlo correlation sampling, exact-density grid
evaluation) under each available backend and prints a timing table.
"""

import time

import numpy as np

from edgeworth_lab import _kernels_py

try:
    from edgeworth_lab import _kernels
except ImportError:
    _kernels = None

REPEATS = 3


def time_best(fn, *args):
    best = float("inf")
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_mc(backend, n=200, rho=0.5, count=200_000):
    return time_best(
        lambda: backend.mc_r_batch(np.random.PCG64(np.random.SeedSequence(0)), n, rho, count)
    )


def bench_hyp2f1(backend, n=35, rho=-0.85, points=4001):
    xs = 0.5 * (1.0 + rho * np.linspace(-1 + 1e-6, 1 - 1e-6, points))
    return time_best(lambda: backend.hyp2f1_grid(0.5, 0.5, n - 0.5, xs, 1e-14, 100_000))


def main():
    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))
    else:
        print("compiled kernels not built; benchmarking the python backend only")

    rows = []
    for label, backend in backends:
        rows.append(
            (
                label,
                bench_mc(backend),
                bench_hyp2f1(backend),
            )
        )

    print(f"{'backend':10s} {'mc 2e5x200 (s)':>16s} {'2f1 grid 4001 (s)':>18s}")
    for label, t_mc, t_hyp in rows:
        print(f"{label:10s} {t_mc:16.3f} {t_hyp:18.3f}")
    if len(rows) == 2:
        print(
            f"{'speedup':10s} {rows[0][1] / rows[1][1]:15.2f}x {rows[0][2] / rows[1][2]:17.2f}x"
        )


if __name__ == "__main__":
    main()

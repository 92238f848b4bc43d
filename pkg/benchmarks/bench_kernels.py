#!/usr/bin/env python3
"""Benchmark the compiled kernel against the numpy fallback.

Runs the three hot kernels on representative workloads and prints one table.
Usage: python benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lastsuccess import _fallback

try:
    from lastsuccess import _core
except ImportError:
    _core = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def row(label, fb_time, core_time):
    speedup = "" if core_time is None else f"{fb_time / core_time:6.1f}x"
    core_str = "   (not built)" if core_time is None else f"{core_time * 1e3:10.1f} ms"
    print(f"{label:<38} {fb_time * 1e3:10.1f} ms {core_str} {speedup}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    scale = 4 if args.quick else 1
    n_single = 10_000 // scale
    n_grid, grid_pts = 1_000 // scale, 2_000 // scale
    mc_rows, mc_n = 200_000 // scale, 31

    rng = np.random.default_rng(0)
    grid = np.linspace(0.05, 0.95, grid_pts)
    paths = (rng.random((mc_rows, mc_n)) < 0.3).astype(np.uint8)

    print(f"{'kernel':<38} {'numpy':>13} {'compiled':>14} speedup")

    cases = [
        (f"dp_win_prob(n={n_single}, p=0.01)", "dp_win_prob", (n_single, 0.01)),
        (f"dp_win_prob_grid(n={n_grid}, {grid_pts} pts)", "dp_win_prob_grid", (n_grid, grid)),
        (f"plugin_stop_times({mc_rows}x{mc_n})", "plugin_stop_times", (paths,)),
    ]
    for label, name, fnargs in cases:
        fb_time, fb_res = timeit(getattr(_fallback, name), *fnargs)
        if _core is None:
            row(label, fb_time, None)
            continue
        core_time, core_res = timeit(getattr(_core, name), *fnargs)
        row(label, fb_time, core_time)
        if name == "plugin_stop_times":
            assert np.array_equal(np.asarray(fb_res), np.asarray(core_res))
        else:
            assert np.allclose(np.asarray(fb_res), np.asarray(core_res), atol=1e-13)
    print("\nbackends agree on all outputs")


if __name__ == "__main__":
    main()

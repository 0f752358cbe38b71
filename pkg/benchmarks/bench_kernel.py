#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Times the two operations that dominate sweeps: monodromy-only one-period
integration and grid-sampled integration (trajectory for the Fourier step),
plus a full sweep row (monodromy + mode + steady state).

Usage: python benchmarks/bench_kernel.py [--points 200] [--grid 1024]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from quasitherm import (BathModel, PowerLawDensity, SpringParams, solve_mode,
                        steady_state)
from quasitherm import kernel


def time_op(func, repeats: int) -> float:
    t0 = time.perf_counter()
    for _ in range(repeats):
        func()
    return (time.perf_counter() - t0) / repeats


def bench_backend(name: str, points: int, n_grid: int) -> dict[str, float]:
    kernel.use(name)
    qs = np.linspace(0.5, 6.0, points)
    bath = BathModel(beta=1.0, density=PowerLawDensity(s=1.0))

    def monodromies():
        for q in qs:
            kernel.hill_basis(8.0, float(q), 1e-12, 1e-12, 0)

    def grids():
        for q in qs[:: max(1, points // 20)]:
            kernel.hill_basis(8.0, float(q), 1e-12, 1e-12, n_grid)

    def row():
        _, _, mode = solve_mode(SpringParams(8.0, 3.0), n_samples=n_grid)
        steady_state(mode, bath, 8.0)

    n_grid_calls = len(qs[:: max(1, points // 20)])
    return {
        "monodromy": time_op(monodromies, 1) / points,
        "grid": time_op(grids, 1) / n_grid_calls,
        "sweep_row": time_op(row, 5),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=200)
    parser.add_argument("--grid", type=int, default=1024)
    args = parser.parse_args()

    results = {}
    for name in kernel.available():
        results[name] = bench_backend(name, args.points, args.grid)

    ops = ("monodromy", "grid", "sweep_row")
    print(f"{'op':<12}" + "".join(f"{name:>14}" for name in results)
          + ("      speedup" if len(results) == 2 else ""))
    for op in ops:
        line = f"{op:<12}"
        for name in results:
            line += f"{results[name][op] * 1e3:>12.3f}ms"
        if len(results) == 2:
            slow, fast = (results["python"][op], results["compiled"][op]) \
                if "compiled" in results else (1.0, 1.0)
            line += f"{slow / fast:>12.1f}x"
        print(line)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-NumPy kernels.

Runs the summation kernels that dominate profile / scan / quadrature
workloads on both backends, reports wall times and agreement, exits
nonzero if results disagree beyond a few hundred ulps.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from zetacurves import _kernels


def timed(fn, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def compare(name, a, b):
    diff = 0.0
    for x, y in zip(a, b):
        if x is None:
            continue
        diff = max(diff, float(np.max(np.abs(x - y))))
    print(f"    max |cython - python| = {diff:.3e}")
    return diff


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller grids")
    args = ap.parse_args()

    scale = 0.2 if args.quick else 1.0
    cases = [
        ("profile grid: jets (derivs) K=%d N=%d" ,
         dict(kind="uniform", t0=2.76, dt=0.01, K=int(4000 * scale) + 64,
              N=128, derivs=True)),
        ("scan grid: values only K=%d N=%d",
         dict(kind="uniform", t0=1.0, dt=0.05, K=int(200_000 * scale) + 64,
              N=768, derivs=False)),
        ("quadrature batch: scattered jets K=%d N=%d",
         dict(kind="scattered", K=int(20_000 * scale) + 64, N=1536, derivs=True)),
    ]

    failures = 0
    for label, c in cases:
        print(label % (c["K"], c["N"]))
        if c["kind"] == "uniform":
            run = lambda backend: _kernels.jets_uniform(
                0.75, c["t0"], c["dt"], c["K"], c["N"], 8,
                want_derivs=c["derivs"], backend=backend)
        else:
            ts = np.linspace(5.0, 500.0, c["K"])
            run = lambda backend: _kernels.jets_scattered(
                0.75, ts, c["N"], 8, want_derivs=c["derivs"], backend=backend)
        try:
            out_cy, t_cy = timed(lambda: run("cython"))
        except ImportError:
            print("    compiled backend not built; skipping")
            continue
        out_py, t_py = timed(lambda: run("python"))
        print(f"    cython: {t_cy * 1e3:9.1f} ms    python: {t_py * 1e3:9.1f} ms"
              f"    speedup x{t_py / t_cy:.1f}")
        if compare(label, out_cy, out_py) > 1e-10:
            failures += 1
    print(f"active backend: {_kernels.BACKEND}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())

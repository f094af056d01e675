#!/usr/bin/env python3
"""Benchmark the compiled integration kernels against the pure-Python twin.

Workloads mirror the toolkit's hot paths: plain trajectory integration,
Poincare return maps, variational (monodromy) propagation, and a full
limit-cycle census at a two-cycle parameter point.

Usage: python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from gskit import dynamics, kernels
from gskit.core import Params
from gskit.equilibria import equilibria, hopf_F


def _timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workload_trajectory():
    kernels.integrate(0, 0.9, 0.1, 0.05, 0.02, 5000.0, 1e-10, 1e-13, 0.0,
                      10**8, 1.0, True, False)


def workload_return_maps():
    k = 0.034
    F = float(hopf_F(k)) - 2e-6
    a = Params(k, F)
    frame = dynamics.section_frame(a)
    for r in (0.005, 0.01, 0.02, 0.03):
        dynamics.return_map(a, r, frame)


def workload_monodromy():
    a = Params(0.034, float(hopf_F(0.034)) - 2e-6)
    eq = equilibria(a)
    kernels.monodromy(float(eq.p_mp.u) + 0.02, float(eq.p_mp.v), float(a.k),
                      float(a.F), 400.0, 1e-11, 1e-14, 0.0)


def workload_census():
    a = Params(0.034, float(hopf_F(0.034)) - 2e-6)
    dynamics.limit_cycle_census(a, n_scan=120)


WORKLOADS = [
    ("trajectory t=5000", workload_trajectory),
    ("4 return maps", workload_return_maps),
    ("monodromy t=400", workload_monodromy),
    ("two-cycle census", workload_census),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled kernels unavailable; benchmarking pure only")
    rows = []
    for name, fn in WORKLOADS:
        times = {}
        for b in backends:
            kernels.use_backend(b)
            times[b] = _timeit(fn, args.repeat)
        kernels.use_backend(backends[0])
        rows.append((name, times))
    width = max(len(n) for n, _ in rows)
    header = f"{'workload':<{width}}  " + "  ".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for name, times in rows:
        line = f"{name:<{width}}  " + "  ".join(
            f"{times[b]*1e3:>10.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"  {times['pure']/times['compiled']:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()

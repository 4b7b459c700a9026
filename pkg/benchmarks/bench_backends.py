#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twin.

Usage: python3 benchmarks/bench_backends.py [--quick]

Times the three hot kernels on seeded workloads and prints a table with
the speedup.  The workloads mirror what the acceptance suite leans on:
certificate search over all vertex orders, exact coloring, and repeated
negative-cycle extraction.
"""

from __future__ import annotations

import argparse
import random
import time

from digrev import _kernels_py


def make_instances(seed: int, count: int, n_lo: int, n_hi: int, m_factor: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        m = rng.randint(n, m_factor * n)
        tails, heads = [], []
        for _ in range(m):
            t = rng.randrange(n)
            h = rng.randrange(n - 1)
            if h >= t:
                h += 1
            tails.append(t)
            heads.append(h)
        out.append((n, tails, heads))
    return out


def bench(label, fn, runs=1):
    best = min(_timed(fn) for _ in range(runs))
    print(f"  {label:<22} {best:8.3f}s")
    return best


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def workload_search_order(kernels, instances):
    def run():
        for n, tails, heads in instances:
            for k in (1, 2):
                kernels.search_order(n, tails, heads, k)

    return run


def workload_chi(kernels, instances):
    masks_list = []
    for n, tails, heads in instances:
        masks = [0] * n
        for t, h in zip(tails, heads):
            masks[t] |= 1 << h
        masks_list.append((n, masks))

    def run():
        for n, masks in masks_list:
            kernels.solve_chi(n, masks)

    return run


def workload_negative_cycle(kernels, instances, reps=40):
    def run():
        for n, tails, heads in instances:
            weights = [1 if (t + h) % 3 else -1 for t, h in zip(tails, heads)]
            for _ in range(reps):
                kernels.find_negative_cycle(n, tails, heads, weights)

    return run


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    try:
        from digrev import _kernels_cy
    except ImportError:
        print("compiled kernels are not built; run pip install -e . --no-build-isolation first")
        return 1

    scale = 1 if args.quick else 3
    search_instances = make_instances(seed=1, count=4 * scale, n_lo=7, n_hi=7, m_factor=3)
    chi_instances = make_instances(seed=2, count=60 * scale, n_lo=9, n_hi=12, m_factor=3)
    bf_instances = make_instances(seed=3, count=40 * scale, n_lo=8, n_hi=12, m_factor=3)

    results = {}
    for name, build, payload in (
        ("search_order", workload_search_order, search_instances),
        ("solve_chi", workload_chi, chi_instances),
        ("find_negative_cycle", workload_negative_cycle, bf_instances),
    ):
        print(f"{name}:")
        t_py = bench("python", build(_kernels_py, payload))
        t_cy = bench("compiled", build(_kernels_cy, payload))
        results[name] = (t_py, t_cy)

    print()
    print(f"{'kernel':<22}{'python':>10}{'compiled':>10}{'speedup':>10}")
    for name, (t_py, t_cy) in results.items():
        print(f"{name:<22}{t_py:>9.3f}s{t_cy:>9.3f}s{t_py / max(t_cy, 1e-9):>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

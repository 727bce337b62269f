"""Benchmark the pure-Python kernels against the compiled extension.

Run as: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

import bmx._kernels as py_kernels
from bmx.matroid import bb, pg
from bmx.morphism import _schedule_cached

try:
    import bmx._kernels_c as c_kernels
except ImportError:
    c_kernels = None


def _time(fn, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_canon(mod):
    random.seed(11)
    masks = [random.getrandbits(63) for _ in range(40)]

    def run():
        for m in masks:
            mod.canon_mask(6, m)

    return run


def bench_images(mod):
    sched = _schedule_cached(4, pg(4).mask)
    host_pts = list(range(1, 32))
    checks = [list(c) for c in sched.checks]
    coeffs = list(sched.all_coeffs)

    def run():
        mod.all_embedding_images(host_pts, (1 << 31) - 1, 4, checks, coeffs)

    return run


def bench_cover(mod):
    pts = bb(6, 3).sorted_points()

    def run():
        for depth in (1, 2, 3):
            mod.cover_exists(6, pts, depth)

    return run


def main() -> None:
    cases = [
        ("canon_mask, 40 random dim-6 masks", bench_canon),
        ("all pg(4) copies in dim 5", bench_images),
        ("cover search for chi(bb(6,3))", bench_cover),
    ]
    print(f"{'case':40} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for label, make in cases:
        tp = _time(make(py_kernels))
        if c_kernels is None:
            print(f"{label:40} {tp:9.3f}s {'n/a':>10} {'':>8}")
            continue
        tc = _time(make(c_kernels))
        print(f"{label:40} {tp:9.3f}s {tc:9.3f}s {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()

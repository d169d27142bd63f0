"""Compare the compiled and pure-Python rank-counting kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ribbonseries import kernels
from ribbonseries.determinantal import bn_space
from ribbonseries.loci import _kernel_arrays

CASES = [
    ("global W^1_4, g=5, F_3", 5, 2, 3, 1),
    ("global W^1_4, g=5, F_5", 5, 2, 5, 1),
    ("global W^1_6, g=7, F_2", 7, 3, 2, 2),
]


def best_of(fn, repeat: int) -> tuple[float, int]:
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.BACKEND != "cython":
        print("compiled extension not available; only the pure-Python kernel can run")
    print(f"{'case':<28} {'points':>8} {'count':>7} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for label, g, n, p, bound in CASES:
        space = bn_space(g, n)
        T, c = _kernel_arrays(space, p)
        total = p ** space.nvars
        slow_t, slow = best_of(lambda: kernels.python_backend.count_rank_le(T, c, space.rows, space.cols, p, bound, 0, total), 1)
        if kernels.BACKEND == "cython":
            fast_t, fast = best_of(lambda: kernels.count_rank_le(T, c, space.rows, space.cols, p, bound, 0, total), args.repeat)
            assert fast == slow
            print(f"{label:<28} {total:>8} {fast:>7} {fast_t:>11.4f} {slow_t:>10.3f} {slow_t / fast_t:>7.0f}x")
        else:
            print(f"{label:<28} {total:>8} {slow:>7} {'-':>11} {slow_t:>10.3f} {'-':>8}")
    rng = np.random.default_rng(0)
    space = bn_space(5, 2)
    T, c = _kernel_arrays(space, 7)
    pts = rng.integers(0, 7, size=(100_000, space.nvars), dtype=np.int64)
    slow_t, slow = best_of(lambda: kernels.python_backend.count_rank_le_points(T, c, 3, 3, 7, 1, pts), 1)
    if kernels.BACKEND == "cython":
        fast_t, fast = best_of(lambda: kernels.count_rank_le_points(T, c, 3, 3, 7, 1, pts), args.repeat)
        assert fast == slow
        print(f"{'sampled points, F_7':<28} {len(pts):>8} {fast:>7} {fast_t:>11.4f} {slow_t:>10.3f} {slow_t / fast_t:>7.0f}x")


if __name__ == "__main__":
    main()

"""Benchmark the two hot kernels: numba-compiled vs pure-Python fallback.

Run with `python3 benchmarks/bench_kernels.py`.  Set MAGHOM_NO_NUMBA=1 to
confirm the fallback path is what the library would use without numba.
"""
from __future__ import annotations

import time

import numpy as np

from maghom.graphs import all_pairs_distances
from maghom.kernels import (HAS_NUMBA, rank_mod_p_dense,
                            rank_mod_p_dense_fallback, simple_paths,
                            simple_paths_fallback)
from maghom.randmodels import ErParams, sample_er

PRIME = 2147483629


def timeit(fn, *args, repeat: int = 5) -> tuple[float, object]:
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_simple_paths() -> None:
    print("simple_paths (ordered simple paths on k+1 vertices)")
    for n, p, k in [(20, 0.4, 3), (30, 0.3, 3), (25, 0.4, 4)]:
        G = sample_er(ErParams(n=n, p=p, seed=1))
        fast_t, fast = timeit(simple_paths, G.adj, k)
        slow_t, slow = timeit(simple_paths_fallback, G.adj, k)
        assert np.array_equal(fast, slow)
        speedup = slow_t / fast_t if fast_t > 0 else float("inf")
        print(f"  n={n:3d} p={p} k={k}: {len(fast):8d} paths  "
              f"accel {fast_t * 1e3:8.2f} ms  fallback {slow_t * 1e3:8.2f} ms"
              f"  speedup {speedup:6.1f}x")


def bench_rank() -> None:
    print("rank_mod_p_dense (integer rank modulo a fixed prime)")
    rng = np.random.default_rng(2)
    for rows, cols in [(200, 400), (400, 800), (600, 600)]:
        mat = rng.integers(-3, 4, size=(rows, cols)).astype(np.int64)
        fast_t, fast = timeit(rank_mod_p_dense, mat, PRIME)
        slow_t, slow = timeit(rank_mod_p_dense_fallback, mat, PRIME,
                              repeat=2)
        assert fast == slow
        speedup = slow_t / fast_t if fast_t > 0 else float("inf")
        print(f"  {rows:4d}x{cols:<4d}: rank {fast:4d}  "
              f"accel {fast_t * 1e3:8.2f} ms  fallback {slow_t * 1e3:8.2f} ms"
              f"  speedup {speedup:6.1f}x")


if __name__ == "__main__":
    print(f"numba active: {HAS_NUMBA}")
    # warm the jit before timing
    G = sample_er(ErParams(n=8, p=0.5, seed=0))
    simple_paths(G.adj, 2)
    rank_mod_p_dense(np.eye(4, dtype=np.int64), PRIME)
    bench_simple_paths()
    bench_rank()

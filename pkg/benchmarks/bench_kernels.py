"""Time the compiled kernels against the numpy fallback, plus the pipeline.

    python benchmarks/bench_kernels.py [--repeat N]

Compiled timings exclude the first (JIT) call.
"""
import argparse
import time

import numpy as np

from antimagic import kernels
from antimagic.generators import random_min_degree
from antimagic.pipeline import label_graph


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)

    g = random_min_degree(40, 40, 15, 0.3, seed=0)
    eu, ev = g.endpoint_arrays()
    perms = np.array([rng.permutation(g.m) + 1 for _ in range(2000)], dtype=np.int64)
    rows = [
        ("vertex_sums", lambda: kernels._vertex_sums_nb(g.n, eu, ev, perms[0]),
         lambda: kernels._vertex_sums_py(g.n, eu, ev, perms[0])),
        ("batch_distinct x2000", lambda: kernels._batch_distinct_nb(g.n, eu, ev, perms),
         lambda: kernels._batch_distinct_py(g.n, eu, ev, perms)),
    ]
    print(f"graph: n={g.n} m={g.m}; numba active: {kernels.use_numba()}")
    print(f"{'kernel':24s} {'compiled':>12s} {'fallback':>12s}")
    for name, fast, slow in rows:
        print(f"{name:24s} {best_of(fast, args.repeat) * 1e3:10.3f}ms {best_of(slow, args.repeat) * 1e3:10.3f}ms")

    times = []
    for i in range(20):
        h = random_min_degree(int(rng.integers(15, 41)), int(rng.integers(15, 41)), 15, 0.1, seed=i)
        t = time.perf_counter()
        label_graph(h, seed=i)
        times.append(time.perf_counter() - t)
    print(f"label_graph on 20 random graphs: median {np.median(times) * 1e3:.1f}ms, max {max(times) * 1e3:.1f}ms")


if __name__ == "__main__":
    main()

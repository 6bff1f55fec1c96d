#!/usr/bin/env python3
"""Benchmark: compiled kernels vs pure-Python fallback.

Times the hot kernels (k-NN row selection, BFS distance sums, shortest-path
dependency accumulation, triangle counting, girth search) on synthetic inputs
and reports the speedup. Outputs of both backends are asserted equal first.

Usage: python benchmarks/bench_kernels.py [--scale small|default]
"""
import argparse
import time

import numpy as np

from kgcx._kernels import HAVE_NATIVE, pyfallback

if HAVE_NATIVE:
    from kgcx._kernels import _ckern


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def random_csr(rng, n, m):
    edges = set()
    while len(edges) < m:
        u, v = rng.integers(0, n, size=2)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    edges = sorted(edges)
    src = np.array([e[0] for e in edges] + [e[1] for e in edges], dtype=np.int64)
    dst = np.array([e[1] for e in edges] + [e[0] for e in edges], dtype=np.int64)
    eid = np.concatenate([np.arange(len(edges), dtype=np.int64)] * 2)
    order = np.lexsort((dst, src))
    src, dst, eid = src[order], dst[order], eid[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst.astype(np.int32), eid, len(edges)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", choices=["small", "default"], default="default")
    args = ap.parse_args()
    small = args.scale == "small"
    rng = np.random.default_rng(0)

    if not HAVE_NATIVE:
        print("compiled kernels unavailable: timing the Python fallback only")

    rows = []

    # k-NN row selection
    q, n, k = (64, 1200, 20) if small else (256, 6000, 50)
    dist = np.ascontiguousarray(rng.standard_normal((q, n)) ** 2)
    out_a = np.empty((q, k), dtype=np.int64)
    out_b = np.empty((q, k), dtype=np.int64)
    t_py = timeit(lambda: pyfallback.topk_rows(dist, k, out_b))
    if HAVE_NATIVE:
        t_c = timeit(lambda: _ckern.topk_rows(dist, k, out_a))
        assert np.array_equal(out_a, out_b)
    else:
        t_c = None
    rows.append((f"topk_rows {q}x{n} k={k}", t_py, t_c))

    # BFS distance sums + Brandes + triangles + girth on one random graph
    gn, gm = (800, 3200) if small else (3000, 15000)
    indptr, indices, eid, m = random_csr(rng, gn, gm)
    sources = np.arange(min(gn, 400), dtype=np.int64)

    s_a = np.zeros(len(sources), dtype=np.int64)
    r_a = np.zeros(len(sources), dtype=np.int32)
    s_b = np.zeros(len(sources), dtype=np.int64)
    r_b = np.zeros(len(sources), dtype=np.int32)
    t_py = timeit(lambda: pyfallback.bfs_distances(indptr, indices, sources, s_b, r_b), repeat=1)
    if HAVE_NATIVE:
        t_c = timeit(lambda: _ckern.bfs_distances(indptr, indices, sources, s_a, r_a))
        assert np.array_equal(s_a, s_b) and np.array_equal(r_a, r_b)
    else:
        t_c = None
    rows.append((f"bfs_distances {len(sources)} sources, n={gn} m={m}", t_py, t_c))

    na, ea = np.zeros(gn), np.zeros(m)
    nb, eb = np.zeros(gn), np.zeros(m)
    t_py = timeit(lambda: pyfallback.brandes_accumulate(indptr, indices, eid, sources, nb, eb),
                  repeat=1)
    if HAVE_NATIVE:
        t_c = timeit(lambda: _ckern.brandes_accumulate(indptr, indices, eid, sources, na, ea))
    else:
        t_c = None
    rows.append((f"brandes {len(sources)} sources, n={gn} m={m}", t_py, t_c))

    tri_a = np.zeros(gn, dtype=np.int64)
    tri_b = np.zeros(gn, dtype=np.int64)
    t_py = timeit(lambda: pyfallback.count_triangles(indptr, indices, tri_b), repeat=1)
    if HAVE_NATIVE:
        t_c = timeit(lambda: _ckern.count_triangles(indptr, indices, tri_a))
        assert np.array_equal(tri_a, tri_b)
    else:
        t_c = None
    rows.append((f"count_triangles n={gn} m={m}", t_py, t_c))

    t_py = timeit(lambda: pyfallback.girth_simple(indptr, indices), repeat=1)
    if HAVE_NATIVE:
        t_c = timeit(lambda: _ckern.girth_simple(indptr, indices))
        assert _ckern.girth_simple(indptr, indices) == pyfallback.girth_simple(indptr, indices)
    else:
        t_c = None
    rows.append((f"girth n={gn} m={m}", t_py, t_c))

    width = max(len(r[0]) for r in rows)
    print(f"\n{'kernel':<{width}}  {'python':>10}  {'native':>10}  {'speedup':>8}")
    for name, t_py, t_c in rows:
        if t_c is None:
            print(f"{name:<{width}}  {t_py:>9.4f}s  {'-':>10}  {'-':>8}")
        else:
            print(f"{name:<{width}}  {t_py:>9.4f}s  {t_c:>9.4f}s  {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()

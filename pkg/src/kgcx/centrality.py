"""Centrality measures on the canonical graph views.

All shortest-path work runs through the kernel backend and parallelizes over
source nodes in fixed-size chunks merged in chunk order, so results are
bit-identical for any worker count.

Definitions (also recorded per run in the structural profile's method notes):

* degree centrality: deg(v) / (|V| - 1).
* closeness: within each node's connected component, scaled by the
  Wasserman-Faust factor (r - 1) / (|V| - 1) where r is the component size,
  so values are comparable across components of a disconnected graph.
* betweenness (node): fraction of shortest paths through v over all
  unordered source/target pairs excluding v; normalized by (n-1)(n-2)/2.
  Exact up to ``exact_cutoff`` nodes, otherwise estimated from a seeded
  sample of pivot sources scaled by n / pivots.
* betweenness (edge): same but over pairs n(n-1)/2.
* eigenvector centrality: Perron vector of the largest component's adjacency
  matrix via power iteration on A + I (the shift guarantees geometric
  convergence on bipartite-like components and leaves the eigenvector
  unchanged); L2-normalized, zero off-component.
* PageRank: on the directed multigraph view with damping 0.85, uniform
  teleport, dangling mass redistributed uniformly; L1 tolerance 1e-10.
"""
from __future__ import annotations

import numpy as np

from ._kernels import bfs_distances, brandes_accumulate
from .dataset import DirectedView, SimpleGraph
from .errors import ConvergenceError
from .eigen import power_iteration
from .seeds import subseed
from .util import chunk_ranges, ordered_parallel, resolve_threads

SOURCE_CHUNK = 64


def degree_centrality(g: SimpleGraph) -> np.ndarray:
    if g.n <= 1:
        return np.zeros(g.n)
    return g.degrees / float(g.n - 1)


def closeness_centrality(g: SimpleGraph, threads=None) -> np.ndarray:
    """Wasserman-Faust closeness for every node (0 for isolated nodes)."""
    n = g.n
    if n == 0:
        return np.zeros(0)
    indptr, indices, _ = g.csr
    nthreads = resolve_threads(threads)
    sums = np.zeros(n, dtype=np.int64)
    reached = np.zeros(n, dtype=np.int32)

    def run(block):
        lo, hi = block
        srcs = np.arange(lo, hi, dtype=np.int64)
        bfs_distances(indptr, indices, srcs, sums[lo:hi], reached[lo:hi])

    ordered_parallel(run, chunk_ranges(n, SOURCE_CHUNK), nthreads)
    close = np.zeros(n)
    mask = (reached > 1) & (sums > 0)
    r = reached[mask].astype(np.float64)
    if n > 1:
        close[mask] = ((r - 1.0) / (n - 1.0)) * ((r - 1.0) / sums[mask])
    return close


def betweenness(g: SimpleGraph, seed: int = 42, threads=None,
                exact_cutoff: int = 20000, max_pivots: int = 5000):
    """Node and edge betweenness, exact or pivot-sampled.

    Returns ``(node_values, edge_values, notes)``; the notes record whether
    the run was exact and, when sampled, the pivot count and seed.
    """
    n = g.n
    indptr, indices, edge_ids = g.csr
    node_acc = np.zeros(n)
    edge_acc = np.zeros(g.m)
    exact = n <= exact_cutoff
    if exact:
        sources = np.arange(n, dtype=np.int64)
        scale = 1.0
    else:
        pivots = min(n, max_pivots)
        rng = np.random.Generator(np.random.PCG64(subseed(seed, "betweenness-pivots")))
        sources = np.sort(rng.choice(n, size=pivots, replace=False)).astype(np.int64)
        scale = n / float(pivots)
    nthreads = resolve_threads(threads)
    blocks = [sources[a:b] for a, b in chunk_ranges(len(sources), SOURCE_CHUNK)]

    def run(srcs):
        na = np.zeros(n)
        ea = np.zeros(g.m)
        brandes_accumulate(indptr, indices, edge_ids, np.ascontiguousarray(srcs), na, ea)
        return na, ea

    for na, ea in ordered_parallel(run, blocks, nthreads):
        node_acc += na
        edge_acc += ea

    node_acc *= scale
    edge_acc *= scale
    # each unordered pair is seen from both endpoints as sources
    if n > 2:
        node_acc /= (n - 1.0) * (n - 2.0)
    else:
        node_acc[:] = 0.0
    if n > 1:
        edge_acc /= n * (n - 1.0)
    notes = {
        "algorithm": "shortest-path dependency accumulation (BFS)",
        "exact": exact,
        "normalization": "unordered pairs",
    }
    if not exact:
        notes["pivots"] = int(len(sources))
        notes["pivot_seed"] = seed
        notes["scale"] = scale
    return node_acc, edge_acc, notes


def connected_components(g: SimpleGraph) -> np.ndarray:
    """Component label per node (labels are first-node canonical ids order)."""
    n = g.n
    indptr, indices, _ = g.csr
    labels = np.full(n, -1, dtype=np.int64)
    comp = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        stack = [start]
        labels[start] = comp
        while stack:
            v = stack.pop()
            for w in indices[indptr[v]:indptr[v + 1]]:
                if labels[w] < 0:
                    labels[w] = comp
                    stack.append(int(w))
        comp += 1
    return labels


def largest_component(g: SimpleGraph) -> np.ndarray:
    """Canonical node ids of the largest component (ties: the one whose
    smallest node id is smallest, which is the first encountered)."""
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    labels = connected_components(g)
    sizes = np.bincount(labels)
    best = int(np.argmax(sizes))  # argmax returns the first maximal label
    return np.flatnonzero(labels == best).astype(np.int64)


def component_adjacency_matvec(g: SimpleGraph, nodes: np.ndarray):
    """Adjacency matvec restricted to ``nodes`` (canonical order preserved)."""
    pos = np.full(g.n, -1, dtype=np.int64)
    nloc = len(nodes)
    pos[nodes] = np.arange(nloc)
    if g.m:
        emask = pos[g.edges[:, 0]] >= 0  # edges never straddle components
        eu = pos[g.edges[emask, 0]]
        ev = pos[g.edges[emask, 1]]
    else:
        eu = ev = np.zeros(0, dtype=np.int64)
    src = np.concatenate([eu, ev])
    dst = np.concatenate([ev, eu])

    def matvec(x):
        if src.size == 0:
            return np.zeros(nloc)
        return np.bincount(src, weights=x[dst], minlength=nloc)

    deg = matvec(np.ones(nloc))
    return matvec, deg


def eigenvector_centrality(g: SimpleGraph, tol: float = 1e-8, maxiter: int = 1000,
                           seed: int = 42):
    """(values over all nodes, eigenvalue, iterations, residual, notes)."""
    n = g.n
    full = np.zeros(n)
    nodes = largest_component(g)
    notes = {
        "algorithm": "power iteration on A + I (shift removes bipartite stalling)",
        "tolerance": tol,
        "component_size": int(len(nodes)),
    }
    if len(nodes) == 0:
        return full, 0.0, 0, 0.0, notes
    matvec, _ = component_adjacency_matvec(g, nodes)
    nloc = len(nodes)
    if nloc == 1:
        full[nodes[0]] = 1.0
        notes.update({"iterations": 0, "residual": 0.0})
        return full, 0.0, 0, 0.0, notes

    def shifted(x):
        return matvec(x) + x

    v0 = np.full(nloc, 1.0 / np.sqrt(nloc))
    theta, vec, iters, residual = power_iteration(shifted, nloc, v0, tol=tol, maxiter=maxiter)
    lam = theta - 1.0
    vec = np.abs(vec)  # Perron vector of a connected component is positive
    vec /= np.linalg.norm(vec)
    full[nodes] = vec
    notes.update({"iterations": iters, "residual": residual})
    return full, lam, iters, residual, notes


def pagerank(dv: DirectedView, damping: float = 0.85, tol: float = 1e-10,
             maxiter: int = 1000) -> np.ndarray:
    """PageRank vector on the directed multigraph view; sums to 1."""
    n = dv.n
    if n == 0:
        return np.zeros(0)
    x = np.full(n, 1.0 / n)
    dangling = dv.out_weight == 0
    src, dst, w = dv.src, dv.dst, dv.weight
    inv_out = np.zeros(n)
    inv_out[~dangling] = 1.0 / dv.out_weight[~dangling]
    teleport = (1.0 - damping) / n
    for it in range(1, maxiter + 1):
        contrib = x[src] * inv_out[src] * w
        nxt = np.bincount(dst, weights=contrib, minlength=n)
        nxt *= damping
        nxt += teleport + damping * x[dangling].sum() / n
        delta = float(np.abs(nxt - x).sum())
        x = nxt
        if delta < tol:
            return x
    raise ConvergenceError(
        f"pagerank did not reach tol={tol} in {maxiter} iterations (last delta {delta:.3e})",
        iterations=maxiter,
        residual=delta,
    )

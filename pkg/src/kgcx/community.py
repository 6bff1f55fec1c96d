"""Seeded multilevel greedy modularity communities, modularity and the
community-size entropy.

The local-move phase visits nodes in a seeded permutation, always moves to
the strictly best neighboring community (ties keep the current community,
then favor the smallest community id), and levels aggregate until no move
improves modularity. Node ids are canonical, so results depend only on the
graph content and the seed.
"""
from __future__ import annotations

import numpy as np

from .dataset import SimpleGraph
from .errors import ComputeError
from .seeds import subseed

_GAIN_TOL = 1e-12


def louvain(g: SimpleGraph, seed: int = 42) -> np.ndarray:
    """Community label per node; labels renumbered by smallest member id."""
    n = g.n
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    assign = np.arange(n, dtype=np.int64)
    if g.m == 0:
        return assign
    # level-graph arrays
    edges_u = g.edges[:, 0].astype(np.int64)
    edges_v = g.edges[:, 1].astype(np.int64)
    edges_w = np.ones(g.m, dtype=np.float64)
    selfw = np.zeros(n, dtype=np.float64)
    n_level = n
    two_m = 2.0 * float(edges_w.sum())
    level = 0
    while True:
        comm, moved = _one_level(n_level, edges_u, edges_v, edges_w, selfw, two_m,
                                 subseed(seed, "communities", level))
        if not moved:
            break
        uniq, dense = np.unique(comm, return_inverse=True)
        assign = dense[assign]
        if len(uniq) == n_level:
            break
        # aggregate
        cu = dense[edges_u]
        cv = dense[edges_v]
        new_selfw = np.bincount(dense, weights=selfw, minlength=len(uniq))
        intra = cu == cv
        new_selfw += np.bincount(cu[intra], weights=edges_w[intra], minlength=len(uniq))
        iu = np.minimum(cu[~intra], cv[~intra])
        iv = np.maximum(cu[~intra], cv[~intra])
        iw = edges_w[~intra]
        if iu.size:
            key = iu * np.int64(len(uniq)) + iv
            ukey, inv = np.unique(key, return_inverse=True)
            edges_u = (ukey // len(uniq)).astype(np.int64)
            edges_v = (ukey % len(uniq)).astype(np.int64)
            edges_w = np.bincount(inv, weights=iw)
        else:
            edges_u = np.zeros(0, dtype=np.int64)
            edges_v = np.zeros(0, dtype=np.int64)
            edges_w = np.zeros(0, dtype=np.float64)
        selfw = new_selfw
        n_level = len(uniq)
        level += 1
    # canonical labels: communities numbered by their smallest member
    order = np.full(int(assign.max()) + 1, -1, dtype=np.int64)
    nxt = 0
    out = np.empty(n, dtype=np.int64)
    for v in range(n):
        c = assign[v]
        if order[c] < 0:
            order[c] = nxt
            nxt += 1
        out[v] = order[c]
    return out


def _one_level(n, eu, ev, ew, selfw, two_m, level_seed):
    indptr, nbr, w = _csr(n, eu, ev, ew)
    k = np.zeros(n, dtype=np.float64)
    k += np.bincount(eu, weights=ew, minlength=n)
    k += np.bincount(ev, weights=ew, minlength=n)
    k += 2.0 * selfw
    comm = np.arange(n, dtype=np.int64)
    sigma_tot = k.copy()
    rng = np.random.Generator(np.random.PCG64(level_seed))
    order = rng.permutation(n)
    moved_any = False
    while True:
        moves = 0
        for v in order:
            cv = comm[v]
            wmap: dict[int, float] = {}
            for p in range(indptr[v], indptr[v + 1]):
                c = comm[nbr[p]]
                wmap[c] = wmap.get(c, 0.0) + w[p]
            sigma_tot[cv] -= k[v]
            best_c = cv
            best_gain = wmap.get(cv, 0.0) - k[v] * sigma_tot[cv] / two_m
            for c in sorted(wmap):
                if c == cv:
                    continue
                gain = wmap[c] - k[v] * sigma_tot[c] / two_m
                if gain > best_gain + _GAIN_TOL:
                    best_gain = gain
                    best_c = c
            sigma_tot[best_c] += k[v]
            if best_c != cv:
                comm[v] = best_c
                moves += 1
        if moves == 0:
            break
        moved_any = True
    return comm, moved_any


def _csr(n, eu, ev, ew):
    src = np.concatenate([eu, ev])
    dst = np.concatenate([ev, eu])
    ww = np.concatenate([ew, ew])
    order = np.lexsort((dst, src))
    src, dst, ww = src[order], dst[order], ww[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, dst, ww


def modularity(g: SimpleGraph, labels: np.ndarray) -> float:
    """Newman-Girvan modularity of a partition on the simple view."""
    m = g.m
    if m == 0:
        raise ComputeError("modularity undefined for a graph with no edges")
    labels = np.asarray(labels, dtype=np.int64)
    ncomm = int(labels.max()) + 1 if labels.size else 0
    intra = labels[g.edges[:, 0]] == labels[g.edges[:, 1]]
    lc = np.bincount(labels[g.edges[intra, 0]], minlength=ncomm).astype(np.float64)
    dc = np.bincount(labels, weights=g.degrees.astype(np.float64), minlength=ncomm)
    return float((lc / m).sum() - ((dc / (2.0 * m)) ** 2).sum())


def structural_entropy(labels: np.ndarray, n: int) -> float:
    """Shannon entropy (bits) of community-size fractions."""
    if n == 0:
        return 0.0
    sizes = np.bincount(np.asarray(labels, dtype=np.int64), minlength=0)
    p = sizes[sizes > 0] / float(n)
    return float(-(p * np.log2(p)).sum())


def communities_and_modularity(g: SimpleGraph, seed: int = 42):
    """(labels, modularity, community entropy) via the seeded detector."""
    if g.m == 0:
        raise ComputeError("community detection requires at least one edge")
    labels = louvain(g, seed=seed)
    return labels, modularity(g, labels), structural_entropy(labels, g.n)

"""Pure-Python/numpy implementations of the hot kernels.

Signature-compatible with the compiled module; used when the extension is
unavailable or when ``KGCX_FORCE_FALLBACK=1``. Correct on any input size but
only fast enough for test-scale graphs.
"""
from collections import deque

import numpy as np


def topk_rows(dist, k, out):
    """Per row of ``dist``: indices of the k smallest entries ordered by
    (value, column index); ties on value break toward the smaller index."""
    q, n = dist.shape
    for i in range(q):
        row = dist[i]
        kth = np.partition(row, k - 1)[k - 1]
        cand = np.flatnonzero(row <= kth)
        order = np.lexsort((cand, row[cand]))
        out[i, :] = cand[order[:k]]
    return out


def bfs_distances(indptr, indices, sources, out_sum, out_reached):
    """Per source: sum of BFS distances and number of reached nodes
    (including the source itself)."""
    n = len(indptr) - 1
    for si, s in enumerate(sources):
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        queue = deque([int(s)])
        total = 0
        reached = 1
        while queue:
            v = queue.popleft()
            dv = dist[v]
            for w in indices[indptr[v]:indptr[v + 1]]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    total += dv + 1
                    reached += 1
                    queue.append(int(w))
        out_sum[si] = total
        out_reached[si] = reached
    return out_sum, out_reached


def brandes_accumulate(indptr, indices, edge_ids, sources, node_acc, edge_acc):
    """Shortest-path dependency accumulation from each source.

    Adds each source's node and edge dependencies into the provided
    accumulators (endpoints excluded for nodes, per convention).
    """
    n = len(indptr) - 1
    for s in sources:
        s = int(s)
        dist = np.full(n, -1, dtype=np.int64)
        sigma = np.zeros(n, dtype=np.float64)
        delta = np.zeros(n, dtype=np.float64)
        dist[s] = 0
        sigma[s] = 1.0
        order = []
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            dv = dist[v]
            for w in indices[indptr[v]:indptr[v + 1]]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    queue.append(int(w))
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
        for w in reversed(order):
            dw = dist[w]
            coeff = (1.0 + delta[w]) / sigma[w]
            for p in range(indptr[w], indptr[w + 1]):
                v = indices[p]
                if dist[v] == dw - 1:
                    c = sigma[v] * coeff
                    delta[v] += c
                    edge_acc[edge_ids[p]] += c
            if w != s:
                node_acc[w] += delta[w]
    return node_acc, edge_acc


def count_triangles(indptr, indices, out_tri):
    """Twice the number of triangles incident to each node.

    Neighbor lists must be sorted ascending; each undirected edge (u < v)
    contributes its common-neighbor count to both endpoints.
    """
    n = len(indptr) - 1
    acc = np.zeros(n, dtype=np.int64)
    for u in range(n):
        row_u = indices[indptr[u]:indptr[u + 1]]
        for v in row_u:
            if v <= u:
                continue
            row_v = indices[indptr[v]:indptr[v + 1]]
            c = _sorted_intersection_size(row_u, row_v)
            acc[u] += c
            acc[v] += c
    out_tri[:] = acc
    return out_tri


def _sorted_intersection_size(a, b):
    i = j = c = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            c += 1
            i += 1
            j += 1
    return c


def girth_simple(indptr, indices):
    """Length of the shortest simple cycle; 0 when acyclic.

    Truncated BFS from every node; the minimum closing-edge estimate over all
    sources is exact for unweighted simple graphs.
    """
    n = len(indptr) - 1
    best = n + 1
    dist = np.empty(n, dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    for s in range(n):
        if best == 3:
            break
        dist.fill(-1)
        parent.fill(-1)
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            dv = dist[v]
            if 2 * dv >= best:
                continue
            for w in indices[indptr[v]:indptr[v + 1]]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    parent[w] = v
                    queue.append(int(w))
                elif w != parent[v] and parent[w] != v:
                    cycle = dv + dist[w] + 1
                    if cycle < best:
                        best = cycle
    return int(best) if best <= n else 0

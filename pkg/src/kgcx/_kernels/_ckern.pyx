# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: k-NN row selection, BFS distance sums, shortest-path
dependency accumulation, triangle counts, and girth search.

Mirrors ``pyfallback`` exactly, including tie-breaking, so either backend
produces bit-identical results.
"""
import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc
from libc.string cimport memset

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32
ctypedef cnp.float64_t f64


cdef inline bint _pair_gt(f64 va, i64 ia, f64 vb, i64 ib) nogil:
    # lexicographic (value, index) comparison: a > b
    if va > vb:
        return True
    if va < vb:
        return False
    return ia > ib


def topk_rows(f64[:, ::1] dist, Py_ssize_t k, i64[:, ::1] out):
    """Per row: indices of the k smallest entries by (value, index)."""
    cdef Py_ssize_t q = dist.shape[0]
    cdef Py_ssize_t n = dist.shape[1]
    cdef Py_ssize_t i, j, size, pos, child, m
    cdef f64 hv_top, val
    cdef i64 hi_top
    cdef f64 *hv = <f64 *> malloc(k * sizeof(f64))
    cdef i64 *hi = <i64 *> malloc(k * sizeof(i64))
    if hv == NULL or hi == NULL:
        free(hv); free(hi)
        raise MemoryError()
    with nogil:
        for i in range(q):
            # max-heap of the k best (value, index) pairs
            size = 0
            for j in range(n):
                val = dist[i, j]
                if size < k:
                    # sift up
                    pos = size
                    hv[pos] = val
                    hi[pos] = j
                    size += 1
                    while pos > 0 and _pair_gt(hv[pos], hi[pos], hv[(pos - 1) // 2], hi[(pos - 1) // 2]):
                        hv[pos], hv[(pos - 1) // 2] = hv[(pos - 1) // 2], hv[pos]
                        hi[pos], hi[(pos - 1) // 2] = hi[(pos - 1) // 2], hi[pos]
                        pos = (pos - 1) // 2
                elif _pair_gt(hv[0], hi[0], val, <i64> j):
                    # replace the root, sift down
                    hv[0] = val
                    hi[0] = j
                    pos = 0
                    while True:
                        child = 2 * pos + 1
                        if child >= k:
                            break
                        if child + 1 < k and _pair_gt(hv[child + 1], hi[child + 1], hv[child], hi[child]):
                            child += 1
                        if _pair_gt(hv[child], hi[child], hv[pos], hi[pos]):
                            hv[pos], hv[child] = hv[child], hv[pos]
                            hi[pos], hi[child] = hi[child], hi[pos]
                            pos = child
                        else:
                            break
            # heap-sort into ascending (value, index) order
            for m in range(size - 1, -1, -1):
                hv_top = hv[0]
                hi_top = hi[0]
                hv[0] = hv[m]
                hi[0] = hi[m]
                hv[m] = hv_top
                hi[m] = hi_top
                pos = 0
                while True:
                    child = 2 * pos + 1
                    if child >= m:
                        break
                    if child + 1 < m and _pair_gt(hv[child + 1], hi[child + 1], hv[child], hi[child]):
                        child += 1
                    if _pair_gt(hv[child], hi[child], hv[pos], hi[pos]):
                        hv[pos], hv[child] = hv[child], hv[pos]
                        hi[pos], hi[child] = hi[child], hi[pos]
                        pos = child
                    else:
                        break
                out[i, m] = hi[m]
    free(hv)
    free(hi)
    return np.asarray(out)


def bfs_distances(i64[::1] indptr, i32[::1] indices, i64[::1] sources,
                  i64[::1] out_sum, i32[::1] out_reached):
    """Per source: BFS distance sum and reached-node count (incl. source)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t ns = sources.shape[0]
    cdef Py_ssize_t si, head, tail, p
    cdef i64 s, v, w, dv, total
    cdef i32 reached
    cdef i64 *dist = <i64 *> malloc(n * sizeof(i64))
    cdef i64 *queue = <i64 *> malloc(n * sizeof(i64))
    if dist == NULL or queue == NULL:
        free(dist); free(queue)
        raise MemoryError()
    with nogil:
        for si in range(ns):
            s = sources[si]
            for v in range(n):
                dist[v] = -1
            dist[s] = 0
            queue[0] = s
            head = 0
            tail = 1
            total = 0
            reached = 1
            while head < tail:
                v = queue[head]
                head += 1
                dv = dist[v]
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if dist[w] < 0:
                        dist[w] = dv + 1
                        total += dv + 1
                        reached += 1
                        queue[tail] = w
                        tail += 1
            out_sum[si] = total
            out_reached[si] = reached
    free(dist)
    free(queue)
    return np.asarray(out_sum), np.asarray(out_reached)


def brandes_accumulate(i64[::1] indptr, i32[::1] indices, i64[::1] edge_ids,
                       i64[::1] sources, f64[::1] node_acc, f64[::1] edge_acc):
    """Accumulate shortest-path dependencies from each source."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t ns = sources.shape[0]
    cdef Py_ssize_t si, head, tail, p, oi
    cdef i64 s, v, w, dv, dw
    cdef f64 coeff, c
    cdef i64 *dist = <i64 *> malloc(n * sizeof(i64))
    cdef i64 *order = <i64 *> malloc(n * sizeof(i64))
    cdef f64 *sigma = <f64 *> malloc(n * sizeof(f64))
    cdef f64 *delta = <f64 *> malloc(n * sizeof(f64))
    if dist == NULL or order == NULL or sigma == NULL or delta == NULL:
        free(dist); free(order); free(sigma); free(delta)
        raise MemoryError()
    with nogil:
        for si in range(ns):
            s = sources[si]
            for v in range(n):
                dist[v] = -1
                sigma[v] = 0.0
                delta[v] = 0.0
            dist[s] = 0
            sigma[s] = 1.0
            order[0] = s
            head = 0
            tail = 1
            while head < tail:
                v = order[head]
                head += 1
                dv = dist[v]
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if dist[w] < 0:
                        dist[w] = dv + 1
                        order[tail] = w
                        tail += 1
                    if dist[w] == dv + 1:
                        sigma[w] += sigma[v]
            for oi in range(tail - 1, -1, -1):
                w = order[oi]
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
    free(dist)
    free(order)
    free(sigma)
    free(delta)
    return np.asarray(node_acc), np.asarray(edge_acc)


def count_triangles(i64[::1] indptr, i32[::1] indices, i64[::1] out_tri):
    """Twice the per-node incident-triangle count (sorted neighbor lists)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t u, p, i, j, iend, jend
    cdef i64 v, c
    with nogil:
        for u in range(n):
            out_tri[u] = 0
    cdef i64 *acc = <i64 *> malloc(n * sizeof(i64))
    if acc == NULL:
        raise MemoryError()
    memset(acc, 0, n * sizeof(i64))
    with nogil:
        for u in range(n):
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if v <= u:
                    continue
                c = 0
                i = indptr[u]
                j = indptr[v]
                iend = indptr[u + 1]
                jend = indptr[v + 1]
                while i < iend and j < jend:
                    if indices[i] < indices[j]:
                        i += 1
                    elif indices[i] > indices[j]:
                        j += 1
                    else:
                        c += 1
                        i += 1
                        j += 1
                acc[u] += c
                acc[v] += c
        for u in range(n):
            out_tri[u] = acc[u]
    free(acc)
    return np.asarray(out_tri)


def girth_simple(i64[::1] indptr, i32[::1] indices):
    """Shortest simple-cycle length; 0 when the graph is acyclic."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64 best = n + 1
    cdef Py_ssize_t s, head, tail, p
    cdef i64 v, w, dv, cycle
    cdef i64 *dist = <i64 *> malloc(n * sizeof(i64))
    cdef i64 *parent = <i64 *> malloc(n * sizeof(i64))
    cdef i64 *queue = <i64 *> malloc(n * sizeof(i64))
    if dist == NULL or parent == NULL or queue == NULL:
        free(dist); free(parent); free(queue)
        raise MemoryError()
    with nogil:
        for s in range(n):
            if best == 3:
                break
            for v in range(n):
                dist[v] = -1
                parent[v] = -1
            dist[s] = 0
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                v = queue[head]
                head += 1
                dv = dist[v]
                if 2 * dv >= best:
                    continue
                for p in range(indptr[v], indptr[v + 1]):
                    w = indices[p]
                    if dist[w] < 0:
                        dist[w] = dv + 1
                        parent[w] = v
                        queue[tail] = w
                        tail += 1
                    elif w != parent[v] and parent[w] != v:
                        cycle = dv + dist[w] + 1
                        if cycle < best:
                            best = cycle
    free(dist)
    free(parent)
    free(queue)
    return int(best) if best <= n else 0

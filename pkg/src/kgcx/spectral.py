"""Spectral class-overlap pipeline (cumulative spectral gradient, CSG).

Stages:

1. Partition triples into classes keyed by distinct tail entity; each class
   holds the distinct (head, relation) pairs pointing at that tail.
2. Sample up to ``n_samples`` composite head||relation vectors per class
   (without replacement, per-class sub-seeded).
3. Exact k-nearest-neighbor search over the union of all sampled vectors
   (squared L2), excluding each query itself, with ties on distance broken
   toward the smaller global sample index. The global index order is
   (class position, within-class sample position).
4. Class-similarity matrix ``S``: row i counts how often queries from class i
   have neighbors in class j, scaled by that row's sample count times k, so
   every row sums to 1.
5. Symmetrize S, form the normalized Laplacian ``L = I - D^-1/2 S D^-1/2``
   (zero-degree rows use the pseudo-inverse convention), and take its sorted
   eigenvalue spectrum. Eigenvalues of the symmetric L lie in [0, 2].
6. CSG at cutoff ``k_c`` is the telescoped sum of consecutive eigenvalue
   gaps, ``lambda_{k_c} - lambda_0``; the full value uses ``k_c = M - 1``.

k-NN counts are asymmetric, so S is symmetrized before the Laplacian: the
real [0, 2] spectrum that the gap summation assumes requires a symmetric L.

A dense symmetric eigensolver handles class counts up to ``dense_cutoff``;
beyond that only the spectrum extremes (enough for the full CSG) are
computed with the Lanczos solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import topk_rows
from .embeddings import EmbeddingTable
from .errors import ComputeError
from .seeds import subseed
from .util import chunk_ranges, ordered_parallel, resolve_threads

SELECTION_ALL = "all"
SELECTION_TOP = "top"
SELECTION_RANDOM = "random"


@dataclass
class CsgConfig:
    k: int = 50
    n_samples: int = 120
    k_c: int | None = None       # None -> M - 1 (full spectrum span)
    seed: int = 42
    dense_cutoff: int = 4096
    chunk: int = 512
    threads: int | None = None

    def validate(self):
        if self.k < 1:
            raise ComputeError(f"neighbor count k must be >= 1, got {self.k}")
        if self.n_samples < 1:
            raise ComputeError(f"per-class sample cap must be >= 1, got {self.n_samples}")


@dataclass
class ClassPartition:
    """Tail-keyed classes: ``members[i]`` is an (m_i, 2) array of distinct
    (head, relation) id pairs whose triples point at ``tails[i]``."""

    tails: np.ndarray
    members: list[np.ndarray]
    selection: str
    entity_labels: list[str] = field(repr=False, default_factory=list)
    relation_labels: list[str] = field(repr=False, default_factory=list)

    @property
    def m(self) -> int:
        return len(self.tails)


def partition_by_tail(kg, selection: str = SELECTION_ALL, m: int | None = None,
                      seed: int | None = None) -> ClassPartition:
    """Group triples into classes by distinct tail entity.

    ``selection``: ``all`` keeps every distinct tail (ascending id);
    ``top`` keeps the ``m`` tails with the most incoming triples (ties toward
    the smaller entity id); ``random`` keeps a seeded uniform sample of ``m``
    tails without replacement.
    """
    triples = kg.triples
    if triples.shape[0] == 0:
        raise ComputeError("cannot partition an empty graph")
    counts = np.bincount(triples[:, 2], minlength=kg.n_entities)
    distinct = np.flatnonzero(counts).astype(np.int64)

    if selection == SELECTION_ALL:
        selected = distinct
        desc = "all"
    elif selection == SELECTION_TOP:
        _require_m(m, distinct.size)
        order = np.lexsort((distinct, -counts[distinct]))
        selected = distinct[order[:m]]
        desc = f"top-frequency({m})"
    elif selection == SELECTION_RANDOM:
        _require_m(m, distinct.size)
        rng = np.random.Generator(np.random.PCG64(subseed(seed if seed is not None else 0, "partition")))
        pick = rng.choice(distinct.size, size=m, replace=False)
        selected = np.sort(distinct[pick])
        desc = f"random({m}, seed={seed})"
    else:
        raise ComputeError(f"unknown class selection {selection!r}")

    uniq = np.unique(triples, axis=0)  # distinct (h, r, t) rows
    order = np.lexsort((uniq[:, 1], uniq[:, 0], uniq[:, 2]))
    grouped = uniq[order]
    starts = np.searchsorted(grouped[:, 2], selected, side="left")
    stops = np.searchsorted(grouped[:, 2], selected, side="right")
    members = [grouped[a:b, :2] for a, b in zip(starts, stops)]
    return ClassPartition(
        tails=selected,
        members=members,
        selection=desc,
        entity_labels=kg.entity_labels,
        relation_labels=kg.relation_labels,
    )


def _require_m(m, available):
    if m is None or m < 1:
        raise ComputeError(f"class count must be a positive integer, got {m}")
    if m > available:
        raise ComputeError(
            f"requested M={m} classes but the graph has only {available} distinct tail entities"
        )


@dataclass
class ClassSamples:
    """Sampled composite vectors for all classes, concatenated class-major."""

    X: np.ndarray          # (total, 2d) float64, C-contiguous
    class_of: np.ndarray   # (total,) int64
    offsets: np.ndarray    # (M + 1,) int64
    tails: np.ndarray

    @property
    def m(self) -> int:
        return len(self.tails)

    @property
    def total(self) -> int:
        return int(self.X.shape[0])

    @property
    def class_sizes(self) -> np.ndarray:
        return np.diff(self.offsets)


def sample_class_vectors(partition: ClassPartition, table: EmbeddingTable,
                         config: CsgConfig) -> ClassSamples:
    """Embed up to ``min(n_samples, class size)`` members per class.

    Sampling is without replacement and sub-seeded per tail entity, so a
    class's sample is stable regardless of which other classes are selected.
    """
    config.validate()
    d = table.dimension
    ent_cache: dict[int, np.ndarray] = {}
    rel_cache: dict[int, np.ndarray] = {}
    picked = []
    sizes = np.empty(partition.m, dtype=np.int64)
    for i, (tail, members) in enumerate(zip(partition.tails, partition.members)):
        mi = members.shape[0]
        take = min(config.n_samples, mi)
        if take < mi:
            rng = np.random.Generator(np.random.PCG64(subseed(config.seed, "sample", int(tail))))
            sel = np.sort(rng.choice(mi, size=take, replace=False))
            rows = members[sel]
        else:
            rows = members
        picked.append(rows)
        sizes[i] = take

    offsets = np.zeros(partition.m + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    total = int(offsets[-1])
    X = np.empty((total, 2 * d), dtype=np.float64)
    class_of = np.empty(total, dtype=np.int64)
    pos = 0
    for i, rows in enumerate(picked):
        for h, r in rows:
            hv = ent_cache.get(h)
            if hv is None:
                hv = ent_cache[h] = table.get(partition.entity_labels[h])
            rv = rel_cache.get(r)
            if rv is None:
                rv = rel_cache[r] = table.get(partition.relation_labels[r])
            X[pos, :d] = hv
            X[pos, d:] = rv
            class_of[pos] = i
            pos += 1
    return ClassSamples(X=X, class_of=class_of, offsets=offsets, tails=partition.tails)


def knn_indices(X: np.ndarray, k: int, threads: int | None = None,
                chunk: int = 512) -> np.ndarray:
    """Exact k-nearest neighbors over the row union, excluding self-matches.

    Returns a (total, k) index array, each row ordered by (squared distance,
    index) ascending. Distances are computed chunk-wise from the Gram matrix
    in the calling thread; only the per-row selection is parallelized, so the
    result is bit-identical for any thread count.
    """
    total = X.shape[0]
    if total < k + 1:
        raise ComputeError(
            f"k-NN needs at least k+1={k + 1} sampled vectors (self excluded), have {total}"
        )
    nthreads = resolve_threads(threads)
    sqn = np.einsum("ij,ij->i", X, X)
    out = np.empty((total, k), dtype=np.int64)
    for a, b in chunk_ranges(total, chunk):
        D = X[a:b] @ X.T
        D *= -2.0
        D += sqn[None, :]
        D += sqn[a:b, None]
        D[np.arange(b - a), np.arange(a, b)] = np.inf
        blocks = list(chunk_ranges(b - a, 128))

        def select(block, D=D, base=a):
            lo, hi = block
            topk_rows(D[lo:hi], k, out[base + lo:base + hi])

        ordered_parallel(select, blocks, nthreads)
    return out


def similarity_from_indices(samples: ClassSamples, idx: np.ndarray,
                            k: int) -> np.ndarray:
    """Aggregate neighbor indices into the row-stochastic class matrix."""
    m = samples.m
    qcls = samples.class_of
    ncls = qcls[idx[:, :k]]
    flat = np.repeat(qcls, k) * m + ncls.ravel()
    S = np.bincount(flat, minlength=m * m).astype(np.float64).reshape(m, m)
    S /= (samples.class_sizes.astype(np.float64) * k)[:, None]
    return S


def build_similarity(samples: ClassSamples, config: CsgConfig) -> np.ndarray:
    """Class-overlap matrix S; each row sums to 1."""
    config.validate()
    idx = knn_indices(samples.X, config.k, threads=config.threads, chunk=config.chunk)
    return similarity_from_indices(samples, idx, config.k)


@dataclass
class SpectralResult:
    """Spectrum of the normalized Laplacian built from the class matrix.

    ``s_pre`` is the row-stochastic matrix before symmetrization; ``degrees``
    come from the symmetrized matrix. ``eigenvalues`` is the full sorted
    spectrum on the dense path and ``None`` on the Lanczos path, where only
    the extremes are available.
    """

    s_pre: np.ndarray
    degrees: np.ndarray
    eigenvalues: np.ndarray | None
    lambda_min: float
    lambda_max: float
    method: str
    residual: float

    @property
    def m(self) -> int:
        return int(self.s_pre.shape[0])

    def csg_at(self, k_c: int) -> float:
        if not 1 <= k_c <= self.m - 1:
            raise ComputeError(f"cutoff k_c={k_c} out of range [1, {self.m - 1}]")
        if self.eigenvalues is None:
            if k_c == self.m - 1:
                return self.lambda_max - self.lambda_min
            raise ComputeError(
                "full spectrum not computed (Lanczos path); only k_c = M-1 is available"
            )
        return float(self.eigenvalues[k_c] - self.eigenvalues[0])

    @property
    def csg_full(self) -> float:
        return self.csg_at(self.m - 1)


def laplacian_spectrum(S: np.ndarray, dense_cutoff: int = 4096, tol: float = 1e-6,
                       seed: int = 42) -> SpectralResult:
    """Eigen-spectrum of ``I - D^-1/2 sym(S) D^-1/2``.

    ``S`` must be square, finite and non-negative. Rows of the symmetrized
    matrix with zero degree keep ``D^-1/2 = 0`` (pseudo-inverse convention),
    which leaves them as isolated eigenvalue-1 rows of L.
    """
    S = np.asarray(S, dtype=np.float64)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ComputeError(f"similarity matrix must be square, got shape {S.shape}")
    if not np.isfinite(S).all():
        raise ComputeError("similarity matrix contains non-finite entries")
    if (S < 0).any():
        raise ComputeError("similarity matrix contains negative entries")
    m = S.shape[0]
    s_sym = (S + S.T) / 2.0
    deg = s_sym.sum(axis=1)
    dinv = np.zeros(m)
    pos = deg > 0
    dinv[pos] = 1.0 / np.sqrt(deg[pos])

    if m <= dense_cutoff:
        A = s_sym * dinv[:, None] * dinv[None, :]
        L = np.eye(m) - A
        L = (L + L.T) / 2.0
        w, U = np.linalg.eigh(L)
        resid = float(np.abs(L @ U - U * w).max()) if m else 0.0
        return SpectralResult(
            s_pre=S, degrees=deg, eigenvalues=w,
            lambda_min=float(w[0]), lambda_max=float(w[-1]),
            method="dense", residual=resid,
        )

    def lap_matvec(x):
        return x - dinv * (s_sym @ (dinv * x))

    rng = np.random.Generator(np.random.PCG64(subseed(seed, "lanczos-spectrum")))
    v0 = rng.standard_normal(m)
    lo_vals, _, lo_res, _ = _extreme(lap_matvec, m, v0, "smallest", tol)
    hi_vals, _, hi_res, _ = _extreme(lap_matvec, m, v0, "largest", tol)
    return SpectralResult(
        s_pre=S, degrees=deg, eigenvalues=None,
        lambda_min=float(lo_vals[0]), lambda_max=float(hi_vals[0]),
        method="lanczos", residual=float(max(lo_res[0], hi_res[0])),
    )


def _extreme(matvec, n, v0, which, tol):
    from .eigen import lanczos_extreme

    return lanczos_extreme(matvec, n, v0, npairs=1, which=which, tol=tol,
                           maxdim=min(n, 400))


def csg(result: SpectralResult, k_c: int) -> float:
    """Cumulative gap sum up to cutoff ``k_c`` (telescopes to an eigenvalue
    difference)."""
    return result.csg_at(k_c)


def spectral_debug_dict(result: SpectralResult) -> dict:
    """Debug dump of a spectral result: S row-major plus the spectrum."""
    return {
        "M": result.m,
        "method": result.method,
        "residual": result.residual,
        "S": [float(x) for x in result.s_pre.ravel()],
        "degrees": [float(x) for x in result.degrees],
        "eigenvalues": None if result.eigenvalues is None
        else [float(x) for x in result.eigenvalues],
        "lambda_min": result.lambda_min,
        "lambda_max": result.lambda_max,
    }


@dataclass
class CsgRecord:
    dataset: str
    split_selection: str
    selection: str
    k: int
    m: int
    n_samples: int
    seed: int
    k_c: int
    csg: float
    csg_full: float
    lambda_min: float
    lambda_max: float
    embedding_source: str
    embedding_dim: int

    def to_dict(self):
        return {
            "dataset": self.dataset,
            "split_selection": self.split_selection,
            "selection": self.selection,
            "k": self.k,
            "M": self.m,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "k_c": self.k_c,
            "csg": self.csg,
            "csg_full": self.csg_full,
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "embedding_source": self.embedding_source,
            "embedding_dim": self.embedding_dim,
        }


def compute_csg(kg, table: EmbeddingTable, config: CsgConfig,
                selection: str = SELECTION_TOP, m: int | None = 100):
    """Run the whole pipeline once; returns (record, spectral result)."""
    config.validate()
    partition = partition_by_tail(kg, selection=selection, m=m, seed=config.seed)
    samples = sample_class_vectors(partition, table, config)
    S = build_similarity(samples, config)
    result = laplacian_spectrum(S, dense_cutoff=config.dense_cutoff, seed=config.seed)
    k_c = config.k_c if config.k_c is not None else partition.m - 1
    value = result.csg_at(k_c)
    source = table.source if table.source == "file" else f"fallback(seed={table.seed})"
    record = CsgRecord(
        dataset=kg.name,
        split_selection=kg.selection,
        selection=partition.selection,
        k=config.k,
        m=partition.m,
        n_samples=config.n_samples,
        seed=config.seed,
        k_c=k_c,
        csg=value,
        csg_full=result.csg_full,
        lambda_min=result.lambda_min,
        lambda_max=result.lambda_max,
        embedding_source=source,
        embedding_dim=table.dimension,
    )
    return record, result


def sweep(kg, table: EmbeddingTable, ks, m_values, config: CsgConfig,
          selection: str = SELECTION_TOP):
    """CSG over a grid of (k, M) values.

    For each M the class selection and per-class samples are fixed across all
    k (same seed), isolating the k-dependence; neighbor lists are computed
    once at max(k) and reused as prefixes. Rows are ordered by (k, M).
    """
    config.validate()
    ks = sorted(set(int(k) for k in ks))
    if not ks or not list(m_values):
        raise ComputeError("sweep ranges must be non-empty")
    if ks[0] < 1:
        raise ComputeError(f"neighbor count k must be >= 1, got {ks[0]}")
    rows = []
    for m in m_values:
        sel = SELECTION_ALL if m == "all" else selection
        m_arg = None if m == "all" else int(m)
        partition = partition_by_tail(kg, selection=sel, m=m_arg, seed=config.seed)
        samples = sample_class_vectors(partition, table, config)
        kmax = ks[-1]
        idx = knn_indices(samples.X, kmax, threads=config.threads, chunk=config.chunk)
        for k in ks:
            S = similarity_from_indices(samples, idx, k)
            result = laplacian_spectrum(S, dense_cutoff=config.dense_cutoff, seed=config.seed)
            rows.append({
                "dataset": kg.name,
                "k": k,
                "M": partition.m,
                "n_samples": config.n_samples,
                "seed": config.seed,
                "csg_full": result.csg_full,
                "lambda_min": result.lambda_min,
                "lambda_max": result.lambda_max,
            })
    rows.sort(key=lambda r: (r["k"], r["M"]))
    return rows

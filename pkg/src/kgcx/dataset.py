"""Triple-store ingestion and graph views.

Datasets are directories of tab-separated triple files (``train.txt`` and
optionally ``valid.txt`` / ``test.txt``), one ``head<TAB>relation<TAB>tail``
per line, UTF-8. Labels are opaque strings: no case folding, no whitespace
normalization beyond stripping the line terminator.

Entities and relations are interned into dense integer ids in first-occurrence
order. Duplicate triples are retained in the triple multiset (frequency-based
metrics are defined over it) while :func:`undirected_view` collapses them into
a simple graph, keeping multiplicities and self-loop flags as annotations.

Graph views re-index nodes in canonical (label-sorted) order so that every
downstream metric is invariant under the insertion order of the input files.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import IngestionError

SPLIT_FILES = {"train": "train.txt", "valid": "valid.txt", "test": "test.txt"}
SELECTIONS = {"train": ("train",), "all": ("train", "valid", "test")}

DUMP_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Triple:
    head: int
    relation: int
    tail: int


@dataclass
class KnowledgeGraph:
    """Interned triple store with per-split triple arrays.

    ``split_triples`` maps split name to an ``(n, 3)`` int64 array of
    ``(head, relation, tail)`` id rows, in file order.
    """

    name: str
    selection: str
    entity_labels: list[str]
    relation_labels: list[str]
    entity_ids: dict[str, int]
    relation_ids: dict[str, int]
    split_triples: dict[str, np.ndarray]

    @cached_property
    def triples(self) -> np.ndarray:
        parts = [self.split_triples[s] for s in SELECTIONS[self.selection] if s in self.split_triples]
        if not parts:
            return np.zeros((0, 3), dtype=np.int64)
        return np.concatenate(parts, axis=0)

    @property
    def n_entities(self) -> int:
        return len(self.entity_labels)

    @property
    def n_relations(self) -> int:
        return len(self.relation_labels)

    @property
    def n_triples(self) -> int:
        return int(self.triples.shape[0])

    @cached_property
    def _out_csr(self):
        return _directed_csr(self.triples[:, 0], self.triples[:, [1, 2]], self.n_entities)

    @cached_property
    def _in_csr(self):
        return _directed_csr(self.triples[:, 2], self.triples[:, [1, 0]], self.n_entities)

    def out_index(self, entity: int) -> np.ndarray:
        """(relation, tail) rows for triples with this head."""
        indptr, pairs = self._out_csr
        return pairs[indptr[entity]:indptr[entity + 1]]

    def in_index(self, entity: int) -> np.ndarray:
        """(relation, head) rows for triples with this tail."""
        indptr, pairs = self._in_csr
        return pairs[indptr[entity]:indptr[entity + 1]]

    @cached_property
    def canonical_order(self) -> np.ndarray:
        """Entity ids sorted by label; position = canonical node index."""
        order = sorted(range(self.n_entities), key=self.entity_labels.__getitem__)
        return np.asarray(order, dtype=np.int64)

    @cached_property
    def entity_to_canon(self) -> np.ndarray:
        inv = np.empty(self.n_entities, dtype=np.int64)
        inv[self.canonical_order] = np.arange(self.n_entities)
        return inv


def _directed_csr(keys: np.ndarray, pairs: np.ndarray, n: int):
    order = np.argsort(keys, kind="stable")
    counts = np.bincount(keys, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, pairs[order]


def load_dataset(path, splits: str = "all", name: str | None = None) -> KnowledgeGraph:
    """Parse a dataset directory into an interned :class:`KnowledgeGraph`.

    ``splits`` is ``"train"`` or ``"all"``; every requested split file must
    exist. Malformed lines (field count != 3) abort with the offending line
    number.
    """
    if splits not in SELECTIONS:
        raise IngestionError(f"unknown split selection {splits!r} (expected 'train' or 'all')")
    if not os.path.isdir(path):
        raise IngestionError(f"dataset directory not found: {path}")
    dataset_name = name if name is not None else os.path.basename(os.path.normpath(path))

    entity_ids: dict[str, int] = {}
    relation_ids: dict[str, int] = {}
    entity_labels: list[str] = []
    relation_labels: list[str] = []
    split_triples: dict[str, np.ndarray] = {}

    def intern(table, labels, label):
        idx = table.get(label)
        if idx is None:
            idx = len(labels)
            table[label] = idx
            labels.append(label)
        return idx

    for split in SELECTIONS[splits]:
        fname = os.path.join(path, SPLIT_FILES[split])
        if not os.path.isfile(fname):
            raise IngestionError(f"missing file for requested split {split!r}: {fname}")
        rows = []
        with open(fname, encoding="utf-8", newline="") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n").rstrip("\r")
                if not line:
                    continue
                fields = line.split("\t")
                if len(fields) != 3:
                    raise IngestionError(
                        f"{fname}:{lineno}: expected 3 tab-separated fields, got {len(fields)}"
                    )
                h = intern(entity_ids, entity_labels, fields[0])
                r = intern(relation_ids, relation_labels, fields[1])
                t = intern(entity_ids, entity_labels, fields[2])
                rows.append((h, r, t))
        split_triples[split] = np.asarray(rows, dtype=np.int64).reshape(len(rows), 3)

    return KnowledgeGraph(
        name=dataset_name,
        selection=splits,
        entity_labels=entity_labels,
        relation_labels=relation_labels,
        entity_ids=entity_ids,
        relation_ids=relation_ids,
        split_triples=split_triples,
    )


@dataclass
class SimpleGraph:
    """Undirected simple view over canonical (label-sorted) node indices.

    One edge per unordered entity pair that co-occurs in at least one triple;
    self-loops are excluded from the edge set but flagged, and the number of
    triples collapsed into each edge is kept as its multiplicity.
    """

    n: int
    edges: np.ndarray          # (m, 2) int64, u < v, lexicographically sorted
    edge_mult: np.ndarray      # (m,) int64 collapsed-triple count per edge
    selfloop_nodes: np.ndarray  # canonical ids carrying >=1 self-loop triple
    canon_to_entity: np.ndarray
    entity_to_canon: np.ndarray
    labels: list[str] = field(repr=False, default_factory=list)

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def csr(self):
        """(indptr, indices, edge_id) with neighbor lists sorted ascending."""
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        eid = np.concatenate([np.arange(self.m, dtype=np.int64)] * 2) if self.m else np.zeros(0, np.int64)
        order = np.lexsort((dst, src))
        src, dst, eid = src[order], dst[order], eid[order]
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=self.n), out=indptr[1:])
        return indptr.astype(np.int64), dst.astype(np.int32), eid

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        if self.m:
            deg += np.bincount(self.edges[:, 0], minlength=self.n)
            deg += np.bincount(self.edges[:, 1], minlength=self.n)
        return deg

    def has_parallel_triples(self) -> bool:
        return bool(self.m) and bool((self.edge_mult >= 2).any())


def undirected_view(kg: KnowledgeGraph) -> SimpleGraph:
    """Collapse the triple multiset into an undirected simple graph."""
    n = kg.n_entities
    triples = kg.triples
    to_canon = kg.entity_to_canon
    labels = [kg.entity_labels[i] for i in kg.canonical_order]
    if triples.shape[0] == 0:
        return SimpleGraph(
            n=n,
            edges=np.zeros((0, 2), dtype=np.int64),
            edge_mult=np.zeros(0, dtype=np.int64),
            selfloop_nodes=np.zeros(0, dtype=np.int64),
            canon_to_entity=kg.canonical_order,
            entity_to_canon=to_canon,
            labels=labels,
        )
    h = to_canon[triples[:, 0]]
    t = to_canon[triples[:, 2]]
    loop_mask = h == t
    selfloops = np.unique(h[loop_mask])
    u = np.minimum(h, t)[~loop_mask]
    v = np.maximum(h, t)[~loop_mask]
    if u.size:
        key = u * np.int64(n) + v
        uniq, counts = np.unique(key, return_counts=True)
        edges = np.stack([uniq // n, uniq % n], axis=1).astype(np.int64)
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
        counts = np.zeros(0, dtype=np.int64)
    return SimpleGraph(
        n=n,
        edges=edges,
        edge_mult=counts.astype(np.int64),
        selfloop_nodes=selfloops.astype(np.int64),
        canon_to_entity=kg.canonical_order,
        entity_to_canon=to_canon,
        labels=labels,
    )


@dataclass
class DirectedView:
    """Directed multigraph view (canonical ids) for direction-aware metrics.

    Parallel triples between the same ordered pair are aggregated into a
    single weighted arc. Self-loops are kept.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    out_weight: np.ndarray


def directed_view(kg: KnowledgeGraph) -> DirectedView:
    n = kg.n_entities
    triples = kg.triples
    to_canon = kg.entity_to_canon
    if triples.shape[0] == 0:
        z = np.zeros(0, dtype=np.int64)
        return DirectedView(n=n, src=z, dst=z, weight=np.zeros(0), out_weight=np.zeros(n))
    s = to_canon[triples[:, 0]]
    d = to_canon[triples[:, 2]]
    key = s * np.int64(n) + d
    uniq, counts = np.unique(key, return_counts=True)
    src = (uniq // n).astype(np.int64)
    dst = (uniq % n).astype(np.int64)
    weight = counts.astype(np.float64)
    out_weight = np.bincount(src, weights=weight, minlength=n)
    return DirectedView(n=n, src=src, dst=dst, weight=weight, out_weight=out_weight)


def dump_jsonl(kg: KnowledgeGraph, path) -> None:
    """Write the normalized dataset dump: a header record with the label
    tables followed by one interned triple per line, grouped by split in the
    header's split order."""
    header = {
        "format_version": DUMP_FORMAT_VERSION,
        "dataset": kg.name,
        "split_selection": kg.selection,
        "entities": kg.entity_labels,
        "relations": kg.relation_labels,
        "splits": {s: int(arr.shape[0]) for s, arr in kg.split_triples.items()},
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, ensure_ascii=False, sort_keys=True) + "\n")
        for split in SELECTIONS[kg.selection]:
            if split not in kg.split_triples:
                continue
            for h, r, t in kg.split_triples[split]:
                fh.write('{"h":%d,"r":%d,"t":%d}\n' % (h, r, t))


def load_jsonl(path) -> KnowledgeGraph:
    """Re-read a :func:`dump_jsonl` file (round-trip utility)."""
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("format_version") != DUMP_FORMAT_VERSION:
            raise IngestionError(f"{path}: unsupported format_version {header.get('format_version')!r}")
        rows = [json.loads(line) for line in fh if line.strip()]
    triples = np.asarray([(r["h"], r["r"], r["t"]) for r in rows], dtype=np.int64).reshape(len(rows), 3)
    split_triples = {}
    offset = 0
    for split in SELECTIONS[header["split_selection"]]:
        if split not in header["splits"]:
            continue
        count = header["splits"][split]
        split_triples[split] = triples[offset:offset + count]
        offset += count
    entities = list(header["entities"])
    relations = list(header["relations"])
    return KnowledgeGraph(
        name=header["dataset"],
        selection=header["split_selection"],
        entity_labels=entities,
        relation_labels=relations,
        entity_ids={lab: i for i, lab in enumerate(entities)},
        relation_ids={lab: i for i, lab in enumerate(relations)},
        split_triples=split_triples,
    )

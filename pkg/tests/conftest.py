import os

import numpy as np
import pytest

from kgcx.dataset import SimpleGraph, load_dataset

BENCHMARKS = {
    "fb15k-237": {
        "entities": 14541, "relations": 237,
        "splits": {"train": 272115, "valid": 17535, "test": 20466},
        "relation_entropy": 6.5527, "max_relation_diversity": 55,
    },
    "wn18rr": {
        "entities": 40943, "relations": 11,
        "splits": {"train": 86835, "valid": 2924, "test": 2824},
        "relation_entropy": 2.2323, "max_relation_diversity": 7,
    },
    "codex-s": {
        "entities": 2034, "relations": 42,
        "splits": {"train": 32888, "valid": 3654, "test": 3656},
        "relation_entropy": 3.4038, "max_relation_diversity": 13,
    },
    "codex-m": {
        "entities": 17050, "relations": 51,
        "splits": None, "total": 185584,
        "relation_entropy": 3.8017, "max_relation_diversity": 19,
    },
    "codex-l": {
        "entities": 77951, "relations": 69,
        "splits": None, "total": 673872,
        "relation_entropy": 3.9945, "max_relation_diversity": 21,
    },
}


def data_root():
    return os.environ.get("KGCX_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def dataset_path(name):
    return os.path.join(data_root(), name)


def require_dataset(name):
    """Load a real benchmark or skip with fetch instructions."""
    path = dataset_path(name)
    if not os.path.isfile(os.path.join(path, "train.txt")):
        pytest.skip(
            f"benchmark dataset {name!r} not present under {data_root()!r}; "
            f"run scripts/fetch_datasets.py (needs network) and re-run"
        )
    return path


def write_dataset(root, train, valid=None, test=None):
    """Write triple lists as a dataset directory; returns its path."""
    root.mkdir(parents=True, exist_ok=True)
    for split, triples in (("train", train), ("valid", valid), ("test", test)):
        if triples is None:
            continue
        with open(root / f"{split}.txt", "w", encoding="utf-8") as fh:
            for h, r, t in triples:
                fh.write(f"{h}\t{r}\t{t}\n")
    return str(root)


def make_kg(tmp_path, train, valid=None, test=None, splits=None, name="synth"):
    d = write_dataset(tmp_path / name, train, valid, test)
    if splits is None:
        splits = "all" if valid is not None or test is not None else "train"
    return load_dataset(d, splits=splits)


def graph_from_edges(n, edges, mult=None, selfloops=()):
    """Directly fabricate a SimpleGraph on identity-canonical node ids."""
    edges = sorted((min(u, v), max(u, v)) for u, v in edges)
    arr = np.asarray(edges, dtype=np.int64).reshape(len(edges), 2)
    m = np.asarray(mult if mult is not None else [1] * len(edges), dtype=np.int64)
    ident = np.arange(n, dtype=np.int64)
    return SimpleGraph(
        n=n,
        edges=arr,
        edge_mult=m,
        selfloop_nodes=np.asarray(sorted(selfloops), dtype=np.int64),
        canon_to_entity=ident,
        entity_to_canon=ident.copy(),
        labels=[str(i) for i in range(n)],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

"""Label embeddings: file-backed tables and the deterministic fallback.

File format (text, UTF-8, ``\\n`` line endings):
  line 1:   ``<count> <dimension>``
  line 2+:  ``<label> <v1> <v2> ... <vd>`` separated by single spaces

Labels may not contain spaces; writers escape ``%`` as ``%25`` and spaces as
``%20``, and this loader reverses that escaping.

The fallback embedder maps any label to a deterministic unit vector whose
components come from a hash-seeded generator, so the spectral pipeline can
run without any pretrained encoder. Only determinism and unit norm are
contractual; the distribution is approximately standard normal before
normalization.
"""
from __future__ import annotations

import hashlib
import logging
import struct
from dataclasses import dataclass

import numpy as np

from .errors import IngestionError, MissingLabelError

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


def encode_label(label: str) -> str:
    return label.replace("%", "%25").replace(" ", "%20")


def decode_label(label: str) -> str:
    return label.replace("%20", " ").replace("%25", "%")


def fallback_embed(label, d: int, seed: int) -> np.ndarray:
    """Deterministic unit vector for ``label`` at dimension ``d``.

    Keyed by (blake2b(label, key=seed), component stream); identical inputs
    produce bit-identical vectors across process restarts.
    """
    if d < 1:
        raise ValueError(f"embedding dimension must be >= 1, got {d}")
    data = label if isinstance(label, bytes) else str(label).encode("utf-8")
    key = struct.pack("<Q", seed & _MASK64)
    digest = hashlib.blake2b(data, key=key, digest_size=16).digest()
    rng = np.random.Generator(np.random.PCG64(int.from_bytes(digest, "little")))
    v = rng.standard_normal(d)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:  # unreachable in practice, keeps the contract total
        v[0] = 1.0
        norm = 1.0
    return v / norm


class EmbeddingTable:
    """Immutable label -> vector map of fixed dimension.

    ``source`` is ``"file"`` or ``"fallback"``. A file table may additionally
    be given ``fallback_fill_seed`` to patch missing labels with fallback
    vectors instead of raising; every fill is counted.
    """

    def __init__(self, dimension, source, vectors=None, seed=None, fallback_fill_seed=None):
        self.dimension = int(dimension)
        self.source = source
        self.seed = seed
        self._vectors = vectors if vectors is not None else {}
        self.fallback_fill_seed = fallback_fill_seed
        self.filled_count = 0

    def __len__(self):
        return len(self._vectors)

    def __contains__(self, label):
        return label in self._vectors

    def labels(self):
        return self._vectors.keys()

    def get(self, label: str) -> np.ndarray:
        vec = self._vectors.get(label)
        if vec is not None:
            return vec
        if self.source == "fallback":
            vec = fallback_embed(label, self.dimension, self.seed)
            self._vectors[label] = vec
            return vec
        if self.fallback_fill_seed is not None:
            vec = fallback_embed(label, self.dimension, self.fallback_fill_seed)
            self._vectors[label] = vec
            self.filled_count += 1
            return vec
        raise MissingLabelError(f"label not present in embedding table: {label!r}")


def fallback_table(dimension: int, seed: int) -> EmbeddingTable:
    return EmbeddingTable(dimension, "fallback", seed=seed)


def load_embeddings(path, fallback_fill_seed=None) -> EmbeddingTable:
    """Parse the text vector format into an :class:`EmbeddingTable`."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(" ")
        if len(header) != 2:
            raise IngestionError(f"{path}: header must be '<count> <dimension>'")
        try:
            count, dim = int(header[0]), int(header[1])
        except ValueError:
            raise IngestionError(f"{path}: non-integer header fields {header!r}") from None
        if dim < 1 or count < 0:
            raise IngestionError(f"{path}: invalid header values count={count} dim={dim}")
        vectors: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split(" ")
            label = decode_label(fields[0])
            if len(fields) - 1 != dim:
                raise IngestionError(
                    f"{path}:{lineno}: dimension mismatch for label {label!r}: "
                    f"expected {dim} values, got {len(fields) - 1}"
                )
            if label in vectors:
                raise IngestionError(f"{path}:{lineno}: duplicate label {label!r}")
            try:
                vectors[label] = np.asarray([float(x) for x in fields[1:]], dtype=np.float64)
            except ValueError:
                raise IngestionError(f"{path}:{lineno}: non-numeric value for label {label!r}") from None
    if len(vectors) != count:
        raise IngestionError(f"{path}: header count {count} != parsed rows {len(vectors)}")
    table = EmbeddingTable(dim, "file", vectors=vectors, fallback_fill_seed=fallback_fill_seed)
    if fallback_fill_seed is not None:
        log.info("embedding table %s: fallback fill enabled (seed=%d)", path, fallback_fill_seed)
    return table


def write_embeddings(path, vectors: dict[str, np.ndarray], dimension: int) -> None:
    """Write the text vector format (used by tests and exporters)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(vectors)} {dimension}\n")
        for label, vec in vectors.items():
            if len(vec) != dimension:
                raise ValueError(f"vector for {label!r} has length {len(vec)}, expected {dimension}")
            fh.write(encode_label(label) + " " + " ".join(repr(float(x)) for x in vec) + "\n")


@dataclass
class CompositeVector:
    """Concatenated head-entity and relation vectors (length ``2 * d``)."""

    values: np.ndarray
    head: str
    relation: str


def composite(table: EmbeddingTable, head: str, relation: str) -> CompositeVector:
    """Head vector followed by relation vector."""
    return CompositeVector(
        values=np.concatenate([table.get(head), table.get(relation)]),
        head=head,
        relation=relation,
    )

"""Semantic complexity metrics over the triple multiset.

Relation usage entropy is computed in bits over triple-level frequencies
(duplicate triples count). Per-entity relation diversity counts distinct
relation types incident to an entity in either direction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ComputeError


@dataclass
class SemanticProfile:
    relation_count: int
    relation_entropy_bits: float
    max_relation_diversity: int
    argmax_entity: int
    relation_frequencies: np.ndarray = field(repr=False)
    per_entity_diversity: np.ndarray = field(repr=False)


def relation_count(kg) -> int:
    return kg.n_relations


def relation_frequencies(kg) -> np.ndarray:
    triples = kg.triples
    if triples.shape[0] == 0:
        raise ComputeError("relation frequencies undefined for an empty triple set")
    counts = np.bincount(triples[:, 1], minlength=kg.n_relations)
    return counts / triples.shape[0]


def relation_entropy(kg) -> float:
    """Shannon entropy (bits) of the relation distribution; 0*log 0 := 0."""
    p = relation_frequencies(kg)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def per_entity_diversity(kg) -> np.ndarray:
    """Distinct relation types incident to each entity (either direction)."""
    triples = kg.triples
    pairs = np.concatenate([triples[:, [0, 1]], triples[:, [2, 1]]], axis=0)
    uniq = np.unique(pairs, axis=0)
    return np.bincount(uniq[:, 0], minlength=kg.n_entities).astype(np.int64)


def max_relation_diversity(kg):
    """(max diversity, arg-max entity id); ties go to the smallest id."""
    if kg.n_triples == 0:
        raise ComputeError("relation diversity undefined for an empty graph")
    div = per_entity_diversity(kg)
    arg = int(np.argmax(div))
    return int(div[arg]), arg


def semantic_profile(kg) -> SemanticProfile:
    freqs = relation_frequencies(kg)
    nz = freqs[freqs > 0]
    entropy = float(-(nz * np.log2(nz)).sum())
    div = per_entity_diversity(kg)
    arg = int(np.argmax(div))
    return SemanticProfile(
        relation_count=kg.n_relations,
        relation_entropy_bits=entropy,
        max_relation_diversity=int(div[arg]),
        argmax_entity=arg,
        relation_frequencies=freqs,
        per_entity_diversity=div,
    )

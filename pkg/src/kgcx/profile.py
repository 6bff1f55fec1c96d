"""Complexity profile assembly and versioned JSON serialization.

A profile bundles the semantic and structural metric sets for one dataset
under one split selection, plus any spectral-overlap (CSG) records appended
later. Serialization is canonical: sorted keys, shortest round-trip float
formatting, no wall-clock fields, so identical inputs and configuration
produce byte-identical files. Run timestamps live in the CLI's run manifest,
not here.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__
from .dataset import KnowledgeGraph
from .errors import IngestionError
from .semantic import SemanticProfile
from .structural import StructuralProfile

PROFILE_VERSION = 1


@dataclass
class ComplexityProfile:
    dataset: str
    split_selection: str
    counts: dict
    semantic: dict
    structural: dict
    csg_records: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "profile_version": PROFILE_VERSION,
            "dataset": self.dataset,
            "split_selection": self.split_selection,
            "counts": self.counts,
            "semantic": self.semantic,
            "structural": self.structural,
            "csg_records": self.csg_records,
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def config_hash(params: dict) -> str:
    """Deterministic digest of every parameter that can affect a value."""
    blob = json.dumps(params, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def build_profile(kg: KnowledgeGraph, semantic: SemanticProfile,
                  structural: StructuralProfile, params: dict,
                  input_digests: dict) -> ComplexityProfile:
    semantic_dict = {
        "relation_count": semantic.relation_count,
        "relation_entropy_bits": semantic.relation_entropy_bits,
        "max_relation_diversity": {
            "value": semantic.max_relation_diversity,
            "entity_id": semantic.argmax_entity,
            "entity_label": kg.entity_labels[semantic.argmax_entity],
        },
        "relation_frequencies": [float(p) for p in semantic.relation_frequencies],
    }
    structural_dict = {
        "average_degree": structural.average_degree,
        "degree_entropy": structural.degree_entropy,
        "degree_centrality_mean": structural.degree_centrality_mean,
        "betweenness_centrality_mean": structural.betweenness_centrality_mean,
        "edge_betweenness_mean": structural.edge_betweenness_mean,
        "closeness_centrality_mean": structural.closeness_centrality_mean,
        "eigenvector_centrality_mean": structural.eigenvector_centrality_mean,
        "pagerank_mean": structural.pagerank_mean,
        "local_clustering_mean": structural.local_clustering_mean,
        "global_clustering": structural.global_clustering,
        "transitivity": structural.transitivity,
        "modularity": structural.modularity,
        "structural_entropy": structural.structural_entropy,
        "assortativity": structural.assortativity,
        "algebraic_connectivity": structural.algebraic_connectivity,
        "spectral_gap": structural.spectral_gap,
        "chromatic_number_estimate": structural.chromatic_number_estimate,
        "girth": structural.girth,
        "girth_infinite": structural.girth_infinite,
        "method_notes": structural.method_notes,
    }
    counts = {
        "entities": kg.n_entities,
        "relations": kg.n_relations,
        "triples": kg.n_triples,
        "triples_per_split": {s: int(a.shape[0]) for s, a in kg.split_triples.items()},
    }
    provenance = {
        "tool_version": __version__,
        "config_hash": config_hash({**params, "inputs": input_digests, "tool_version": __version__}),
        "inputs": input_digests,
    }
    return ComplexityProfile(
        dataset=kg.name,
        split_selection=kg.selection,
        counts=counts,
        semantic=semantic_dict,
        structural=structural_dict,
        provenance=provenance,
    )


def load_profile(path) -> ComplexityProfile:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("profile_version") != PROFILE_VERSION:
        raise IngestionError(
            f"{path}: unsupported profile_version {data.get('profile_version')!r}"
        )
    return ComplexityProfile(
        dataset=data["dataset"],
        split_selection=data["split_selection"],
        counts=data.get("counts", {}),
        semantic=data["semantic"],
        structural=data["structural"],
        csg_records=data.get("csg_records", []),
        provenance=data.get("provenance", {}),
    )


def save_profile(profile: ComplexityProfile, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(profile.to_json())

"""Performance-table ingestion and metric/performance correlation reports.

Inputs: complexity profiles plus a CSV of link-prediction results with header
``model,dataset,mrr,hits1,hits3,hits10`` (``hits3`` may be empty). Outputs:
``correlations.csv``, one plot-ready ``features_vs_<target>.csv`` per
performance target, and a markdown summary ranking features by |r|.

All emission is canonical (fixed column orders, datasets sorted by name,
shortest round-trip float formatting), so identical inputs give
byte-identical files regardless of input ordering.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError, IngestionError
from .profile import ComplexityProfile

PERF_HEADER = ["model", "dataset", "mrr", "hits1", "hits3", "hits10"]
TARGETS = ["mean_mrr", "mean_hits1", "mean_hits10"]

# feature extraction order: (report name, section, key)
FEATURES = [
    ("csg_full", None, None),  # special-cased: last appended spectral record
    ("relation_entropy", "semantic", "relation_entropy_bits"),
    ("relation_count", "semantic", "relation_count"),
    ("max_relation_diversity", "semantic", "max_relation_diversity"),
    ("average_degree", "structural", "average_degree"),
    ("degree_entropy", "structural", "degree_entropy"),
    ("degree_centrality_mean", "structural", "degree_centrality_mean"),
    ("betweenness_centrality_mean", "structural", "betweenness_centrality_mean"),
    ("edge_betweenness_mean", "structural", "edge_betweenness_mean"),
    ("closeness_centrality_mean", "structural", "closeness_centrality_mean"),
    ("eigenvector_centrality_mean", "structural", "eigenvector_centrality_mean"),
    ("pagerank_mean", "structural", "pagerank_mean"),
    ("local_clustering_mean", "structural", "local_clustering_mean"),
    ("global_clustering", "structural", "global_clustering"),
    ("transitivity", "structural", "transitivity"),
    ("modularity", "structural", "modularity"),
    ("structural_entropy", "structural", "structural_entropy"),
    ("assortativity", "structural", "assortativity"),
    ("algebraic_connectivity", "structural", "algebraic_connectivity"),
    ("spectral_gap", "structural", "spectral_gap"),
    ("chromatic_number_estimate", "structural", "chromatic_number_estimate"),
    ("girth", "structural", "girth"),
]


@dataclass
class PerfRow:
    model: str
    dataset: str
    mrr: float
    hits1: float
    hits3: float | None
    hits10: float


@dataclass
class PerformanceTable:
    rows: list[PerfRow]

    def datasets(self):
        return sorted({r.dataset for r in self.rows})


def load_performance(path) -> PerformanceTable:
    """Parse and validate the model-performance CSV."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestionError(f"{path}: empty file") from None
        if [h.strip() for h in header] != PERF_HEADER:
            raise IngestionError(
                f"{path}: header must be {','.join(PERF_HEADER)!r}, got {','.join(header)!r}"
            )
        rows = []
        problems = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec or all(not c.strip() for c in rec):
                continue
            if len(rec) != 6:
                problems.append(f"line {lineno}: expected 6 fields, got {len(rec)}")
                continue
            model, dataset = rec[0], rec[1]
            try:
                mrr = float(rec[2])
                hits1 = float(rec[3])
                hits3 = float(rec[4]) if rec[4].strip() != "" else None
                hits10 = float(rec[5])
            except ValueError:
                problems.append(f"line {lineno}: non-numeric metric value")
                continue
            for label, v in (("mrr", mrr), ("hits1", hits1), ("hits3", hits3), ("hits10", hits10)):
                if v is not None and not 0.0 <= v <= 1.0:
                    problems.append(f"line {lineno}: {label}={v} outside [0, 1]")
            ordered = [hits1] + ([hits3] if hits3 is not None else []) + [hits10]
            if any(a > b for a, b in zip(ordered, ordered[1:])):
                problems.append(f"line {lineno}: hits@k must be non-decreasing in k")
            if mrr < hits1:
                problems.append(f"line {lineno}: mrr={mrr} below hits1={hits1}")
            rows.append(PerfRow(model, dataset, mrr, hits1, hits3, hits10))
        if problems:
            raise IngestionError(f"{path}: invalid rows:\n  " + "\n  ".join(problems))
    return PerformanceTable(rows)


def mean_performance(table: PerformanceTable) -> dict:
    """Unweighted per-dataset means across models."""
    acc: dict[str, list[PerfRow]] = {}
    for row in table.rows:
        acc.setdefault(row.dataset, []).append(row)
    out = {}
    for dataset in sorted(acc):
        rows = acc[dataset]
        out[dataset] = {
            "mean_mrr": sum(r.mrr for r in rows) / len(rows),
            "mean_hits1": sum(r.hits1 for r in rows) / len(rows),
            "mean_hits10": sum(r.hits10 for r in rows) / len(rows),
        }
    return out


def pearson(x, y) -> float:
    """Two-pass Pearson correlation; undefined inputs raise AnalysisError."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise AnalysisError("pearson requires two equal-length vectors")
    if len(x) < 3:
        raise AnalysisError(f"pearson requires at least 3 points, got {len(x)}")
    xm = x - x.mean()
    ym = y - y.mean()
    denom = math.sqrt(float((xm * xm).sum()) * float((ym * ym).sum()))
    if denom == 0.0:
        raise AnalysisError("pearson undefined: an input has zero variance")
    return float((xm * ym).sum() / denom)


def extract_features(profile: ComplexityProfile) -> dict:
    """Numeric feature vector from one profile.

    ``csg_full`` comes from the most recently appended spectral record; the
    diversity maximum unwraps its value field; infinite girth and undefined
    metrics are omitted (per-feature n shrinks accordingly).
    """
    feats = {}
    for name, section, key in FEATURES:
        if name == "csg_full":
            if profile.csg_records:
                feats[name] = float(profile.csg_records[-1]["csg_full"])
            continue
        value = profile.semantic.get(key) if section == "semantic" else profile.structural.get(key)
        if isinstance(value, dict):
            value = value.get("value")
        if value is None:
            continue
        feats[name] = float(value)
    return feats


def normalize_features(values_by_dataset: dict, method: str = "minmax") -> tuple[dict, dict]:
    """Scale each feature across datasets: ``minmax`` to [0, 1] (default,
    figure-friendly) or ``zscore``.

    Returns (normalized values, flags); constant features map to 0.5 (minmax)
    or 0.0 (zscore) and are flagged.
    """
    if method not in ("minmax", "zscore"):
        raise AnalysisError(f"unknown normalization method {method!r}")
    datasets = sorted(values_by_dataset)
    if len(datasets) < 2:
        raise AnalysisError("feature normalization requires at least 2 profiles")
    names = sorted({n for d in datasets for n in values_by_dataset[d]})
    normalized = {d: {} for d in datasets}
    flags = {}
    for name in names:
        present = [d for d in datasets if name in values_by_dataset[d]]
        vals = np.array([values_by_dataset[d][name] for d in present])
        if method == "minmax":
            lo, hi = float(vals.min()), float(vals.max())
            if hi == lo:
                flags[name] = "constant"
                for d in present:
                    normalized[d][name] = 0.5
            else:
                for d, v in zip(present, vals):
                    normalized[d][name] = (float(v) - lo) / (hi - lo)
        else:
            mu, sd = float(vals.mean()), float(vals.std())
            if sd == 0.0:
                flags[name] = "constant"
                for d in present:
                    normalized[d][name] = 0.0
            else:
                for d, v in zip(present, vals):
                    normalized[d][name] = (float(v) - mu) / sd
    return normalized, flags


@dataclass
class CorrelationReport:
    entries: list            # dicts: feature, target, r (or None), n, note
    datasets: list
    means: dict
    normalized: dict
    features: dict


def build_report(profiles: list[ComplexityProfile], table: PerformanceTable,
                 normalization: str = "minmax") -> CorrelationReport:
    by_name = {}
    for p in profiles:
        by_name[p.dataset] = p
    overlap = sorted(set(by_name) & set(table.datasets()))
    if len(overlap) < 3:
        raise AnalysisError(
            f"need at least 3 datasets present in both profiles and the performance table, "
            f"have {len(overlap)}: {overlap}"
        )
    means = {d: m for d, m in mean_performance(table).items() if d in overlap}
    features = {d: extract_features(by_name[d]) for d in overlap}
    normalized, flags = normalize_features(features, method=normalization)

    entries = []
    feature_names = [name for name, _, _ in FEATURES]
    for name in feature_names:
        present = [d for d in overlap if name in features[d]]
        for target in TARGETS:
            entry = {"feature": name, "target": target, "n": len(present), "r": None, "note": ""}
            if len(present) < 3:
                entry["note"] = "fewer than 3 datasets with this feature"
            elif flags.get(name) == "constant":
                entry["note"] = "constant feature (zero variance)"
            else:
                x = [features[d][name] for d in present]
                y = [means[d][target] for d in present]
                try:
                    entry["r"] = pearson(x, y)
                except AnalysisError as exc:
                    entry["note"] = str(exc)
            entries.append(entry)
    return CorrelationReport(entries=entries, datasets=overlap, means=means,
                             normalized=normalized, features=features)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report_files(report: CorrelationReport, out_dir) -> list[str]:
    """Emit correlations.csv, features_vs_*.csv and report.md; returns the
    file names written."""
    os.makedirs(out_dir, exist_ok=True)
    written = []

    path = os.path.join(out_dir, "correlations.csv")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("feature,target,pearson_r,n,note\n")
        for e in report.entries:
            fh.write(f"{e['feature']},{e['target']},{_fmt(e['r'])},{e['n']},{e['note']}\n")
    written.append("correlations.csv")

    for target in TARGETS:
        suffix = target.replace("mean_", "")
        path = os.path.join(out_dir, f"features_vs_{suffix}.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"dataset,feature,raw_value,normalized_value,{target}\n")
            for dataset in report.datasets:
                for name, _, _ in FEATURES:
                    if name not in report.features[dataset]:
                        continue
                    raw = report.features[dataset][name]
                    norm = report.normalized[dataset][name]
                    fh.write(
                        f"{dataset},{name},{_fmt(raw)},{_fmt(norm)},"
                        f"{_fmt(report.means[dataset][target])}\n"
                    )
        written.append(f"features_vs_{suffix}.csv")

    path = os.path.join(out_dir, "report.md")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# Complexity / performance correlation report\n\n")
        fh.write(f"Datasets: {', '.join(report.datasets)}\n\n")
        for target in TARGETS:
            fh.write(f"## Features ranked by |r| against {target}\n\n")
            fh.write("| rank | feature | r | n |\n|---|---|---|---|\n")
            ranked = [e for e in report.entries if e["target"] == target and e["r"] is not None]
            ranked.sort(key=lambda e: (-abs(e["r"]), e["feature"]))
            for i, e in enumerate(ranked, start=1):
                fh.write(f"| {i} | {e['feature']} | {_fmt(e['r'])} | {e['n']} |\n")
            skipped = [e for e in report.entries if e["target"] == target and e["r"] is None]
            if skipped:
                fh.write("\nSkipped: " + ", ".join(f"{e['feature']} ({e['note']})" for e in skipped) + "\n")
            fh.write("\n")
    written.append("report.md")
    return written


def write_sweep_csv(rows: list[dict], path) -> None:
    """Plot-ready sweep table with a fixed column order."""
    cols = ["dataset", "k", "M", "n_samples", "seed", "csg_full", "lambda_min", "lambda_max"]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[c]) for c in cols) + "\n")

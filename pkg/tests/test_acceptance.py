"""Acceptance suite: one test per criterion, each printing a PASS line.

Benchmark-dataset criteria need the real datasets under ``$KGCX_DATA`` (or
``./data``); they skip with fetch instructions when the data is absent.
Everything else runs self-contained.
"""
import json
import os
import subprocess
import sys
import time

import numpy as np
import pytest
from conftest import BENCHMARKS, dataset_path, make_kg, require_dataset, write_dataset
from oracles import (
    adjacency_from_edges,
    brute_betweenness,
    brute_closeness,
    girth_remove_edge,
    greedy_coloring_reference,
    modularity_pairsum,
    naive_normalized_laplacian_eigs,
    naive_similarity,
    pagerank_linear,
    pearson_textbook,
    triangle_enum,
)
from test_spectral import gaussian_samples

from kgcx.centrality import eigenvector_centrality, largest_component, pagerank
from kgcx.dataset import directed_view, load_dataset, undirected_view
from kgcx.embeddings import fallback_table
from kgcx.graphspectra import algebraic_connectivity, spectral_gap
from kgcx.community import modularity
from kgcx.report import pearson
from kgcx.semantic import max_relation_diversity, relation_count, relation_entropy
from kgcx.spectral import (
    CsgConfig,
    build_similarity,
    laplacian_spectrum,
    sweep,
)
from kgcx.structural import (
    assortativity,
    chromatic_estimate,
    clustering,
    girth,
)
from kgcx.centrality import betweenness, closeness_centrality, degree_centrality

ALL_BENCHMARKS = sorted(BENCHMARKS)


def report_pass(name):
    print(f"\nACCEPTANCE PASS: {name}")


# ----------------------------------------------------------------------------
# Dataset-count validation (exact, < 30 s per dataset)
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ALL_BENCHMARKS)
def test_dataset_counts(name):
    path = require_dataset(name)
    spec = BENCHMARKS[name]
    t0 = time.monotonic()
    kg = load_dataset(path, splits="all")
    elapsed = time.monotonic() - t0
    assert elapsed < 30.0, f"load took {elapsed:.1f}s"
    if spec["splits"]:
        # per-split counts are stated for these datasets
        assert kg.n_entities == spec["entities"]
        assert kg.n_relations == spec["relations"]
        for split, count in spec["splits"].items():
            assert kg.split_triples[split].shape[0] == count, split
        assert kg.n_triples == sum(spec["splits"].values())
        matched = "all"
    else:
        # only a dataset total is stated; accept it under either split
        # selection and record which one matched
        totals = {"all": kg.n_triples}
        kg_train = load_dataset(path, splits="train")
        totals["train"] = kg_train.n_triples
        matches = [s for s, t in totals.items() if t == spec["total"]]
        assert matches, f"no split selection yields {spec['total']} triples: {totals}"
        matched = matches[0]
        kg_sel = kg if matched == "all" else kg_train
        assert kg_sel.n_entities == spec["entities"]
        assert kg_sel.n_relations == spec["relations"]
    report_pass(f"dataset counts {name} (splits={matched}, {elapsed:.1f}s)")


def test_codex_s_edge_count_regression():
    path = require_dataset("codex-s")
    kg = load_dataset(path, splits="all")
    g = undirected_view(kg)
    pairs = set()
    for h, _, t in kg.triples:
        if h != t:
            pairs.add((min(h, t), max(h, t)))
    assert g.m == len(pairs)
    frozen = os.path.join(os.path.dirname(__file__), "frozen_constants.json")
    if os.path.isfile(frozen):
        expected = json.load(open(frozen)).get("codex_s_simple_edges")
        if expected is not None:
            assert g.m == expected
    report_pass(f"codex-s simple-edge count == pair-set oracle ({g.m})")


# ----------------------------------------------------------------------------
# Relation-type cardinality (exact)
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ALL_BENCHMARKS)
def test_relation_type_cardinality(name):
    path = require_dataset(name)
    kg = load_dataset(path, splits="all")
    assert relation_count(kg) == BENCHMARKS[name]["relations"]
    report_pass(f"relation types {name} = {kg.n_relations}")


# ----------------------------------------------------------------------------
# Relation entropy (+-0.02 bits under at least one split selection, < 10 s)
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ALL_BENCHMARKS)
def test_relation_entropy_benchmark(name):
    path = require_dataset(name)
    expected = BENCHMARKS[name]["relation_entropy"]
    t0 = time.monotonic()
    results = {}
    for splits in ("all", "train"):
        try:
            results[splits] = relation_entropy(load_dataset(path, splits=splits))
        except Exception as exc:  # missing split files etc.
            results[splits] = f"unavailable: {exc}"
    elapsed = time.monotonic() - t0
    matches = [s for s, v in results.items()
               if isinstance(v, float) and abs(v - expected) <= 0.02]
    assert matches, f"no split selection within 0.02 of {expected}: {results}"
    assert elapsed < 10.0 * len(results)
    report_pass(f"relation entropy {name}: {results[matches[0]]:.4f} "
                f"matches {expected} under splits={matches[0]}")


# ----------------------------------------------------------------------------
# Max relation diversity (exact under at least one split selection)
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ALL_BENCHMARKS)
def test_max_relation_diversity_benchmark(name):
    path = require_dataset(name)
    expected = BENCHMARKS[name]["max_relation_diversity"]
    results = {}
    for splits in ("all", "train"):
        try:
            kg = load_dataset(path, splits=splits)
            results[splits] = (max_relation_diversity(kg), kg)
        except Exception as exc:
            results[splits] = (f"unavailable: {exc}", None)
    matches = [s for s, (v, _) in results.items()
               if isinstance(v, tuple) and v[0] == expected]
    if not matches:
        # attach the brute-force per-entity recount for the report
        recounts = {}
        for splits, (v, kg) in results.items():
            if kg is None:
                continue
            best = {}
            for h, r, t in kg.triples:
                best.setdefault(int(h), set()).add(int(r))
                best.setdefault(int(t), set()).add(int(r))
            recounts[splits] = max(len(s) for s in best.values())
        computed = {s: v for s, (v, _) in results.items()}
        pytest.fail(
            f"max relation diversity mismatch for {name}: expected {expected}, "
            f"computed {computed}; brute-force recount per selection: {recounts}"
        )
    report_pass(f"max relation diversity {name} = {expected} under splits={matches[0]}")


# ----------------------------------------------------------------------------
# CSG property suite
# ----------------------------------------------------------------------------

def test_csg_invariants_on_randomized_runs(rng):
    checked = 0
    for _ in range(12):
        m = int(rng.integers(2, 10))
        sizes = rng.integers(2, 20, size=m).tolist()
        centers = [rng.standard_normal(5) * rng.uniform(0, 4) for _ in range(m)]
        samples = gaussian_samples(rng, sizes, centers, 1.0, d=5)
        k = int(rng.integers(1, min(8, samples.total - 1) + 1))
        S = build_similarity(samples, CsgConfig(k=k))
        assert np.allclose(S.sum(axis=1), 1.0, atol=1e-9)
        res = laplacian_spectrum(S)
        assert res.eigenvalues[0] >= -1e-8
        assert res.eigenvalues[-1] <= 2.0 + 1e-8
        assert res.eigenvalues[0] <= 1e-8
        vals = [res.csg_at(kc) for kc in range(1, m)]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
        checked += 1
    assert checked == 12
    report_pass("CSG invariants: eigenvalue bounds, lambda_0, row sums, cutoff monotonicity")


def test_csg_brute_force_equivalence_20_instances():
    rng = np.random.default_rng(777)
    for instance in range(20):
        m = int(rng.integers(2, 9))  # M <= 8
        sizes = rng.integers(2, 200 // m + 1, size=m)
        sizes = np.minimum(sizes, 24).tolist()  # keep the O(n^2) oracle quick
        centers = [rng.standard_normal(4) * rng.uniform(0, 3) for _ in range(m)]
        samples = gaussian_samples(rng, sizes, centers, 1.0, d=4)
        assert samples.total <= 200
        k = int(rng.integers(1, min(7, samples.total - 1) + 1))
        S = build_similarity(samples, CsgConfig(k=k))
        res = laplacian_spectrum(S)
        S_naive = naive_similarity(samples.X, samples.class_of.tolist(), m, k)
        assert np.array_equal(S, S_naive), f"instance {instance}"
        eig_naive = naive_normalized_laplacian_eigs(S_naive)
        assert np.max(np.abs(res.eigenvalues - eig_naive)) < 1e-8, f"instance {instance}"
    report_pass("CSG full-pipeline equality with naive implementation (20 instances)")


def test_csg_separation_ordering_10_seeds():
    wins = 0
    for seed in range(10):
        rng = np.random.default_rng(seed)
        sizes = [40, 40, 40]
        far = [np.zeros(6), np.full(6, 60.0), np.full(6, -60.0)]
        near = [np.zeros(6), np.full(6, 0.4), np.full(6, -0.4)]
        sep = gaussian_samples(rng, sizes, far, 1.0)
        rng = np.random.default_rng(seed)
        overlap = gaussian_samples(rng, sizes, near, 1.0)
        cfg = CsgConfig(k=10)
        csg_sep = laplacian_spectrum(build_similarity(sep, cfg)).csg_full
        csg_overlap = laplacian_spectrum(build_similarity(overlap, cfg)).csg_full
        if csg_sep < csg_overlap:
            wins += 1
    assert wins == 10
    report_pass("CSG separation ordering: well-separated < overlapping for 10/10 seeds")


def test_csg_k_trend_synthetic(tmp_path):
    triples = [(f"h{c}_{i}", f"rel{c}", f"tail{c}") for c in range(10) for i in range(30)]
    kg = make_kg(tmp_path, triples)
    rows = sweep(kg, fallback_table(32, 0), [5, 10, 20, 40], ["all"],
                 CsgConfig(n_samples=120, seed=0))
    vals = [r["csg_full"] for r in rows]
    assert [r["k"] for r in rows] == [5, 10, 20, 40]
    assert all(a <= b + 1e-9 for a, b in zip(vals, vals[1:])), vals
    report_pass(f"CSG k-trend on synthetic clusters: {['%.4f' % v for v in vals]}")


def test_csg_k_trend_codex_s():
    path = require_dataset("codex-s")
    kg = load_dataset(path, splits="all")
    t0 = time.monotonic()
    rows = sweep(kg, fallback_table(768, 42), [5, 10, 20, 40], [100],
                 CsgConfig(n_samples=120, seed=42))
    elapsed = time.monotonic() - t0
    vals = [r["csg_full"] for r in rows]
    assert all(a <= b + 1e-9 for a, b in zip(vals, vals[1:])), vals
    assert elapsed < 300.0, f"sweep took {elapsed:.0f}s"
    report_pass(f"CSG k-trend on codex-s (fallback embeddings, {elapsed:.0f}s): "
                f"{['%.4f' % v for v in vals]}")


# ----------------------------------------------------------------------------
# Structural-metric oracle suite: 25 seeded random graphs, n <= 60
# ----------------------------------------------------------------------------

def random_triple_graph(rng, tmp_path, idx):
    n = int(rng.integers(8, 61))
    n_rel = int(rng.integers(1, 6))
    triples = []
    for _ in range(int(rng.integers(n, 4 * n))):
        h, t = (int(x) for x in rng.integers(0, n, size=2))
        triples.append((f"v{h:03d}", f"r{rng.integers(n_rel)}", f"v{t:03d}"))
    return make_kg(tmp_path / f"g{idx}", triples)


def test_structural_oracle_suite(tmp_path):
    rng = np.random.default_rng(2024)
    for idx in range(25):
        kg = random_triple_graph(rng, tmp_path, idx)
        g = undirected_view(kg)
        n = g.n
        edges = [tuple(e) for e in g.edges.tolist()]
        adj = adjacency_from_edges(n, edges)
        deg = g.degrees

        # degree centrality
        dc = degree_centrality(g)
        expected_dc = deg / (n - 1) if n > 1 else np.zeros(n)
        assert np.allclose(dc, expected_dc, atol=1e-12)

        # closeness (Wasserman-Faust)
        assert np.allclose(closeness_centrality(g), brute_closeness(adj), atol=1e-6)

        # betweenness, node + edge, exact
        node_b, edge_b, _ = betweenness(g)
        exp_node, exp_edge = brute_betweenness(adj, edges)
        assert np.allclose(node_b, exp_node, atol=1e-6)
        assert np.allclose(edge_b, exp_edge, atol=1e-6)

        # eigenvector centrality vs dense principal eigenvector
        comp = largest_component(g)
        if len(comp) >= 2:
            vec, lam, _, residual, _ = eigenvector_centrality(g)
            assert residual <= 1e-6
            dense = np.zeros((len(comp), len(comp)))
            pos = {int(v): i for i, v in enumerate(comp)}
            for u, v in edges:
                if u in pos and v in pos:
                    dense[pos[u], pos[v]] = dense[pos[v], pos[u]] = 1.0
            w, U = np.linalg.eigh(dense)
            principal = np.abs(U[:, -1])
            assert np.allclose(vec[comp], principal, atol=1e-6)
            assert lam == pytest.approx(float(w[-1]), abs=1e-6)

        # pagerank vs dense linear solve
        dv = directed_view(kg)
        pr = pagerank(dv)
        assert np.allclose(pr, pagerank_linear(dv.n, dv.src, dv.dst, dv.weight, dv.out_weight),
                           atol=1e-6)

        # clustering vs triangle enumeration
        tri = triangle_enum(adj)
        local = np.zeros(n)
        mask = deg >= 2
        local[mask] = 2.0 * tri[mask] / (deg[mask] * (deg[mask] - 1.0))
        lm, gc, tr = clustering(g)
        assert lm == pytest.approx(float(local.mean()), abs=1e-6)
        wedges = float((deg * (deg - 1) / 2).sum())
        if wedges > 0:
            assert tr == pytest.approx(float(tri.sum()) / wedges, abs=1e-6)

        # assortativity vs direct Pearson
        value, reason = assortativity(g)
        if reason is None:
            xs, ys = [], []
            for u, v in edges:
                xs += [deg[u], deg[v]]
                ys += [deg[v], deg[u]]
            assert value == pytest.approx(pearson_textbook(xs, ys), abs=1e-6)

        # modularity formula on a fixed random partition
        if g.m:
            labels = rng.integers(0, 3, size=n)
            assert modularity(g, labels) == pytest.approx(
                modularity_pairsum(n, edges, labels), abs=1e-6)

        # spectral measures vs dense eigendecomposition
        if len(comp) >= 2:
            pos = {int(v): i for i, v in enumerate(comp)}
            A = np.zeros((len(comp), len(comp)))
            for u, v in edges:
                if u in pos and v in pos:
                    A[pos[u], pos[v]] = A[pos[v], pos[u]] = 1.0
            L = np.diag(A.sum(axis=1)) - A
            lap_eigs = np.sort(np.linalg.eigvalsh(L))
            adj_eigs = np.sort(np.linalg.eigvalsh(A))
            ac, _ = algebraic_connectivity(g, seed=idx)
            assert ac == pytest.approx(float(lap_eigs[1]), abs=1e-6)
            gap, lam1, lam2, _ = spectral_gap(g, seed=idx)
            assert gap == pytest.approx(float(adj_eigs[-1] - adj_eigs[-2]), abs=1e-6)

        # girth conventions + oracle
        gv = girth(g)
        if g.selfloop_nodes.size:
            assert gv == 1
        elif g.has_parallel_triples():
            assert gv == 2
        else:
            assert gv == girth_remove_edge(n, edges)

        # greedy chromatic bound vs independent reimplementation
        assert chromatic_estimate(g) == greedy_coloring_reference(adj, deg)
    report_pass("structural oracle suite: 25 random graphs, all metrics within 1e-6/exact")


def test_structural_closed_forms():
    from conftest import graph_from_edges

    star = graph_from_edges(5, [(0, i) for i in range(1, 5)])
    assert degree_centrality(star).mean() == pytest.approx(0.4)
    cyc5 = graph_from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    node_b, _, _ = betweenness(cyc5)
    assert np.allclose(node_b, 1.0 / 6.0, atol=1e-12)
    tri = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert clustering(tri) == (1.0, 1.0, 1.0)
    assert girth(cyc5) == 5
    k5 = graph_from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert chromatic_estimate(k5) == 5
    path3 = graph_from_edges(3, [(0, 1), (1, 2)])
    ac, _ = algebraic_connectivity(path3)
    assert ac == pytest.approx(1.0, abs=1e-9)
    gap, *_ = spectral_gap(path3)
    assert gap == pytest.approx(np.sqrt(2), abs=1e-9)
    value, _ = assortativity(star)
    assert value == pytest.approx(-1.0, abs=1e-12)
    report_pass("structural closed forms: star, cycle, clique, path")


# ----------------------------------------------------------------------------
# PageRank stochasticity + eigenvector residual on the five benchmarks
# ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ALL_BENCHMARKS)
def test_pagerank_and_eigenvector_on_benchmark(name):
    path = require_dataset(name)
    kg = load_dataset(path, splits="all")
    pr = pagerank(directed_view(kg))
    assert abs(pr.sum() - 1.0) <= 1e-6
    g = undirected_view(kg)
    vec, lam, iters, residual, _ = eigenvector_centrality(g)
    assert residual <= 1e-6
    report_pass(f"pagerank sum=1 and eigenvector residual {residual:.2e} on {name}")


# ----------------------------------------------------------------------------
# Correlation engine
# ----------------------------------------------------------------------------

def test_correlation_engine():
    rng = np.random.default_rng(4242)
    for _ in range(100):
        x = rng.standard_normal(int(rng.integers(3, 40)))
        y = rng.standard_normal(len(x))
        assert pearson(x, y) == pytest.approx(pearson_textbook(x.tolist(), y.tolist()),
                                              abs=1e-12)
    mrr = np.array([0.1, 0.4, 0.7, 0.9])
    metric = 1.0 - mrr
    assert pearson(metric, mrr) == pytest.approx(-1.0, abs=1e-12)
    # The published mean correlation between the spectral-overlap value and
    # MRR (-0.644) depends on an unpublished model suite; it is a reference
    # point, not a bound.
    report_pass("correlation engine: textbook oracle (100 pairs) and r = -1 construction")


# ----------------------------------------------------------------------------
# CLI determinism (byte-identical primary outputs, any thread count)
# ----------------------------------------------------------------------------

def run_cli(args):
    return subprocess.run([sys.executable, "-m", "kgcx.cli", *args],
                          capture_output=True, text=True)


def test_cli_determinism(tmp_path):
    dataset = write_dataset(tmp_path / "ds",
                            [(f"h{c}_{i}", f"rel{c}", f"tail{c}")
                             for c in range(6) for i in range(12)],
                            valid=[("h0_0", "rel0", "tail1")],
                            test=[("h1_0", "rel1", "tail0")])
    perf = tmp_path / "perf.csv"
    outputs = {}
    for run, threads in (("a", "1"), ("b", "2"), ("c", "1")):
        out = tmp_path / run
        common = ["--seed", "7", "--threads", threads, "--out", str(out)]
        assert run_cli(["profile", dataset, *common]).returncode == 0
        assert run_cli(["csg", dataset, "--classes", "6", "--k", "5",
                        "--fallback-dim", "16", *common]).returncode == 0
        assert run_cli(["sweep", dataset, "--k", "3:9:3", "--classes", "6",
                        "--fallback-dim", "8", *common]).returncode == 0
        assert run_cli(["dump", dataset, *common]).returncode == 0
        if run == "a":
            rows = ["model,dataset,mrr,hits1,hits3,hits10"]
            for i, name in enumerate(["ds", "x1", "x2"]):
                prof = json.loads((out / "ds.profile.json").read_text())
                prof["dataset"] = name
                prof["semantic"]["relation_entropy_bits"] += i
                (tmp_path / f"{name}.profile.json").write_text(json.dumps(prof))
                rows.append(f"m,{name},{0.2 + 0.1 * i},{0.1 * i},,{0.5 + 0.1 * i}")
            perf.write_text("\n".join(rows) + "\n")
        assert run_cli(["correlate", "--profiles",
                        *(str(tmp_path / f"{n}.profile.json") for n in ["ds", "x1", "x2"]),
                        "--perf", str(perf), *common]).returncode == 0
        outputs[run] = {
            name: (out / name).read_bytes()
            for name in ["ds.profile.json", "ds.csg.json", "ds.sweep.csv", "dataset.jsonl",
                         "correlations.csv", "features_vs_mrr.csv", "features_vs_hits1.csv",
                         "features_vs_hits10.csv", "report.md"]
        }
    assert outputs["a"] == outputs["b"], "outputs differ across --threads"
    assert outputs["a"] == outputs["c"], "outputs differ across identical reruns"
    report_pass("CLI determinism: byte-identical outputs across reruns and thread counts")

"""Command-line interface.

Subcommands: ``profile``, ``csg``, ``sweep``, ``correlate``, ``dump``. Every
run resolves a single seed into named per-stage sub-seeds and writes a
``run_manifest.json`` (resolved configuration, input digests, wall-clock
timestamp) next to its outputs. Primary outputs are byte-identical across
reruns with the same flags, seed, and inputs, for any ``--threads`` value.

Exit codes: 0 ok, 2 input error, 3 computation error, 4 analysis error.
"""
from __future__ import annotations

import argparse
import datetime
import json
import os
import sys

from . import __version__
from .dataset import SELECTIONS, SPLIT_FILES, dump_jsonl, load_dataset
from .embeddings import fallback_table, load_embeddings
from .errors import IngestionError, KgcxError
from .profile import build_profile, load_profile, save_profile
from .report import build_report, load_performance, write_report_files, write_sweep_csv
from .semantic import semantic_profile
from .spectral import CsgConfig, compute_csg, sweep
from .structural import StructuralConfig, structural_profile
from .util import resolve_threads, sha256_file

DEFAULT_FALLBACK_DIM = 768


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KgcxError as exc:
        print(f"kgcx: error: {exc}", file=sys.stderr)
        return exc.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgcx", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"kgcx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="master seed (default 42)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: all cores, or $KGCX_THREADS)")
    common.add_argument("--out", default=".", help="output directory (default: cwd)")

    p = sub.add_parser("profile", parents=[common],
                       help="semantic + structural complexity profile for a dataset")
    p.add_argument("dataset_dir")
    p.add_argument("--splits", choices=sorted(SELECTIONS), default="all")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("csg", parents=[common],
                       help="spectral class-overlap (CSG) value for a dataset")
    p.add_argument("dataset_dir")
    p.add_argument("--splits", choices=sorted(SELECTIONS), default="all")
    p.add_argument("--k", type=int, default=50, help="neighbor count (default 50)")
    p.add_argument("--samples", type=int, default=120, help="per-class sample cap (default 120)")
    p.add_argument("--classes", default="100",
                   help="'all' or a class count M (default 100)")
    p.add_argument("--class-selection", choices=["top", "random"], default="top",
                   help="how M classes are chosen (default: top incoming-triple frequency)")
    p.add_argument("--k-c", type=int, default=None, help="gap cutoff (default M-1)")
    p.add_argument("--embeddings", default=None, help="vector file; omit to use the fallback embedder")
    p.add_argument("--fallback-dim", type=int, default=DEFAULT_FALLBACK_DIM)
    p.add_argument("--allow-fallback-fill", action="store_true",
                   help="patch labels missing from the vector file with fallback vectors")
    p.add_argument("--profile", default=None,
                   help="existing profile JSON to append the record to")
    p.add_argument("--dump-spectral", action="store_true",
                   help="also write <dataset>.spectral.json (S row-major + spectrum)")
    p.set_defaults(func=cmd_csg)

    p = sub.add_parser("sweep", parents=[common],
                       help="CSG over a k range at fixed class count")
    p.add_argument("dataset_dir")
    p.add_argument("--splits", choices=sorted(SELECTIONS), default="all")
    p.add_argument("--k", required=True, help="range start:stop:step (inclusive) or comma list")
    p.add_argument("--classes", default="100", help="'all' or a class count M (default 100)")
    p.add_argument("--class-selection", choices=["top", "random"], default="top")
    p.add_argument("--samples", type=int, default=120)
    p.add_argument("--embeddings", default=None)
    p.add_argument("--fallback-dim", type=int, default=DEFAULT_FALLBACK_DIM)
    p.add_argument("--allow-fallback-fill", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("correlate", parents=[common],
                       help="correlate profiles against a model-performance table")
    p.add_argument("--profiles", nargs="+", required=True)
    p.add_argument("--perf", required=True)
    p.add_argument("--normalize", choices=["minmax", "zscore"], default="minmax",
                   help="feature scaling for the features_vs_* files (default minmax)")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("dump", parents=[common],
                       help="normalized dataset dump (dataset.jsonl)")
    p.add_argument("dataset_dir")
    p.add_argument("--splits", choices=sorted(SELECTIONS), default="all")
    p.set_defaults(func=cmd_dump)
    return parser


def _dataset_digests(dataset_dir, splits):
    return {
        SPLIT_FILES[s]: sha256_file(os.path.join(dataset_dir, SPLIT_FILES[s]))
        for s in SELECTIONS[splits]
        if os.path.isfile(os.path.join(dataset_dir, SPLIT_FILES[s]))
    }


def _write_manifest(args, inputs: dict, outputs: list, extra: dict | None = None):
    os.makedirs(args.out, exist_ok=True)
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    config["threads_resolved"] = resolve_threads(args.threads)
    manifest = {
        "tool_version": __version__,
        "command": args.command,
        "resolved_config": config,
        "inputs": inputs,
        "outputs": outputs,
        "timestamp_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if extra:
        manifest.update(extra)
    path = os.path.join(args.out, "run_manifest.json")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _load_table(args):
    if args.embeddings:
        fill = args.seed if args.allow_fallback_fill else None
        table = load_embeddings(args.embeddings, fallback_fill_seed=fill)
    else:
        table = fallback_table(args.fallback_dim, args.seed)
    return table


def _parse_classes(value: str):
    if value == "all":
        return "all", None
    try:
        m = int(value)
    except ValueError:
        raise IngestionError(f"--classes must be 'all' or an integer, got {value!r}") from None
    return "count", m


def _parse_k_range(value: str):
    try:
        if "," in value:
            return [int(x) for x in value.split(",") if x.strip()]
        parts = value.split(":")
        if len(parts) == 1:
            return [int(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, step = (int(x) for x in parts)
        if step <= 0 or stop < start:
            raise ValueError
    except ValueError:
        raise IngestionError(
            f"--k must be an int, comma list, or start:stop:step, got {value!r}"
        ) from None
    return list(range(start, stop + 1, step))


def cmd_profile(args) -> int:
    kg = load_dataset(args.dataset_dir, splits=args.splits)
    cfg = StructuralConfig(seed=args.seed, threads=args.threads)
    sem = semantic_profile(kg)
    struct = structural_profile(kg, cfg)
    inputs = _dataset_digests(args.dataset_dir, args.splits)
    params = {
        "splits": args.splits,
        "seed": args.seed,
        "betweenness_exact_cutoff": cfg.betweenness_exact_cutoff,
        "betweenness_max_pivots": cfg.betweenness_max_pivots,
        "eig_tol": cfg.eig_tol,
        "pagerank_damping": cfg.pagerank_damping,
        "pagerank_tol": cfg.pagerank_tol,
        "spectral_tol": cfg.spectral_tol,
    }
    profile = build_profile(kg, sem, struct, params, inputs)
    os.makedirs(args.out, exist_ok=True)
    out_name = f"{kg.name}.profile.json"
    save_profile(profile, os.path.join(args.out, out_name))
    _write_manifest(args, inputs, [out_name])
    print(os.path.join(args.out, out_name))
    return 0


def cmd_csg(args) -> int:
    kg = load_dataset(args.dataset_dir, splits=args.splits)
    table = _load_table(args)
    mode, m = _parse_classes(args.classes)
    selection = "all" if mode == "all" else args.class_selection
    config = CsgConfig(k=args.k, n_samples=args.samples, k_c=args.k_c,
                       seed=args.seed, threads=args.threads)
    record, result = compute_csg(kg, table, config, selection=selection, m=m)
    if table.filled_count:
        print(f"kgcx: note: {table.filled_count} label(s) filled from the fallback embedder",
              file=sys.stderr)
    inputs = _dataset_digests(args.dataset_dir, args.splits)
    if args.embeddings:
        inputs[os.path.basename(args.embeddings)] = sha256_file(args.embeddings)
    os.makedirs(args.out, exist_ok=True)
    outputs = []
    if args.profile:
        profile = load_profile(args.profile)
        profile.csg_records.append(record.to_dict())
        save_profile(profile, args.profile)
        outputs.append(os.path.abspath(args.profile))
    out_name = f"{kg.name}.csg.json"
    with open(os.path.join(args.out, out_name), "w", encoding="utf-8", newline="\n") as fh:
        json.dump(record.to_dict(), fh, sort_keys=True, indent=1)
        fh.write("\n")
    outputs.append(out_name)
    if args.dump_spectral:
        from .spectral import spectral_debug_dict

        spectral_name = f"{kg.name}.spectral.json"
        with open(os.path.join(args.out, spectral_name), "w", encoding="utf-8", newline="\n") as fh:
            json.dump(spectral_debug_dict(result), fh, sort_keys=True)
            fh.write("\n")
        outputs.append(spectral_name)
    _write_manifest(args, inputs, outputs)
    print(os.path.join(args.out, out_name))
    return 0


def cmd_sweep(args) -> int:
    kg = load_dataset(args.dataset_dir, splits=args.splits)
    table = _load_table(args)
    ks = _parse_k_range(args.k)
    mode, m = _parse_classes(args.classes)
    selection = "all" if mode == "all" else args.class_selection
    config = CsgConfig(n_samples=args.samples, seed=args.seed, threads=args.threads)
    rows = sweep(kg, table, ks, ["all"] if mode == "all" else [m], config, selection=selection)
    inputs = _dataset_digests(args.dataset_dir, args.splits)
    if args.embeddings:
        inputs[os.path.basename(args.embeddings)] = sha256_file(args.embeddings)
    os.makedirs(args.out, exist_ok=True)
    out_name = f"{kg.name}.sweep.csv"
    write_sweep_csv(rows, os.path.join(args.out, out_name))
    _write_manifest(args, inputs, [out_name])
    print(os.path.join(args.out, out_name))
    return 0


def cmd_correlate(args) -> int:
    profiles = [load_profile(p) for p in args.profiles]
    table = load_performance(args.perf)
    report = build_report(profiles, table, normalization=args.normalize)
    written = write_report_files(report, args.out)
    inputs = {os.path.basename(p): sha256_file(p) for p in args.profiles}
    inputs[os.path.basename(args.perf)] = sha256_file(args.perf)
    _write_manifest(args, inputs, written)
    for name in written:
        print(os.path.join(args.out, name))
    return 0


def cmd_dump(args) -> int:
    kg = load_dataset(args.dataset_dir, splits=args.splits)
    os.makedirs(args.out, exist_ok=True)
    out_name = "dataset.jsonl"
    dump_jsonl(kg, os.path.join(args.out, out_name))
    inputs = _dataset_digests(args.dataset_dir, args.splits)
    _write_manifest(args, inputs, [out_name])
    print(os.path.join(args.out, out_name))
    return 0


if __name__ == "__main__":
    sys.exit(main())

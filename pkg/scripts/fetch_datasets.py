#!/usr/bin/env python3
"""Download the five benchmark datasets into a data root.

Usage: python scripts/fetch_datasets.py [--root DATA_DIR] [--only NAME ...]

Creates ``<root>/<name>/{train,valid,test}.txt`` for fb15k-237, wn18rr and
codex-s/m/l, then sanity-checks line counts. Needs plain HTTPS egress.
"""
import argparse
import os
import sys
import urllib.request

SOURCES = {
    "fb15k-237": {
        "base": "https://raw.githubusercontent.com/villmow/datasets_knowledge_embedding/master/FB15k-237",
        "counts": {"train": 272115, "valid": 17535, "test": 20466},
    },
    "wn18rr": {
        "base": "https://raw.githubusercontent.com/villmow/datasets_knowledge_embedding/master/WN18RR/text",
        "counts": {"train": 86835, "valid": 3034, "test": 3134},
        # note: some mirrors ship unfiltered valid/test; the canonical counts
        # are 2924/2824 after removing triples with unseen entities
    },
    "codex-s": {
        "base": "https://raw.githubusercontent.com/tsafavi/codex/master/data/triples/codex-s",
        "counts": {"train": 32888, "valid": 3654, "test": 3656},
    },
    "codex-m": {
        "base": "https://raw.githubusercontent.com/tsafavi/codex/master/data/triples/codex-m",
        "counts": {"train": 185584 - 10310 - 10311, "valid": 10310, "test": 10311},
    },
    "codex-l": {
        "base": "https://raw.githubusercontent.com/tsafavi/codex/master/data/triples/codex-l",
        "counts": {"train": 551193, "valid": 30622, "test": 30622},
    },
}


def fetch(name, root):
    spec = SOURCES[name]
    out_dir = os.path.join(root, name)
    os.makedirs(out_dir, exist_ok=True)
    for split in ("train", "valid", "test"):
        url = f"{spec['base']}/{split}.txt"
        dest = os.path.join(out_dir, f"{split}.txt")
        if os.path.isfile(dest) and os.path.getsize(dest) > 0:
            print(f"  {dest} already present")
            continue
        print(f"  {url} -> {dest}")
        with urllib.request.urlopen(url, timeout=120) as resp, open(dest, "wb") as fh:
            fh.write(resp.read())
    for split, expected in spec["counts"].items():
        path = os.path.join(out_dir, f"{split}.txt")
        with open(path, encoding="utf-8") as fh:
            got = sum(1 for line in fh if line.strip())
        status = "ok" if got == expected else f"EXPECTED {expected}"
        print(f"  {name}/{split}: {got} triples ({status})")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--root", default=os.environ.get("KGCX_DATA", "data"))
    ap.add_argument("--only", nargs="*", choices=sorted(SOURCES), default=None)
    args = ap.parse_args()
    names = args.only or sorted(SOURCES)
    failures = []
    for name in names:
        print(f"fetching {name}")
        try:
            fetch(name, args.root)
        except Exception as exc:
            failures.append(name)
            print(f"  failed: {exc}", file=sys.stderr)
    if failures:
        print(f"failed: {', '.join(failures)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

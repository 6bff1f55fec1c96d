"""Small shared helpers: thread resolution, deterministic parallel mapping,
file digests."""
from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "KGCX_THREADS"


def resolve_threads(threads=None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(ENV_THREADS)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def chunk_ranges(n: int, size: int):
    for start in range(0, n, size):
        yield start, min(start + size, n)


def ordered_parallel(fn, tasks, threads: int):
    """Map ``fn`` over ``tasks`` and return results in task order.

    Output never depends on the worker count: results are collected in
    submission order, so reductions done by the caller stay deterministic.
    """
    tasks = list(tasks)
    if threads <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        futures = [ex.submit(fn, t) for t in tasks]
        return [f.result() for f in futures]


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()

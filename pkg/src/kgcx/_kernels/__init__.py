"""Kernel backend selection.

The compiled extension is preferred when importable; ``KGCX_FORCE_FALLBACK=1``
pins the pure-Python implementations (used by the fallback-equality tests and
the benchmark). Both backends are bit-identical on the same inputs.
"""
import os

from . import pyfallback

if os.environ.get("KGCX_FORCE_FALLBACK") == "1":
    _ckern = None
else:
    try:
        from . import _ckern
    except ImportError:  # extension not built; stay on the fallback
        _ckern = None

HAVE_NATIVE = _ckern is not None
backend = _ckern if HAVE_NATIVE else pyfallback
BACKEND_NAME = "native" if HAVE_NATIVE else "python"

topk_rows = backend.topk_rows
bfs_distances = backend.bfs_distances
brandes_accumulate = backend.brandes_accumulate
count_triangles = backend.count_triangles
girth_simple = backend.girth_simple

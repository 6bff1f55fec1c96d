"""Named sub-seed derivation.

All randomness in a run flows from one user-facing seed. Each randomized
stage derives its own 64-bit stream seed by hashing the master seed together
with a purpose string (and optional integer qualifiers), so re-running one
stage never perturbs another.
"""
import hashlib
import struct

_MASK64 = (1 << 64) - 1


def subseed(seed: int, *purpose) -> int:
    """Derive a deterministic 64-bit seed from ``seed`` and purpose parts.

    Parts may be strings, bytes, or integers; each part is length-prefixed so
    distinct part sequences can never collide.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<Q", seed & _MASK64))
    for part in purpose:
        if isinstance(part, bytes):
            data = part
        elif isinstance(part, str):
            data = part.encode("utf-8")
        else:
            data = struct.pack("<q", int(part))
        h.update(struct.pack("<I", len(data)))
        h.update(data)
    return int.from_bytes(h.digest(), "little")

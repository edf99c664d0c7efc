"""Deterministic random streams.

All randomness in this package flows through Philox counter-based
generators keyed by a BLAKE2 hash of ``(seed, *labels)``.  Distinct
labels give statistically independent streams, so replicates can be
generated in any order (or in parallel) and still reproduce bit for bit.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["stream", "substream_seed"]


def _digest(seed: int, labels: tuple) -> bytes:
    h = hashlib.blake2b(digest_size=16)
    h.update(int(seed).to_bytes(16, "little", signed=True))
    for lab in labels:
        if isinstance(lab, (int, np.integer)):
            h.update(b"i" + int(lab).to_bytes(16, "little", signed=True))
        elif isinstance(lab, str):
            h.update(b"s" + lab.encode("utf-8") + b"\x00")
        else:
            raise TypeError(f"stream labels must be str or int, got {type(lab).__name__}")
    return h.digest()


def stream(seed: int, *labels) -> np.random.Generator:
    """Return a Philox generator keyed by ``hash(seed, *labels)``."""
    key = int.from_bytes(_digest(seed, labels), "little")
    return np.random.Generator(np.random.Philox(key=key))


def substream_seed(seed: int, *labels) -> int:
    """Derive a 63-bit integer seed for handing to seeded operations."""
    return int.from_bytes(_digest(seed, labels)[:8], "little") >> 1

"""Canonical JSON serialization and content digests.

Reproducibility rests on every artifact having exactly one byte encoding:
sorted keys, compact separators, UTF-8, floats via Python's shortest
round-trip repr, and NaN/Infinity rejected.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def sha256_hex(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def digest_of(obj) -> str:
    return sha256_hex(canonical_json(obj))


def file_digest(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def stable_hash64(text: str) -> int:
    """Platform-independent 64-bit hash of a string (for phase offsets etc.)."""
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "little")

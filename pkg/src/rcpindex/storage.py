"""Versioned binary container for built indexes.

Layout: the magic bytes ``RCP1``, a big-endian u16 format version, the
structure kind as a length-prefixed UTF-8 tag, a u64 payload length, the
SHA-256 digest of the payload, then the payload itself (a pickle of
whatever the kind's builder returned, usually bundled with its input
points).  The digest is validated on load, so truncation or corruption
fails loudly instead of deserializing garbage.
"""

from __future__ import annotations

import hashlib
import pickle
import struct
from pathlib import Path

MAGIC = b"RCP1"
VERSION = 1

_HEAD = struct.Struct(">HH")  # version, kind-tag length
_LEN = struct.Struct(">Q")


def save_index(path, kind: str, payload) -> None:
    """Write ``payload`` under the given structure-kind tag."""
    kind_b = kind.encode("utf-8")
    if not kind_b or len(kind_b) > 0xFFFF:
        raise ValueError(f"bad kind tag {kind!r}")
    blob = pickle.dumps(payload, protocol=pickle.HIGHEST_PROTOCOL)
    out = b"".join([
        MAGIC,
        _HEAD.pack(VERSION, len(kind_b)),
        kind_b,
        _LEN.pack(len(blob)),
        hashlib.sha256(blob).digest(),
        blob,
    ])
    Path(path).write_bytes(out)


def load_index(path) -> tuple[str, object]:
    """Read an index file back as ``(kind, payload)``, verifying format
    version and payload checksum."""
    data = Path(path).read_bytes()
    if len(data) < len(MAGIC) + _HEAD.size or not data.startswith(MAGIC):
        raise ValueError(f"{path}: not an index file (bad magic)")
    pos = len(MAGIC)
    version, kind_len = _HEAD.unpack_from(data, pos)
    if version != VERSION:
        raise ValueError(f"{path}: unsupported index version {version}")
    pos += _HEAD.size
    kind = data[pos:pos + kind_len].decode("utf-8")
    pos += kind_len
    (blob_len,) = _LEN.unpack_from(data, pos)
    pos += _LEN.size
    digest = data[pos:pos + 32]
    blob = data[pos + 32:]
    if len(blob) != blob_len:
        raise ValueError(f"{path}: truncated index file")
    if hashlib.sha256(blob).digest() != digest:
        raise ValueError(f"{path}: checksum mismatch, file corrupted")
    return kind, pickle.loads(blob)

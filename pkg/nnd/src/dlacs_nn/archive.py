"""Tensor archive: JSON manifest plus concatenated little-endian f32 blobs.

File layout: u64 little-endian manifest byte length, the UTF-8 JSON manifest
{"version": 1, "tensors": [{"name", "shape", "dtype": "f32", "offset"}, ...]},
then the blob region the offsets point into.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

ARCHIVE_VERSION = 1


class ArchiveError(ValueError):
    pass


def save_archive(path, tensors: dict[str, np.ndarray]) -> None:
    entries = []
    blob = bytearray()
    for name, array in tensors.items():
        data = np.asarray(array, dtype="<f4")
        entries.append(
            {"name": name, "shape": list(data.shape), "dtype": "f32", "offset": len(blob)}
        )
        blob += data.tobytes()
    manifest = json.dumps({"version": ARCHIVE_VERSION, "tensors": entries}).encode("utf-8")
    Path(path).write_bytes(struct.pack("<Q", len(manifest)) + manifest + bytes(blob))


def load_archive(path) -> dict[str, np.ndarray]:
    data = Path(path).read_bytes()
    if len(data) < 8:
        raise ArchiveError("truncated archive")
    (mlen,) = struct.unpack_from("<Q", data)
    if len(data) < 8 + mlen:
        raise ArchiveError("truncated archive")
    manifest = json.loads(data[8 : 8 + mlen].decode("utf-8"))
    if manifest.get("version") != ARCHIVE_VERSION:
        raise ArchiveError("unsupported archive version")
    blob = data[8 + mlen :]
    out = {}
    for entry in manifest["tensors"]:
        if entry["dtype"] != "f32":
            raise ArchiveError(f"unsupported dtype {entry['dtype']}")
        shape = tuple(entry["shape"])
        count = int(np.prod(shape)) if shape else 1
        start = entry["offset"]
        end = start + 4 * count
        if end > len(blob):
            raise ArchiveError("offset outside blob")
        out[entry["name"]] = np.frombuffer(blob[start:end], dtype="<f4").reshape(shape).copy()
    return out

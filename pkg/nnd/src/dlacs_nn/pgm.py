"""Minimal binary PGM (P5, maxval 255) reader/writer."""

from __future__ import annotations

from pathlib import Path

import numpy as np


class PgmError(ValueError):
    pass


def load_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    if data[:2] != b"P5":
        raise PgmError("not a P5 file")
    pos, values = 2, []
    while len(values) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if pos == start:
            raise PgmError("malformed header")
        values.append(int(data[start:pos]))
    pos += 1
    width, height, maxval = values
    if maxval != 255:
        raise PgmError(f"unsupported maxval {maxval}")
    if len(data) - pos < width * height:
        raise PgmError("truncated payload")
    return (
        np.frombuffer(data[pos : pos + width * height], dtype=np.uint8)
        .reshape(height, width)
        .copy()
    )


def save_pgm(samples: np.ndarray, path) -> None:
    if samples.ndim != 2 or samples.dtype != np.uint8:
        raise PgmError("expected 2-D uint8 samples")
    header = f"P5\n{samples.shape[1]} {samples.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + samples.tobytes())

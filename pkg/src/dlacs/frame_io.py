"""Load, save and crop 8-bit frames: raw Bayer mosaics, single planes, RGB images.

Files are binary PGM (P5) / PPM (P6) with maxval 255 and a single
whitespace-delimited header.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class Pattern(enum.Enum):
    RGGB = "RGGB"
    PLAIN = "PLAIN"


class FrameError(ValueError):
    """Malformed image file or out-of-contract frame operation."""


@dataclass(eq=False)
class BayerFrame:
    """Single-plane 8-bit frame; ``samples`` has shape (height, width)."""

    samples: np.ndarray
    pattern: Pattern = Pattern.RGGB

    def __post_init__(self):
        self.samples = np.asarray(self.samples)
        if self.samples.ndim != 2:
            raise FrameError("samples must be a 2-D array")
        if self.samples.dtype != np.uint8:
            raise FrameError("samples must be uint8")

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]


@dataclass(eq=False)
class RgbImage:
    """8-bit RGB image; ``planes`` has shape (3, height, width)."""

    planes: np.ndarray

    def __post_init__(self):
        self.planes = np.asarray(self.planes)
        if self.planes.ndim != 3 or self.planes.shape[0] != 3:
            raise FrameError("planes must have shape (3, height, width)")
        if self.planes.dtype != np.uint8:
            raise FrameError("planes must be uint8")

    @property
    def height(self) -> int:
        return self.planes.shape[1]

    @property
    def width(self) -> int:
        return self.planes.shape[2]

    def plane_frames(self, pattern: Pattern = Pattern.PLAIN) -> list[BayerFrame]:
        return [BayerFrame(p, pattern) for p in self.planes]


def _parse_header(data: bytes, magic: bytes) -> tuple[int, int, int]:
    """Return (width, height, payload offset) of a P5/P6 header."""
    if data[:2] != magic:
        raise FrameError(f"not a {magic.decode()} file")
    pos = 2
    values = []
    while len(values) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if pos == start:
            raise FrameError("malformed header")
        values.append(int(data[start:pos]))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FrameError("malformed header")
    pos += 1  # exactly one whitespace byte before the payload
    width, height, maxval = values
    if maxval != 255:
        raise FrameError(f"unsupported maxval {maxval}")
    if width <= 0 or height <= 0:
        raise FrameError("malformed header")
    return width, height, pos


def load_pgm(path, pattern: Pattern = Pattern.RGGB) -> BayerFrame:
    data = Path(path).read_bytes()
    width, height, pos = _parse_header(data, b"P5")
    n = width * height
    if len(data) - pos < n:
        raise FrameError("truncated payload")
    samples = np.frombuffer(data[pos : pos + n], dtype=np.uint8).reshape(height, width)
    return BayerFrame(samples.copy(), pattern)


def save_pgm(frame: BayerFrame, path) -> None:
    header = f"P5\n{frame.width} {frame.height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + frame.samples.tobytes())


def load_ppm(path) -> RgbImage:
    data = Path(path).read_bytes()
    width, height, pos = _parse_header(data, b"P6")
    n = width * height * 3
    if len(data) - pos < n:
        raise FrameError("truncated payload")
    interleaved = np.frombuffer(data[pos : pos + n], dtype=np.uint8)
    planes = interleaved.reshape(height, width, 3).transpose(2, 0, 1)
    return RgbImage(planes.copy())


def save_ppm(image: RgbImage, path) -> None:
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    interleaved = image.planes.transpose(1, 2, 0)
    Path(path).write_bytes(header + np.ascontiguousarray(interleaved).tobytes())


def extract_crops(frame: BayerFrame, crop: int, count: int, seed: int) -> list[BayerFrame]:
    """Seeded random square crops with even top-left offsets (Bayer phase kept)."""
    if crop > min(frame.height, frame.width):
        raise FrameError("crop larger than frame")
    if crop % 2 != 0:
        raise FrameError("crop must be divisible by 2")
    rng = np.random.default_rng(seed)
    rows = 2 * rng.integers(0, (frame.height - crop) // 2 + 1, size=count)
    cols = 2 * rng.integers(0, (frame.width - crop) // 2 + 1, size=count)
    return [
        BayerFrame(frame.samples[r : r + crop, c : c + crop].copy(), frame.pattern)
        for r, c in zip(rows, cols)
    ]

"""Capture-side path: blocked integer-mask encode, Q_scale selection, 8-bit quantization.

Blocks are taken stride = block size (no gap, no overlap); each block of
kx*ky pixels collapses to n_c integers. Worst-case block sum is
255*32*32*128 < 2^31, so a 32-bit accumulator is safe for every supported
parameter set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .frame_io import BayerFrame, RgbImage
from .rounding import round_half_away


class CodecMode(enum.Enum):
    BAYER = "BAYER"
    RGB = "RGB"


class EncodeError(ValueError):
    """Out-of-contract encoder input."""


@dataclass(eq=False)
class CompRaw:
    """Pre-quantization block sums; ``values`` has shape (bx, by, n_c), int32."""

    values: np.ndarray


@dataclass(eq=False)
class CompQ:
    """Quantized compressed array: unsigned bytes storing signed value + 128."""

    stored: np.ndarray  # uint8, shape (bx, by, n_c)
    q_scale: int


def _check_divisible(height: int, width: int, kx: int, ky: int) -> None:
    if height % kx or width % ky:
        raise EncodeError(
            f"frame dims {height}x{width} not divisible by block {kx}x{ky}; "
            "pad or crop required"
        )


def compress(frame: BayerFrame, masks: np.ndarray) -> CompRaw:
    """Apply integer masks blockwise: out[i,j,c] = sum(block(i,j) * masks[c])."""
    nc, kx, ky = masks.shape
    _check_divisible(frame.height, frame.width, kx, ky)
    bx, by = frame.height // kx, frame.width // ky
    blocks = frame.samples.reshape(bx, kx, by, ky).astype(np.int32)
    out = np.einsum("iujv,cuv->ijc", blocks, masks.astype(np.int32), dtype=np.int32)
    return CompRaw(out)


def compress_float(samples: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Float variant of the blocked encode, for training and adjoint checks."""
    nc, kx, ky = kernel.shape
    samples = np.asarray(samples, dtype=np.float64)
    _check_divisible(samples.shape[0], samples.shape[1], kx, ky)
    bx, by = samples.shape[0] // kx, samples.shape[1] // ky
    blocks = samples.reshape(bx, kx, by, ky)
    return np.einsum("iujv,cuv->ijc", blocks, np.asarray(kernel, dtype=np.float64))


def default_q_grid(limit: int = 4096) -> np.ndarray:
    return np.arange(1, limit + 1)


def select_q_scale(samples: list[CompRaw], grid: np.ndarray | None = None) -> int:
    """Exhaustive scan for the integer divisor with least round-trip error.

    Minimizes mean((q*clamp(round(v/q), -128, 127) - v)^2) over all entries of
    all samples; ties go to the smallest q.
    """
    if not samples:
        raise EncodeError("select_q_scale needs at least one sample")
    if grid is None:
        grid = default_q_grid()
    grid = np.asarray(grid)
    if len(grid) == 0 or grid[0] < 1:
        raise EncodeError("grid must be ascending positive integers")
    v = np.concatenate([np.asarray(s.values, dtype=np.float64).ravel() for s in samples])
    best_q, best_mse = None, None
    for q in grid:
        q = int(q)
        r = np.clip(round_half_away(v / q), -128, 127)
        mse = float(np.mean((q * r - v) ** 2))
        if best_mse is None or mse < best_mse:
            best_q, best_mse = q, mse
    return best_q


def quantize(comp: CompRaw, q_scale: int) -> CompQ:
    if q_scale < 1:
        raise EncodeError("q_scale must be >= 1")
    signed = np.clip(round_half_away(comp.values / q_scale), -128, 127)
    return CompQ((signed + 128).astype(np.uint8), q_scale)


def compress_rgb(image: RgbImage, masks: np.ndarray) -> list[CompRaw]:
    """Channel-by-channel encode; one CompRaw per plane."""
    return [compress(f, masks) for f in image.plane_frames()]


def compression_ratio(kx: int, ky: int, nc: int, mode: CodecMode) -> Fraction:
    """Stored bytes over source bytes: n_c/(3*kx*ky) for Bayer, n_c/(kx*ky) for RGB."""
    if kx < 1 or ky < 1 or nc < 1:
        raise EncodeError("dims must be positive")
    if mode is CodecMode.BAYER:
        return Fraction(nc, 3 * kx * ky)
    return Fraction(nc, kx * ky)

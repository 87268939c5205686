"""Mask sets: trained float masks, their low-bit integer form, and the decode kernel.

The integer masks are what the capture side applies; the float masks and the
conv-transpose decode kernel are display-side data. ``sc_W`` ties the two
together: ``W_int ~= W_float * sc_W``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .rounding import round_half_away

MASK_MAGIC = b"DLACSMSK"
MASK_VERSION = 1

_FLAG_D = 1
_FLAG_DEGENERATE = 2
_FLAG_QSCALE = 4
_FLAG_WFLOAT = 8


class MaskError(ValueError):
    """Malformed mask blob or out-of-contract mask operation."""


@dataclass(eq=False)
class MaskSet:
    """n_c masks of shape (kx, ky); arrays are indexed [mask, u, v]."""

    kx: int
    ky: int
    nc: int
    bits: int
    w_float: np.ndarray  # float32, the trained encoder kernel
    w_int: np.ndarray  # int8, the integer kernel the encoder applies
    sc_w: float
    d_float: np.ndarray  # float32 conv-transpose decode kernel (W_int units)
    q_scale: int | None = None
    degenerate: bool = False

    def __post_init__(self):
        lo, hi = int_range(self.bits)
        if self.sc_w <= 0:
            raise MaskError("sc_w must be positive")
        if self.w_int.min() < lo or self.w_int.max() > hi:
            raise MaskError(f"integer mask entries outside [{lo}, {hi}]")


def int_range(bits: int) -> tuple[int, int]:
    return -(1 << (bits - 1)), (1 << (bits - 1)) - 1


def default_scale_grid(w_float: np.ndarray, bits: int, points: int = 512) -> np.ndarray:
    maxabs = float(np.abs(w_float).max())
    _, hi = int_range(bits)
    return np.geomspace(0.1 / maxabs, 2.0 * hi / maxabs, points)


class IntegerizeResult(NamedTuple):
    w_int: np.ndarray
    sc_w: float
    degenerate: bool


def integerize_masks(
    w_float: np.ndarray, bits: int, scale_grid: np.ndarray | None = None
) -> IntegerizeResult:
    """Pick the scale whose rounded integer masks reproduce ``w_float`` best.

    Scans the ascending grid and keeps the scale minimizing
    mean((w_float - clamp(round(w_float*sc))/sc)^2); ties go to the smallest
    scale. All-zero input is returned as a degenerate all-zero set.
    """
    if not 2 <= bits <= 8:
        raise MaskError("bits must be in [2, 8]")
    w = np.asarray(w_float, dtype=np.float64)
    lo, hi = int_range(bits)
    if not np.any(w):
        sc = float(scale_grid[0]) if scale_grid is not None else 1.0
        return IntegerizeResult(np.zeros(w.shape, dtype=np.int8), sc, True)
    if scale_grid is None:
        scale_grid = default_scale_grid(w, bits)
    grid = np.asarray(scale_grid, dtype=np.float64)
    if grid.ndim != 1 or len(grid) == 0 or grid[0] <= 0 or np.any(np.diff(grid) < 0):
        raise MaskError("scale_grid must be an ascending list of positive reals")
    best_sc, best_mse = None, None
    for sc in grid:
        r = np.clip(round_half_away(w * sc), lo, hi)
        mse = float(np.mean((w - r / sc) ** 2))
        if best_mse is None or mse < best_mse:
            best_sc, best_mse = float(sc), mse
    r = np.clip(round_half_away(w * best_sc), lo, hi).astype(np.int8)
    return IntegerizeResult(r, best_sc, False)


def effective_encoder(mask_set: MaskSet) -> np.ndarray:
    """The kernel the capture side actually applies."""
    return mask_set.w_int


def serialize_masks(mask_set: MaskSet) -> bytes:
    m = mask_set
    flags = _FLAG_D | _FLAG_WFLOAT
    if m.degenerate:
        flags |= _FLAG_DEGENERATE
    if m.q_scale is not None:
        flags |= _FLAG_QSCALE
    head = struct.pack(
        "<8sBBHHBBfI",
        MASK_MAGIC,
        MASK_VERSION,
        flags,
        m.kx,
        m.ky,
        m.nc,
        m.bits,
        np.float32(m.sc_w),
        m.q_scale or 0,
    )
    body = (
        m.w_int.astype("<i1").tobytes()
        + m.w_float.astype("<f4").tobytes()
        + m.d_float.astype("<f4").tobytes()
    )
    return head + body


def deserialize_masks(blob: bytes) -> MaskSet:
    head_size = struct.calcsize("<8sBBHHBBfI")
    if len(blob) < head_size:
        raise MaskError("truncated mask blob")
    magic, version, flags, kx, ky, nc, bits, sc_w, q_scale = struct.unpack(
        "<8sBBHHBBfI", blob[:head_size]
    )
    if magic != MASK_MAGIC:
        raise MaskError("bad magic")
    if version != MASK_VERSION:
        raise MaskError(f"unsupported mask blob version {version}")
    n = nc * kx * ky
    pos = head_size
    need = n + (4 * n if flags & _FLAG_WFLOAT else 0) + (4 * n if flags & _FLAG_D else 0)
    if len(blob) - pos < need:
        raise MaskError("truncated mask blob")
    w_int = np.frombuffer(blob[pos : pos + n], dtype="<i1").reshape(nc, kx, ky).copy()
    pos += n
    if flags & _FLAG_WFLOAT:
        w_float = np.frombuffer(blob[pos : pos + 4 * n], dtype="<f4").reshape(nc, kx, ky).copy()
        pos += 4 * n
    else:
        w_float = w_int.astype(np.float32) / np.float32(sc_w)
    if flags & _FLAG_D:
        d_float = np.frombuffer(blob[pos : pos + 4 * n], dtype="<f4").reshape(nc, kx, ky).copy()
        pos += 4 * n
    else:
        d_float = np.zeros((nc, kx, ky), dtype=np.float32)
    return MaskSet(
        kx=kx,
        ky=ky,
        nc=nc,
        bits=bits,
        w_float=w_float,
        w_int=w_int,
        sc_w=float(sc_w),
        d_float=d_float,
        q_scale=q_scale if flags & _FLAG_QSCALE else None,
        degenerate=bool(flags & _FLAG_DEGENERATE),
    )

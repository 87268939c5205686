"""Read-only parser for DLACS containers (the codec's published byte format).

Only the fields the decoder needs are exposed. The layout is little-endian:
magic "DLACS\\x00", version u8, flags u8 (bit0 EC, bit1 RGB, bit2 kernel),
Nx/Ny u32, kx/ky u16, n_c u8, mask_bits u8, Q_scale u32, sc_W f32, W_int
bytes, optional D f32 block, u64 payload length, payload.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .ec import ec_decode_stream

MAGIC = b"DLACS\x00"
VERSION = 1
FLAG_EC = 1
FLAG_RGB = 2
FLAG_KERNEL = 4

_HEAD = "<6sBBIIHHBBIf"
_HEAD_SIZE = struct.calcsize(_HEAD)


class ContainerError(ValueError):
    pass


@dataclass(eq=False)
class ContainerView:
    nx: int
    ny: int
    kx: int
    ky: int
    nc: int
    q_scale: int
    d_float: np.ndarray  # (nc, kx, ky) float32
    stored: np.ndarray  # (nx/kx, ny/ky, nc) uint8


def parse_container(data: bytes) -> ContainerView:
    if len(data) < _HEAD_SIZE:
        raise ContainerError("truncated container")
    magic, version, flags, nx, ny, kx, ky, nc, _bits, q_scale, _sc_w = struct.unpack_from(
        _HEAD, data
    )
    if magic != MAGIC:
        raise ContainerError("bad magic")
    if version != VERSION:
        raise ContainerError(f"unsupported container version {version}")
    if flags & FLAG_RGB:
        raise ContainerError("RGB containers not supported by the deep decoder (PGM output only)")
    if not flags & FLAG_KERNEL:
        raise ContainerError("container carries no decode kernel")
    pos = _HEAD_SIZE
    n = nc * kx * ky
    w_end = pos + n
    d_end = w_end + 4 * n
    if len(data) < d_end + 8:
        raise ContainerError("truncated container")
    d_float = np.frombuffer(data[w_end:d_end], dtype="<f4").reshape(nc, kx, ky).copy()
    (payload_len,) = struct.unpack_from("<Q", data, d_end)
    pos = d_end + 8
    bx, by = nx // kx, ny // ky
    if len(data) - pos < payload_len:
        raise ContainerError("truncated container")
    if flags & FLAG_EC:
        raw, _ = ec_decode_stream(data[pos : pos + payload_len])
    else:
        raw = data[pos : pos + payload_len]
    if len(raw) != bx * by * nc:
        raise ContainerError("payload length inconsistent with dims")
    stored = np.frombuffer(raw, dtype=np.uint8).reshape(bx, by, nc).copy()
    return ContainerView(
        nx=nx, ny=ny, kx=kx, ky=ky, nc=nc, q_scale=q_scale, d_float=d_float, stored=stored
    )

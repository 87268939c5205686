"""Bit-exact on-disk container: header, masks, decode kernel, payload.

Little-endian layout:

    magic         6 bytes  "DLACS\\x00"
    version       u8       1
    flags         u8       bit0 EC, bit1 RGB channel mode, bit2 kernel present
    Nx, Ny        u32 x2   frame dims (rows, cols)
    kx, ky        u16 x2   block dims
    n_c           u8       mask count
    mask_bits     u8       integer mask bit depth
    Q_scale       u32
    sc_W          f32
    W_int         n_c*kx*ky signed bytes
    D             n_c*kx*ky f32, present iff flags bit2
    payload_len   u64
    payload       raw CompQ bytes, or an EC stream (u64 original length +
                  coded bytes). RGB mode stores three plane entries
                  sequentially; with EC each entry is prefixed by a u64 coded
                  byte length so the planes can be delimited.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .encoder import CompQ
from .entropy import ec_decode, ec_encode, pack_stream, unpack_stream
from .masks import MaskSet

MAGIC = b"DLACS\x00"
VERSION = 1

FLAG_EC = 1
FLAG_RGB = 2
FLAG_KERNEL = 4

_HEAD = "<6sBBIIHHBBIf"
_HEAD_SIZE = struct.calcsize(_HEAD)  # 30; +8 for payload_len = 38 fixed bytes


class ContainerError(ValueError):
    pass


@dataclass(eq=False)
class Container:
    nx: int
    ny: int
    kx: int
    ky: int
    nc: int
    mask_bits: int
    q_scale: int
    sc_w: float
    w_int: np.ndarray  # (nc, kx, ky) int8
    d_float: np.ndarray | None  # (nc, kx, ky) float32 if embedded
    ec: bool
    rgb: bool
    planes: list[CompQ]  # one entry, or three in RGB mode

    @property
    def block_dims(self) -> tuple[int, int]:
        return self.nx // self.kx, self.ny // self.ky


def build_container(
    mask_set: MaskSet,
    planes: list[CompQ],
    nx: int,
    ny: int,
    rgb: bool,
    ec: bool = False,
    include_kernel: bool = True,
) -> bytes:
    if len(planes) != (3 if rgb else 1):
        raise ContainerError("plane count does not match mode")
    m = mask_set
    q_scale = planes[0].q_scale
    flags = (FLAG_EC if ec else 0) | (FLAG_RGB if rgb else 0)
    if include_kernel:
        flags |= FLAG_KERNEL
    parts = [
        struct.pack(
            _HEAD,
            MAGIC,
            VERSION,
            flags,
            nx,
            ny,
            m.kx,
            m.ky,
            m.nc,
            m.bits,
            q_scale,
            np.float32(m.sc_w),
        ),
        m.w_int.astype("<i1").tobytes(),
    ]
    if include_kernel:
        parts.append(m.d_float.astype("<f4").tobytes())
    payload = bytearray()
    for plane in planes:
        raw = plane.stored.tobytes()
        if ec:
            framed = pack_stream(ec_encode(raw))
            if rgb:
                payload += struct.pack("<Q", len(framed) - 8)
            payload += framed
        else:
            payload += raw
    parts.append(struct.pack("<Q", len(payload)))
    parts.append(bytes(payload))
    return b"".join(parts)


def parse_container(data: bytes) -> Container:
    if len(data) < _HEAD_SIZE:
        raise ContainerError("truncated container")
    magic, version, flags, nx, ny, kx, ky, nc, bits, q_scale, sc_w = struct.unpack_from(
        _HEAD, data
    )
    if magic != MAGIC:
        raise ContainerError("bad magic")
    if version != VERSION:
        raise ContainerError(f"unsupported container version {version}")
    if nx % kx or ny % ky:
        raise ContainerError("frame dims not divisible by block dims")
    pos = _HEAD_SIZE
    n = nc * kx * ky
    if len(data) - pos < n:
        raise ContainerError("truncated container")
    w_int = np.frombuffer(data[pos : pos + n], dtype="<i1").reshape(nc, kx, ky).copy()
    pos += n
    d_float = None
    if flags & FLAG_KERNEL:
        if len(data) - pos < 4 * n:
            raise ContainerError("truncated container")
        d_float = np.frombuffer(data[pos : pos + 4 * n], dtype="<f4").reshape(nc, kx, ky).copy()
        pos += 4 * n
    if len(data) - pos < 8:
        raise ContainerError("truncated container")
    (payload_len,) = struct.unpack_from("<Q", data, pos)
    pos += 8
    if len(data) - pos < payload_len:
        raise ContainerError("truncated container")
    payload = data[pos : pos + payload_len]

    ec = bool(flags & FLAG_EC)
    rgb = bool(flags & FLAG_RGB)
    bx, by = nx // kx, ny // ky
    plane_bytes = bx * by * nc
    planes = []
    offset = 0
    for _ in range(3 if rgb else 1):
        if ec:
            if rgb:
                if len(payload) - offset < 8:
                    raise ContainerError("truncated payload")
                (coded_len,) = struct.unpack_from("<Q", payload, offset)
                offset += 8
                stream, offset = unpack_stream(payload, offset, coded_len)
            else:
                stream, offset = unpack_stream(payload, offset)
            raw = ec_decode(stream)
        else:
            raw = bytes(payload[offset : offset + plane_bytes])
            offset += plane_bytes
        if len(raw) != plane_bytes:
            raise ContainerError("payload length inconsistent with dims")
        stored = np.frombuffer(raw, dtype=np.uint8).reshape(bx, by, nc).copy()
        planes.append(CompQ(stored, q_scale))
    if offset != len(payload):
        raise ContainerError("payload length inconsistent with dims")
    return Container(
        nx=nx,
        ny=ny,
        kx=kx,
        ky=ky,
        nc=nc,
        mask_bits=bits,
        q_scale=q_scale,
        sc_w=float(sc_w),
        w_int=w_int,
        d_float=d_float,
        ec=ec,
        rgb=rgb,
        planes=planes,
    )

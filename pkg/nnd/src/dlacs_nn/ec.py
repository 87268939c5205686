"""Arithmetic decoder for container payload streams.

Independent implementation of the codec's published stream parameters:
32-bit coder state, 256-symbol adaptive model starting at counts of 1,
increment 1 per symbol, counts halved as ceil((f+1)/2) when the total
exceeds 2^16. Framing: u64 little-endian original length, then coded bytes.
"""

from __future__ import annotations

import struct

_NSYM = 256
_RESCALE_LIMIT = 1 << 16
_STATE_BITS = 32
_FULL = 1 << _STATE_BITS
_MASK = _FULL - 1
_TOP = _FULL >> 1
_SECOND = _FULL >> 2
_FABRICATE_LIMIT = 2 * _STATE_BITS


class EcError(ValueError):
    pass


def ec_decode_stream(data: bytes, offset: int = 0, coded_len: int | None = None) -> tuple[bytes, int]:
    """Decode one framed stream; returns (payload, end offset)."""
    if len(data) - offset < 8:
        raise EcError("truncated stream framing")
    (length,) = struct.unpack_from("<Q", data, offset)
    start = offset + 8
    end = len(data) if coded_len is None else start + coded_len
    if end > len(data):
        raise EcError("truncated stream framing")
    return _decode(data[start:end], length), end


def _decode(coded: bytes, length: int) -> bytes:
    if length == 0:
        return b""
    freqs = [1] * _NSYM
    total = _NSYM
    low, high = 0, _MASK
    code = 0
    byte_pos = bit_pos = fabricated = 0

    def read_bit() -> int:
        nonlocal byte_pos, bit_pos, fabricated
        if byte_pos < len(coded):
            bit = (coded[byte_pos] >> (7 - bit_pos)) & 1
            bit_pos += 1
            if bit_pos == 8:
                bit_pos = 0
                byte_pos += 1
            return bit
        fabricated += 1
        if fabricated > _FABRICATE_LIMIT:
            raise EcError("unexpected end of stream")
        return 0

    for _ in range(_STATE_BITS):
        code = (code << 1) | read_bit()

    out = bytearray()
    for _ in range(length):
        span = high - low + 1
        value = ((code - low + 1) * total - 1) // span
        cum = 0
        sym = 0
        while cum + freqs[sym] <= value:
            cum += freqs[sym]
            sym += 1
        high = low + (cum + freqs[sym]) * span // total - 1
        low = low + cum * span // total
        while True:
            if ((low ^ high) & _TOP) == 0:
                code = ((code << 1) & _MASK) | read_bit()
                low = (low << 1) & _MASK
                high = ((high << 1) & _MASK) | 1
            elif low & ~high & _SECOND:
                code = (code & _TOP) | ((code << 1) & (_MASK >> 1)) | read_bit()
                low = (low << 1) & (_MASK >> 1)
                high = ((high << 1) & (_MASK >> 1)) | _TOP | 1
            else:
                break
        out.append(sym)
        freqs[sym] += 1
        total += 1
        if total > _RESCALE_LIMIT:
            freqs = [(f + 1) >> 1 for f in freqs]
            total = sum(freqs)
    return bytes(out)

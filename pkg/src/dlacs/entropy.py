"""Order-0 adaptive arithmetic coding over byte symbols (lossless).

Parameters are fixed so streams are portable across implementations: 32-bit
coder state, 256-symbol model starting from uniform counts of 1, increment 1
per coded symbol, counts halved as ceil((f+1)/2) when the total exceeds 2^16.
Stream framing (used by the container and the ``ec`` subcommand): u64
little-endian original length, then the coded bytes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

_NSYM = 256
_RESCALE_LIMIT = 1 << 16

_STATE_BITS = 32
_FULL = 1 << _STATE_BITS
_MASK = _FULL - 1
_TOP = _FULL >> 1
_SECOND = _FULL >> 2

# A legal decode fabricates at most ~2*state-size zero bits past the coded
# bytes (register preload plus trailing shifts); more means truncation.
_FABRICATE_LIMIT = 2 * _STATE_BITS


class EcError(ValueError):
    pass


@dataclass(eq=False)
class EcStream:
    coded: bytes
    length: int


class _AdaptiveModel:
    """Fenwick-tree cumulative counts over 256 byte symbols."""

    def __init__(self):
        self.freqs = [1] * _NSYM
        self.total = _NSYM
        # Fenwick layout for all-ones leaves: node i covers i & -i leaves
        self.tree = [0] + [i & -i for i in range(1, _NSYM + 1)]

    def prefix(self, sym: int) -> int:
        """Sum of freqs[0:sym]."""
        s = 0
        i = sym
        tree = self.tree
        while i > 0:
            s += tree[i]
            i -= i & -i
        return s

    def find(self, value: int) -> tuple[int, int]:
        """Largest sym with prefix(sym) <= value; returns (sym, prefix(sym))."""
        idx = 0
        rem = value
        bit = _NSYM
        tree = self.tree
        while bit:
            nxt = idx + bit
            if nxt <= _NSYM and tree[nxt] <= rem:
                idx = nxt
                rem -= tree[nxt]
            bit >>= 1
        return idx, value - rem

    def increment(self, sym: int) -> None:
        i = sym + 1
        tree = self.tree
        while i <= _NSYM:
            tree[i] += 1
            i += i & -i
        self.freqs[sym] += 1
        self.total += 1
        if self.total > _RESCALE_LIMIT:
            self.freqs = [(f + 1) >> 1 for f in self.freqs]
            self.total = sum(self.freqs)
            tree = [0] * (_NSYM + 1)
            for j, f in enumerate(self.freqs):
                i = j + 1
                while i <= _NSYM:
                    tree[i] += f
                    i += i & -i
            self.tree = tree


class _Encoder:
    def __init__(self):
        self.low = 0
        self.high = _MASK
        self.underflow = 0
        self.out = bytearray()
        self.bitbuf = 0
        self.nbits = 0

    def _emit(self, bit: int) -> None:
        self.bitbuf = (self.bitbuf << 1) | bit
        self.nbits += 1
        if self.nbits == 8:
            self.out.append(self.bitbuf)
            self.bitbuf = 0
            self.nbits = 0

    def _write(self, bit: int) -> None:
        self._emit(bit)
        while self.underflow:
            self._emit(bit ^ 1)
            self.underflow -= 1

    def encode(self, symlow: int, symhigh: int, total: int) -> None:
        span = self.high - self.low + 1
        self.high = self.low + symhigh * span // total - 1
        self.low = self.low + symlow * span // total
        while True:
            if ((self.low ^ self.high) & _TOP) == 0:
                self._write(self.low >> (_STATE_BITS - 1))
                self.low = (self.low << 1) & _MASK
                self.high = ((self.high << 1) & _MASK) | 1
            elif self.low & ~self.high & _SECOND:
                self.underflow += 1
                self.low = (self.low << 1) & (_MASK >> 1)
                self.high = ((self.high << 1) & (_MASK >> 1)) | _TOP | 1
            else:
                break

    def finish(self) -> bytes:
        self._write(1)
        if self.nbits:
            self.out.append(self.bitbuf << (8 - self.nbits))
        return bytes(self.out)


class _Decoder:
    def __init__(self, data: bytes):
        self.data = data
        self.byte_pos = 0
        self.bit_pos = 0
        self.fabricated = 0
        self.low = 0
        self.high = _MASK
        self.code = 0
        for _ in range(_STATE_BITS):
            self.code = (self.code << 1) | self._read_bit()

    def _read_bit(self) -> int:
        if self.byte_pos < len(self.data):
            bit = (self.data[self.byte_pos] >> (7 - self.bit_pos)) & 1
            self.bit_pos += 1
            if self.bit_pos == 8:
                self.bit_pos = 0
                self.byte_pos += 1
            return bit
        self.fabricated += 1
        if self.fabricated > _FABRICATE_LIMIT:
            raise EcError("unexpected end of stream")
        return 0

    def decode(self, model: _AdaptiveModel) -> int:
        span = self.high - self.low + 1
        total = model.total
        value = ((self.code - self.low + 1) * total - 1) // span
        sym, symlow = model.find(value)
        symhigh = symlow + model.freqs[sym]
        self.high = self.low + symhigh * span // total - 1
        self.low = self.low + symlow * span // total
        while True:
            if ((self.low ^ self.high) & _TOP) == 0:
                self.code = ((self.code << 1) & _MASK) | self._read_bit()
                self.low = (self.low << 1) & _MASK
                self.high = ((self.high << 1) & _MASK) | 1
            elif self.low & ~self.high & _SECOND:
                self.code = (self.code & _TOP) | ((self.code << 1) & (_MASK >> 1)) | self._read_bit()
                self.low = (self.low << 1) & (_MASK >> 1)
                self.high = ((self.high << 1) & (_MASK >> 1)) | _TOP | 1
            else:
                break
        return sym


def ec_encode(payload: bytes) -> EcStream:
    if len(payload) == 0:
        return EcStream(b"", 0)
    model = _AdaptiveModel()
    enc = _Encoder()
    prefix = model.prefix
    freqs = model.freqs
    for sym in payload:
        symlow = prefix(sym)
        enc.encode(symlow, symlow + freqs[sym], model.total)
        model.increment(sym)
        freqs = model.freqs  # rebound on rescale
    return EcStream(enc.finish(), len(payload))


def ec_decode(stream: EcStream) -> bytes:
    if stream.length == 0:
        return b""
    model = _AdaptiveModel()
    dec = _Decoder(stream.coded)
    out = bytearray()
    for _ in range(stream.length):
        sym = dec.decode(model)
        out.append(sym)
        model.increment(sym)
    return bytes(out)


def pack_stream(stream: EcStream) -> bytes:
    return struct.pack("<Q", stream.length) + stream.coded


def unpack_stream(data: bytes, offset: int = 0, coded_len: int | None = None) -> tuple[EcStream, int]:
    """Read a framed stream starting at ``offset``; returns (stream, end offset).

    With ``coded_len`` None the coded bytes run to the end of ``data``.
    """
    if len(data) - offset < 8:
        raise EcError("truncated stream framing")
    (length,) = struct.unpack_from("<Q", data, offset)
    start = offset + 8
    end = len(data) if coded_len is None else start + coded_len
    if end > len(data):
        raise EcError("truncated stream framing")
    return EcStream(bytes(data[start:end]), length), end

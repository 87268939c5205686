"""Encoder-complexity benchmarks: reference 8x8 DCT, op counting, timing, DAUS baseline.

The DCT is deliberately the naive 64-multiply-per-output form, and the timed
kernels are plain Python loops with no vectorization, so the measured
per-pixel ratio reflects arithmetic counts rather than library quality. The
mask encode costs n_c multiplies and n_c adds per pixel regardless of block
size; the DCT reference costs 64 of each per pixel.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from statistics import median

import numpy as np

from .encoder import CodecMode
from .frame_io import BayerFrame, RgbImage
from .rounding import round_half_away


class BenchError(ValueError):
    pass


# --- reference 8x8 orthonormal DCT-II -------------------------------------


def _cos_matrix() -> list[list[float]]:
    c = []
    for i in range(8):
        alpha = math.sqrt(1.0 / 8.0) if i == 0 else math.sqrt(2.0 / 8.0)
        c.append([alpha * math.cos((2 * u + 1) * i * math.pi / 16.0) for u in range(8)])
    return c


_COS = _cos_matrix()
# basis[i][j] is the 8x8 pattern multiplied into the block for output (i, j)
_DCT_BASIS = [
    [[[_COS[i][u] * _COS[j][v] for v in range(8)] for u in range(8)] for j in range(8)]
    for i in range(8)
]


def _dct8x8_rows(rows: list[list[float]]) -> list[list[float]]:
    out = []
    for i in range(8):
        basis_i = _DCT_BASIS[i]
        out_row = []
        for j in range(8):
            basis = basis_i[j]
            acc = 0.0
            for u in range(8):
                block_row = rows[u]
                basis_row = basis[u]
                for v in range(8):
                    acc += block_row[v] * basis_row[v]
            out_row.append(acc)
        out.append(out_row)
    return out


def dct8x8(block) -> np.ndarray:
    """Orthonormal 2-D DCT-II of one 8x8 block (naive 64-multiply-per-output form)."""
    rows = np.asarray(block, dtype=np.float64)
    if rows.shape != (8, 8):
        raise BenchError("dct8x8 expects an 8x8 block")
    return np.asarray(_dct8x8_rows(rows.tolist()))


def idct8x8(coeffs) -> np.ndarray:
    x = np.asarray(coeffs, dtype=np.float64)
    if x.shape != (8, 8):
        raise BenchError("idct8x8 expects an 8x8 block")
    out = np.zeros((8, 8))
    for i in range(8):
        for j in range(8):
            out += x[i, j] * np.asarray(_DCT_BASIS[i][j])
    return out


# --- op counting -----------------------------------------------------------


@dataclass
class OpCount:
    multiplies: Fraction  # per pixel
    adds: Fraction
    divisions: Fraction


_CHANNEL_WEIGHT = {"4:4:4": Fraction(3), "4:2:2": Fraction(2), "4:2:0": Fraction(3, 2)}


def count_ops(
    kx: int, ky: int, nc: int, mode: CodecMode = CodecMode.BAYER, subsampling: str = "4:4:4"
) -> tuple[OpCount, Fraction]:
    """Per-pixel arithmetic of the mask encoder, and the JPEG-DCT cost ratio.

    The encoder spends n_c multiplies and n_c adds per pixel plus one division
    per output value (n_c/(kx*ky) per pixel); the JPEG reference spends 64
    multiplies and adds per pixel on each chroma-weighted channel.
    """
    if kx < 1 or ky < 1 or nc < 1:
        raise BenchError("dims must be positive")
    if subsampling not in _CHANNEL_WEIGHT:
        raise BenchError(f"unknown subsampling {subsampling!r}")
    ops = OpCount(
        multiplies=Fraction(nc),
        adds=Fraction(nc),
        divisions=Fraction(nc, kx * ky),
    )
    jpeg_ratio = 64 * _CHANNEL_WEIGHT[subsampling] / nc
    return ops, jpeg_ratio


def count_encode_ops(frame: BayerFrame, masks: np.ndarray, q_scale: int) -> OpCount:
    """Counter-wrapped encode + quantize; returns the per-pixel ops actually done."""
    nc, kx, ky = masks.shape
    if frame.height % kx or frame.width % ky:
        raise BenchError("frame dims must be divisible by the block")
    pix = frame.samples.tolist()
    mask_rows = masks.tolist()
    mults = adds = divs = 0
    for base_r in range(0, frame.height, kx):
        for base_c in range(0, frame.width, ky):
            for mask in mask_rows:
                acc = 0
                for u in range(kx):
                    row = pix[base_r + u]
                    mrow = mask[u]
                    for v in range(ky):
                        acc += row[base_c + v] * mrow[v]
                        mults += 1
                        adds += 1
                _ = acc // q_scale
                divs += 1
    pixels = frame.height * frame.width
    return OpCount(Fraction(mults, pixels), Fraction(adds, pixels), Fraction(divs, pixels))


# --- wall-clock comparison -------------------------------------------------


@dataclass
class BenchReport:
    ns_per_pixel_dlacs: float
    ns_per_pixel_dct: float
    ratio: float  # dct / dlacs
    iterations: int
    height: int
    width: int
    pixels_timed: int
    threads: int = 1

    def as_dict(self) -> dict:
        return {
            "ns_per_pixel_dlacs": self.ns_per_pixel_dlacs,
            "ns_per_pixel_dct": self.ns_per_pixel_dct,
            "ratio": self.ratio,
            "iterations": self.iterations,
            "frame": [self.height, self.width],
            "pixels_timed": self.pixels_timed,
            "threads": self.threads,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def format_table(self) -> str:
        rows = [
            ("mask encode", self.ns_per_pixel_dlacs),
            ("8x8 DCT", self.ns_per_pixel_dct),
        ]
        lines = [f"{'codec':<12} {'ns/pixel':>12}"]
        lines += [f"{name:<12} {ns:>12.1f}" for name, ns in rows]
        lines.append(f"ratio (DCT/mask encode): {self.ratio:.1f}x over {self.pixels_timed} px")
        return "\n".join(lines)


def _sample_blocks(frame: BayerFrame, k: int, sample_pixels: int) -> list[list[list[int]]]:
    bx, by = frame.height // k, frame.width // k
    if bx == 0 or by == 0:
        raise BenchError("frame smaller than one block")
    want = max(1, min(bx * by, sample_pixels // (k * k)))
    blocks = []
    pix = frame.samples.tolist()
    for idx in range(want):
        bi, bj = divmod(idx, by)
        r, c = bi * k, bj * k
        blocks.append([pix[r + u][c : c + k] for u in range(k)])
    return blocks


def _seeded_masks(nc: int, k: int) -> list[list[list[int]]]:
    rng = np.random.default_rng(2024)
    return rng.integers(-8, 8, size=(nc, k, k)).tolist()


def _encode_pass(blocks: list, masks: list, k: int) -> int:
    sink = 0
    for rows in blocks:
        for mask in masks:
            acc = 0
            for u in range(k):
                row = rows[u]
                mrow = mask[u]
                for v in range(k):
                    acc += row[v] * mrow[v]
            sink ^= acc
    return sink


def _dct_pass(blocks: list) -> float:
    sink = 0.0
    for rows in blocks:
        sink += _dct8x8_rows(rows)[0][0]
    return sink


def time_mask_encode(
    frame: BayerFrame, k: int, nc: int, iterations: int, sample_pixels: int = 65536
) -> float:
    """Median ns/pixel of the pure-Python mask encode at block size k."""
    blocks = _sample_blocks(frame, k, sample_pixels)
    masks = _seeded_masks(nc, k)
    pixels = len(blocks) * k * k
    _encode_pass(blocks, masks, k)  # warm-up
    times = []
    for _ in range(iterations):
        t0 = time.perf_counter()
        _encode_pass(blocks, masks, k)
        times.append(time.perf_counter() - t0)
    return median(times) / pixels * 1e9


def bench_encode_vs_dct(
    frame: BayerFrame, iterations: int, sample_pixels: int = 65536
) -> BenchReport:
    """Time the 8x8x4 integer mask encode against the naive 8x8 DCT.

    Both kernels run single-threaded over the same blocks; the report carries
    per-pixel medians over ``iterations`` timed passes (one warm-up pass each
    is excluded).
    """
    if iterations < 3:
        raise BenchError("iterations must be >= 3")
    int_blocks = _sample_blocks(frame, 8, sample_pixels)
    float_blocks = [[[float(x) for x in row] for row in rows] for rows in int_blocks]
    masks = _seeded_masks(4, 8)
    pixels = len(int_blocks) * 64

    _encode_pass(int_blocks, masks, 8)  # warm-up
    _dct_pass(float_blocks[: max(1, len(float_blocks) // 8)])
    enc_times, dct_times = [], []
    for _ in range(iterations):
        t0 = time.perf_counter()
        _encode_pass(int_blocks, masks, 8)
        enc_times.append(time.perf_counter() - t0)
        t0 = time.perf_counter()
        _dct_pass(float_blocks)
        dct_times.append(time.perf_counter() - t0)
    ns_enc = median(enc_times) / pixels * 1e9
    ns_dct = median(dct_times) / pixels * 1e9
    return BenchReport(
        ns_per_pixel_dlacs=ns_enc,
        ns_per_pixel_dct=ns_dct,
        ratio=ns_dct / ns_enc,
        iterations=iterations,
        height=frame.height,
        width=frame.width,
        pixels_timed=pixels,
    )


# --- down-and-up-sampling baseline ------------------------------------------


def _bilinear_matrix(n_out: int, n_in: int, factor: int) -> np.ndarray:
    w = np.zeros((n_out, n_in))
    src = (np.arange(n_out) + 0.5) / factor - 0.5
    i0 = np.clip(np.floor(src).astype(int), 0, n_in - 1)
    i1 = np.clip(i0 + 1, 0, n_in - 1)
    t = np.clip(src - np.floor(src), 0.0, 1.0)
    t[src <= 0] = 0.0
    t[src >= n_in - 1] = 0.0
    w[np.arange(n_out), i0] += 1.0 - t
    w[np.arange(n_out), i1] += t
    return w


def daus_baseline(image: RgbImage, factor: int) -> RgbImage:
    """Area-average downsample by ``factor`` then bilinear upsample back."""
    if factor < 1:
        raise BenchError("factor must be >= 1")
    if factor == 1:
        return RgbImage(image.planes.copy())
    h, w = image.height, image.width
    if h % factor or w % factor:
        raise BenchError("dims must be divisible by the factor")
    wr = _bilinear_matrix(h, h // factor, factor)
    wc = _bilinear_matrix(w, w // factor, factor)
    planes = []
    for plane in image.planes.astype(np.float64):
        down = plane.reshape(h // factor, factor, w // factor, factor).mean(axis=(1, 3))
        planes.append(wr @ down @ wc.T)
    out = round_half_away(np.clip(np.stack(planes), 0.0, 255.0)).astype(np.uint8)
    return RgbImage(out)

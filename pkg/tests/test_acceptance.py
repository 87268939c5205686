"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report lines.
"""

import time
from fractions import Fraction

import numpy as np

from dlacs.bench import bench_encode_vs_dct, count_ops, daus_baseline, dct8x8, idct8x8
from dlacs.container import build_container, parse_container
from dlacs.decoder import dequantize, transpose_decode
from dlacs.encoder import (
    CodecMode,
    CompRaw,
    compress,
    compress_float,
    compress_rgb,
    compression_ratio,
    quantize,
    select_q_scale,
)
from dlacs.entropy import ec_decode, ec_encode
from dlacs.frame_io import extract_crops
from dlacs.masks import MaskSet, default_scale_grid, integerize_masks
from dlacs.metrics import psnr
from dlacs.rounding import round_half_away
from dlacs.synth import smooth_frame, smooth_rgb
from dlacs.trainer import TrainConfig, finalize_mask_set, train_linear_autoencoder


def _report(name: str) -> None:
    print(f"[acceptance] {name}: PASS")


def test_op_count_ratio():
    ops, ratio = count_ops(8, 8, 4, CodecMode.BAYER)
    assert ops.multiplies == 4
    assert ops.adds == 4
    assert ratio == 48
    assert count_ops(8, 8, 4, subsampling="4:2:2")[1] == 32
    assert count_ops(8, 8, 4, subsampling="4:2:0")[1] == 24
    _report("op-count ratio 48/32/24 exact")


def test_wall_clock_encode_vs_dct():
    start = time.monotonic()
    frame = smooth_frame(2048, 3840, seed=77, sigma=2.0)
    report = bench_encode_vs_dct(frame, iterations=5)
    elapsed = time.monotonic() - start
    assert report.iterations >= 5
    assert report.threads == 1
    assert report.ratio >= 8.0, f"DCT/encode ratio {report.ratio:.1f} below floor"
    assert elapsed < 60.0
    _report(f"wall-clock DCT/encode ratio {report.ratio:.1f}x (>= 8) in {elapsed:.1f}s")


def _four_bit_set(rng, k):
    w = rng.standard_normal((4, k, k))
    w_int, sc, _ = integerize_masks(w, 4)
    return MaskSet(
        kx=k, ky=k, nc=4, bits=4,
        w_float=w.astype(np.float32), w_int=w_int, sc_w=sc,
        d_float=rng.standard_normal((4, k, k)).astype(np.float32),
        q_scale=64,
    )


def test_compression_ratio_exactness():
    rng = np.random.default_rng(5)
    frame = smooth_frame(512, 768, seed=13, sigma=2.0)
    expected = {8: Fraction(1, 48), 16: Fraction(1, 192), 32: Fraction(1, 768)}
    for k, ratio in expected.items():
        ms = _four_bit_set(rng, k)
        cq = quantize(compress(frame, ms.w_int), ms.q_scale)
        blob = build_container(ms, [cq], 512, 768, rgb=False, include_kernel=False)
        payload = (512 // k) * (768 // k) * 4
        n = 4 * k * k
        assert len(blob) == 38 + n + payload  # fixed fields + masks + payload
        cont = parse_container(blob)
        assert cont.planes[0].stored.size == payload
        assert Fraction(payload, 3 * 512 * 768) == ratio
        assert compression_ratio(k, k, 4, CodecMode.BAYER) == ratio
    _report("payload bytes exact; Bayer ratios 1/48, 1/192, 1/768")


def test_ec_losslessness():
    rng = np.random.default_rng(2718)
    for _ in range(1000):
        n = int(rng.integers(0, 4097))
        payload = rng.integers(0, 256, size=n).astype(np.uint8).tobytes()
        assert ec_decode(ec_encode(payload)) == payload
    frame = smooth_frame(256, 256, seed=99, sigma=2.5)
    masks = rng.integers(-8, 8, size=(4, 8, 8)).astype(np.int8)
    cq = quantize(compress(frame, masks), 40)
    raw = cq.stored.tobytes()
    coded = ec_encode(raw)
    assert ec_decode(coded) == raw
    assert len(coded.coded) < len(raw)
    _report(f"EC lossless over 1000 payloads; smooth CompQ {len(raw)}B -> {len(coded.coded)}B")


def test_trainer_vs_pca_oracle():
    start = time.monotonic()
    frame = smooth_frame(832, 832, seed=11, sigma=1.5, dither=1.5)
    crops = extract_crops(frame, 832, 1, seed=0)  # 10816 blocks of 8x8
    _, _, report = train_linear_autoencoder(crops, 8, 8, 4, TrainConfig(epochs=200, seed=0))
    ratio = report.final_mse / report.pca_mse
    assert ratio <= 1.05, f"trained/PCA ratio {ratio:.4f}"

    frame2 = smooth_frame(256, 256, seed=5, sigma=1.0, dither=2.0)
    crops2 = extract_crops(frame2, 128, 6, seed=1)
    _, _, full = train_linear_autoencoder(
        crops2, 2, 2, 4, TrainConfig(learning_rate=0.05, epochs=320, seed=0)
    )
    assert full.final_mse < 1e-4
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    _report(
        f"trained/PCA ratio {ratio:.4f} (<= 1.05); full-rank MSE {full.final_mse:.2e}"
        f" (< 1e-4) in {elapsed:.0f}s"
    )


def _rescan_q(values, grid):
    best = None
    for q in grid:
        q = int(q)
        r = np.clip(np.sign(values / q) * np.floor(np.abs(values / q) + 0.5), -128, 127)
        m = np.mean((q * r - values) ** 2)
        if best is None or m < best[1]:
            best = (q, m)
    return best[0]


def _rescan_sc(w, bits, grid):
    lo, hi = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    best = None
    for sc in grid:
        r = np.clip(np.sign(w * sc) * np.floor(np.abs(w * sc) + 0.5), lo, hi)
        m = np.mean((w - r / sc) ** 2)
        if best is None or m < best[1]:
            best = (sc, m)
    return best[0]


def test_optimality_scans():
    rng = np.random.default_rng(4242)
    grid = np.arange(1, 1025)
    for _ in range(20):
        scale = float(np.exp(rng.uniform(np.log(50), np.log(3e4))))
        values = rng.normal(0.0, scale, size=1500).astype(np.int64).astype(np.float64)
        chosen = select_q_scale([CompRaw(values.reshape(-1, 1, 1).astype(np.int32))], grid)
        assert chosen == _rescan_q(values, grid)
    for _ in range(20):
        bits = int(rng.integers(2, 9))
        w = rng.normal(scale=rng.uniform(0.02, 2.0), size=(2, 4, 4))
        w_int, sc, _ = integerize_masks(w, bits)
        assert sc == _rescan_sc(w, bits, default_scale_grid(w, bits))
    _report("select_q_scale and integerize_masks match exhaustive re-scans (20 each)")


def test_dlacs_not_worse_than_daus():
    # matched ratio 1/16: RGB channel mode with 8x8x4 vs down/up by 4
    train_imgs = [smooth_rgb(256, 256, seed=500 + i, sigma=1.5) for i in range(3)]
    crops = []
    for img in train_imgs:
        for plane in img.plane_frames():
            crops.extend(extract_crops(plane, 128, 2, seed=9))
    w, d, _ = train_linear_autoencoder(crops, 8, 8, 4, TrainConfig(epochs=150, seed=0))
    ms = finalize_mask_set(w, d, bits=4)
    q = select_q_scale([compress(c, ms.w_int) for c in crops[:6]])
    dlacs_psnr, daus_psnr = [], []
    for i in range(20):
        img = smooth_rgb(128, 128, seed=900 + i, sigma=1.5)
        planes = []
        for comp in compress_rgb(img, ms.w_int):
            rec = transpose_decode(dequantize(quantize(comp, q)), ms.d_float)
            planes.append(np.clip(rec, 0.0, 255.0))
        rec_img = round_half_away(np.stack(planes)).astype(np.uint8)
        dlacs_psnr.append(psnr(img.planes, rec_img))
        daus_psnr.append(psnr(img.planes, daus_baseline(img, 4).planes))
    mean_dlacs, mean_daus = np.mean(dlacs_psnr), np.mean(daus_psnr)
    assert mean_dlacs >= mean_daus, f"{mean_dlacs:.2f} < {mean_daus:.2f}"
    _report(
        f"mean PSNR at 1/16: linear decode {mean_dlacs:.2f} dB >= DAUS {mean_daus:.2f} dB"
    )


def test_adjointness_and_dct_properties():
    rng = np.random.default_rng(31)
    for kx, ky, nc, h, w in [(8, 8, 4, 16, 24), (4, 2, 3, 12, 10), (16, 16, 2, 32, 32)]:
        kernel = rng.standard_normal((nc, kx, ky))
        f = rng.standard_normal((h, w))
        g = rng.standard_normal((h // kx, w // ky, nc))
        lhs = np.sum(compress_float(f, kernel) * g)
        rhs = np.sum(f * transpose_decode(g, kernel))
        assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), abs(rhs))
    worst = 0.0
    for _ in range(20):
        block = 255 * rng.random((8, 8))
        worst = max(worst, float(np.abs(idct8x8(dct8x8(block)) - block).max()))
    assert worst < 1e-9
    _report(f"adjoint identity < 1e-9 rel; idct(dct) max err {worst:.1e}")

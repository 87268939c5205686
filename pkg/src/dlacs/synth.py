"""Seeded synthetic frames with smooth, natural-like statistics (for tests and demos)."""

from __future__ import annotations

import numpy as np

from .frame_io import BayerFrame, Pattern, RgbImage


def _gaussian_blur(field: np.ndarray, sigma: float) -> np.ndarray:
    """Circular Gaussian blur via FFT; deterministic for a given input."""
    h, w = field.shape
    fy = np.fft.fftfreq(h)
    fx = np.fft.rfftfreq(w)
    # Fourier transform of a Gaussian with spatial std sigma
    gy = np.exp(-2.0 * (np.pi * sigma * fy) ** 2)
    gx = np.exp(-2.0 * (np.pi * sigma * fx) ** 2)
    return np.fft.irfft2(np.fft.rfft2(field) * np.outer(gy, gx), s=(h, w))


def smooth_field(
    height: int,
    width: int,
    seed: int,
    sigma: float = 2.0,
    octaves: int = 2,
    dither: float = 0.0,
) -> np.ndarray:
    """Smoothed multi-octave noise stretched to [0, 255], returned as float64.

    ``dither`` adds uniform noise of that amplitude (in levels) before the
    stretch, giving the corpus a sensor-noise-like floor.
    """
    rng = np.random.default_rng(seed)
    acc = np.zeros((height, width))
    for k in range(octaves):
        acc += 0.6**k * _gaussian_blur(rng.standard_normal((height, width)), sigma * 2**k)
    lo, hi = acc.min(), acc.max()
    if hi > lo:
        acc = (acc - lo) / (hi - lo)
    acc = 12.0 + 231.0 * acc
    if dither > 0.0:
        acc = acc + rng.uniform(-dither, dither, size=acc.shape)
    return np.clip(acc, 0.0, 255.0)


def smooth_frame(
    height: int,
    width: int,
    seed: int,
    sigma: float = 2.0,
    octaves: int = 2,
    dither: float = 0.0,
    pattern: Pattern = Pattern.RGGB,
) -> BayerFrame:
    field = smooth_field(height, width, seed, sigma, octaves, dither)
    return BayerFrame(np.round(field).astype(np.uint8), pattern)


def smooth_rgb(
    height: int,
    width: int,
    seed: int,
    sigma: float = 2.0,
    octaves: int = 2,
    chroma: float = 24.0,
) -> RgbImage:
    """Smooth luminance plus small per-channel smooth deviations."""
    rng = np.random.default_rng(seed)
    luma = smooth_field(height, width, rng.integers(1 << 31), sigma, octaves)
    planes = []
    for _ in range(3):
        dev = _gaussian_blur(rng.standard_normal((height, width)), sigma)
        dev *= chroma / max(np.abs(dev).max(), 1e-12)
        planes.append(np.clip(luma + dev, 0.0, 255.0))
    return RgbImage(np.round(np.stack(planes)).astype(np.uint8))

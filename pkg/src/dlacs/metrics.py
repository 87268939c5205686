"""PSNR, MSE and SSIM for single planes and RGB images.

SSIM uses the canonical configuration: 11x11 Gaussian window, sigma 1.5,
K1=0.01, K2=0.03, L=255, averaged over valid window positions. RGB metrics
are a single mean over all three planes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


class MetricsError(ValueError):
    pass


@dataclass
class QualityReport:
    mse: float
    psnr: float  # dB; math.inf when mse == 0
    ssim: float

    def as_dict(self) -> dict:
        # JSON has no Infinity; a null psnr_db marks a lossless comparison
        return {
            "mse": self.mse,
            "psnr_db": None if math.isinf(self.psnr) else self.psnr,
            "ssim": self.ssim,
        }


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise MetricsError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def mse(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.mean((a - b) ** 2))


def psnr(a, b, max_val: float = 255.0) -> float:
    m = mse(a, b)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(max_val**2 / m)


def _gaussian_window() -> np.ndarray:
    r = SSIM_WINDOW // 2
    g = np.exp(-0.5 * (np.arange(-r, r + 1) / SSIM_SIGMA) ** 2)
    w = np.outer(g, g)
    return w / w.sum()


_WINDOW = _gaussian_window()


def _filter_valid(x: np.ndarray) -> np.ndarray:
    views = np.lib.stride_tricks.sliding_window_view(x, (SSIM_WINDOW, SSIM_WINDOW))
    return np.tensordot(views, _WINDOW, axes=([2, 3], [0, 1]))


def _ssim_plane(a: np.ndarray, b: np.ndarray, max_val: float) -> float:
    if min(a.shape) < SSIM_WINDOW:
        raise MetricsError(f"dims must be >= {SSIM_WINDOW}x{SSIM_WINDOW} for SSIM")
    c1 = (SSIM_K1 * max_val) ** 2
    c2 = (SSIM_K2 * max_val) ** 2
    mu_a = _filter_valid(a)
    mu_b = _filter_valid(b)
    var_a = _filter_valid(a * a) - mu_a**2
    var_b = _filter_valid(b * b) - mu_b**2
    cov = _filter_valid(a * b) - mu_a * mu_b
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2)
    return float(np.mean(num / den))


def ssim(a, b, max_val: float = 255.0) -> float:
    a, b = _pair(a, b)
    if a.ndim == 2:
        return _ssim_plane(a, b, max_val)
    if a.ndim == 3:
        return float(np.mean([_ssim_plane(pa, pb, max_val) for pa, pb in zip(a, b)]))
    raise MetricsError("expected 2-D plane or 3-D plane stack")


def quality_report(a, b, max_val: float = 255.0) -> QualityReport:
    return QualityReport(mse=mse(a, b), psnr=psnr(a, b, max_val), ssim=ssim(a, b, max_val))

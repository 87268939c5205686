import shutil
import subprocess
from pathlib import Path

import numpy as np
import pytest

from dlacs_nn.pgm import save_pgm

CODEC = shutil.which("dlacs")


def run_codec(*args):
    assert CODEC, "primary codec CLI not on PATH"
    return subprocess.run([CODEC, *args], check=True, capture_output=True, text=True)


def smooth_samples(height, width, seed, sigma=1.5):
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((height, width))
    fy = np.fft.fftfreq(height)
    fx = np.fft.rfftfreq(width)
    g = np.exp(-2.0 * (np.pi * sigma) ** 2 * (fy[:, None] ** 2 + fx[None, :] ** 2))
    s = np.fft.irfft2(np.fft.rfft2(noise) * g, s=(height, width))
    s = (s - s.min()) / (s.max() - s.min())
    return np.round(12.0 + 231.0 * s).astype(np.uint8)


@pytest.fixture(scope="session")
def mask_file(tmp_path_factory):
    root = tmp_path_factory.mktemp("codec")
    corpus = root / "corpus"
    corpus.mkdir()
    for i in range(3):
        save_pgm(smooth_samples(256, 256, 100 + i), corpus / f"f{i}.pgm")
    path = root / "m.dlm"
    run_codec(
        "train", "--input", str(corpus), "--out", str(path),
        "--crop", "64", "--count", "6", "--seed", "7", "--epochs", "60",
    )
    return path


@pytest.fixture(scope="session")
def paired_data(tmp_path_factory, mask_file):
    """30 container/ground-truth pairs of 64x64 crops (24 train + 6 held out)."""
    data = tmp_path_factory.mktemp("pairs")
    pairs = []
    for i in range(30):
        pgm = data / f"c{i:02d}.pgm"
        save_pgm(smooth_samples(64, 64, 2000 + i), pgm)
        container = data / f"c{i:02d}.dlacs"
        run_codec(
            "compress", "--input", str(pgm), "--masks", str(mask_file), "--out", str(container)
        )
        pairs.append((container, pgm))
    return pairs


def linear_decode(container: Path, out: Path) -> Path:
    run_codec("decompress", "--input", str(container), "--out", str(out))
    return out


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    m = np.mean((a.astype(np.float64) - b.astype(np.float64)) ** 2)
    return float("inf") if m == 0 else 10.0 * np.log10(255.0**2 / m)

"""Learn the float encoder masks and decode kernel by SGD on block reconstruction MSE.

Pixels are scaled to [0, 1] for training. Blocks are not mean-centered (the
pipeline has no bias term), so the PCA verification oracle uses the uncentered
second-moment matrix. MSE here means the mean over blocks of the squared L2
norm of the block residual — the same units as the sum of discarded
eigenvalues reported by the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .frame_io import BayerFrame
from .masks import MaskSet, integerize_masks


class TrainError(ValueError):
    pass


@dataclass
class TrainConfig:
    learning_rate: float = 1e-2
    epochs: int = 200
    batch_size: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise TrainError("learning rate must be positive")
        if self.epochs < 1:
            raise TrainError("epochs must be >= 1")


@dataclass
class TrainReport:
    epoch_mse: list[float] = field(default_factory=list)
    final_mse: float = 0.0
    pca_mse: float = 0.0


def blocks_from_crops(crops: list[BayerFrame], kx: int, ky: int) -> np.ndarray:
    """Flattened kx*ky blocks from all crops, scaled to [0, 1]; shape (n, kx*ky)."""
    if not crops:
        raise TrainError("empty crop list")
    rows = []
    for crop in crops:
        s = crop.samples
        if s.shape[0] % kx or s.shape[1] % ky:
            raise TrainError("crop dims must be divisible by block dims")
        bx, by = s.shape[0] // kx, s.shape[1] // ky
        blocks = s.reshape(bx, kx, by, ky).transpose(0, 2, 1, 3).reshape(-1, kx * ky)
        rows.append(blocks)
    return np.concatenate(rows).astype(np.float64) / 255.0


def loss_and_grads(
    x: np.ndarray, w: np.ndarray, d: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Blockwise loss mean ||x - D^T(Wx)||^2 and its analytic gradients.

    ``w`` and ``d`` are (n_c, kx*ky); rows of ``x`` are blocks.
    """
    m = len(x)
    z = x @ w.T
    err = z @ d - x
    loss = float(np.mean(np.sum(err**2, axis=1)))
    g_d = 2.0 / m * z.T @ err
    g_w = 2.0 / m * (err @ d.T).T @ x
    return loss, g_w, g_d


class PcaResult(NamedTuple):
    basis: np.ndarray  # (n_c, kx*ky), top eigenvectors of the second moment
    residual_mse: float  # sum of the discarded eigenvalues
    degenerate: bool


def pca_block_oracle(crops: list[BayerFrame], kx: int, ky: int, nc: int) -> PcaResult:
    """Exact optimal rank-n_c linear autoencoder via eigendecomposition."""
    x = blocks_from_crops(crops, kx, ky)
    d = kx * ky
    if len(x) < d:
        raise TrainError(f"need at least {d} blocks for the oracle")
    if not np.any(x):
        return PcaResult(np.zeros((nc, d)), 0.0, True)
    s = x.T @ x / len(x)
    evals, evecs = np.linalg.eigh(s)
    residual = float(np.sum(np.clip(evals[: d - nc], 0.0, None)))
    basis = evecs[:, d - nc :][:, ::-1].T
    return PcaResult(basis, residual, False)


def train_linear_autoencoder(
    crops: list[BayerFrame], kx: int, ky: int, nc: int, cfg: TrainConfig
) -> tuple[np.ndarray, np.ndarray, TrainReport]:
    """Plain minibatch SGD; returns (w_float, d_float, report), kernels (n_c, kx, ky).

    Deterministic for a fixed cfg.seed.
    """
    x = blocks_from_crops(crops, kx, ky)
    n, d = x.shape
    rng = np.random.default_rng(cfg.seed)
    w = 0.1 * rng.standard_normal((nc, d))
    dd = 0.1 * rng.standard_normal((nc, d))
    report = TrainReport()
    for _ in range(cfg.epochs):
        order = rng.permutation(n)
        for start in range(0, n, cfg.batch_size):
            batch = x[order[start : start + cfg.batch_size]]
            _, g_w, g_d = loss_and_grads(batch, w, dd)
            w -= cfg.learning_rate * g_w
            dd -= cfg.learning_rate * g_d
        epoch_loss, _, _ = loss_and_grads(x, w, dd)
        report.epoch_mse.append(epoch_loss)
    report.final_mse = report.epoch_mse[-1]
    report.pca_mse = pca_block_oracle(crops, kx, ky, nc).residual_mse
    return w.reshape(nc, kx, ky), dd.reshape(nc, kx, ky), report


def finalize_mask_set(w_float: np.ndarray, d_float: np.ndarray, bits: int) -> MaskSet:
    """Integerize the encoder kernel and bundle the decode kernel.

    The stored decode kernel is divided by sc_W so it applies directly to
    integer-encoded data; the decoder is display-side and is not integerized.
    """
    nc, kx, ky = w_float.shape
    w_int, sc_w, degenerate = integerize_masks(w_float, bits)
    return MaskSet(
        kx=kx,
        ky=ky,
        nc=nc,
        bits=bits,
        w_float=np.asarray(w_float, dtype=np.float32),
        w_int=w_int,
        sc_w=sc_w,
        d_float=(np.asarray(d_float, dtype=np.float64) / sc_w).astype(np.float32),
        degenerate=degenerate,
    )

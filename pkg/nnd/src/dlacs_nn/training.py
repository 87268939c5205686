"""Train the deep decoder on paired containers and ground-truth crops.

Only decompression-side weights exist in the network; the capture-side
parameters (integer masks, Q_scale) are fixed inside the containers. Targets
are normalized to [-1, 1] to match the Tanh-residual output and rescaled on
inference.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import torch

from .container import ContainerView, parse_container
from .infer import comp_tensor, decoder_for_container, state_to_arrays
from .model import DeepDecoder
from .pgm import load_pgm


class TrainingError(ValueError):
    pass


def _load_pairs(pairs) -> tuple[list[ContainerView], list[np.ndarray]]:
    views, targets = [], []
    for container_path, pgm_path in pairs:
        views.append(parse_container(Path(container_path).read_bytes()))
        targets.append(load_pgm(pgm_path))
    if not views:
        raise TrainingError("no training pairs")
    head = views[0]
    for v in views[1:]:
        if (v.kx, v.ky, v.nc, v.q_scale, v.nx, v.ny) != (
            head.kx, head.ky, head.nc, head.q_scale, head.nx, head.ny,
        ):
            raise TrainingError("training containers must share dims and Q_scale")
        if not np.array_equal(v.d_float, head.d_float):
            raise TrainingError("training containers must share the decode kernel")
    for v, t in zip(views, targets):
        if t.shape != (v.nx, v.ny):
            raise TrainingError("ground-truth dims do not match the container")
    return views, targets


def train_decoder(
    pairs,
    epochs: int = 20,
    lr: float = 1e-3,
    seed: int = 0,
    batch_size: int = 4,
) -> tuple[dict[str, np.ndarray], list[float]]:
    """Minimize MSE between the network output and the ground truth.

    Deterministic for a fixed seed; returns (weight arrays, per-epoch loss
    trace).
    """
    views, targets = _load_pairs(pairs)
    model = decoder_for_container(views[0], seed)
    comps = torch.cat([comp_tensor(v, dtype=torch.float32) for v in views])
    truths = torch.stack(
        [torch.as_tensor((t.astype(np.float32) - 127.5) / 127.5)[None] for t in targets]
    )
    opt = torch.optim.Adam(model.parameters(), lr=lr)
    gen = torch.Generator().manual_seed(seed)
    trace = []
    model.train()
    n = len(views)
    for _ in range(epochs):
        order = torch.randperm(n, generator=gen)
        total, batches = 0.0, 0
        for start in range(0, n, batch_size):
            idx = order[start : start + batch_size]
            opt.zero_grad()
            out = model(comps[idx])
            loss = torch.mean((out - truths[idx]) ** 2)
            loss.backward()
            opt.step()
            total += float(loss.detach())
            batches += 1
        trace.append(total / batches)
    model.eval()
    return state_to_arrays(model), trace


def gradient_check(
    model: DeepDecoder, comp: torch.Tensor, target: torch.Tensor, points: int = 5, eps: float = 1e-4
) -> float:
    """Max relative error between autograd and central differences at random weights.

    Runs in eval mode (fixed normalization statistics) and double precision.
    """
    model = model.double().eval()
    comp = comp.double()
    target = target.double()

    def loss_value() -> torch.Tensor:
        return torch.mean((model(comp) - target) ** 2)

    loss = loss_value()
    loss.backward()
    params = [p for p in model.parameters() if p.grad is not None and p.numel() > 0]
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(points):
        p = params[rng.integers(0, len(params))]
        flat = p.detach().reshape(-1)
        i = int(rng.integers(0, flat.numel()))
        analytic = float(p.grad.reshape(-1)[i])
        with torch.no_grad():
            flat[i] += eps
            up = float(loss_value())
            flat[i] -= 2 * eps
            down = float(loss_value())
            flat[i] += eps
        numeric = (up - down) / (2 * eps)
        denom = max(abs(numeric), abs(analytic), 1e-12)
        worst = max(worst, abs(analytic - numeric) / denom)
    return worst

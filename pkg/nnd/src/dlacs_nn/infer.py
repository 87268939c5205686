"""Container inference: run the deep decoder and emit 8-bit frames."""

from __future__ import annotations

import numpy as np
import torch

from .archive import load_archive
from .container import ContainerView, parse_container
from .model import DeepDecoder, build_decoder


def state_to_arrays(model: torch.nn.Module) -> dict[str, np.ndarray]:
    return {k: v.detach().cpu().numpy() for k, v in model.state_dict().items()}


def arrays_to_state(model: torch.nn.Module, arrays: dict[str, np.ndarray]) -> None:
    state = model.state_dict()
    loaded = {}
    for key, ref in state.items():
        if key not in arrays:
            raise KeyError(f"archive is missing tensor {key!r}")
        loaded[key] = torch.as_tensor(arrays[key]).to(ref.dtype).reshape(ref.shape)
    model.load_state_dict(loaded)


def decoder_for_container(view: ContainerView, seed: int = 0) -> DeepDecoder:
    return build_decoder(view.kx, view.ky, view.nc, view.q_scale, view.d_float, seed)


def comp_tensor(view: ContainerView, dtype=torch.float64) -> torch.Tensor:
    """Dequantized compressed array as (1, nc, bx, by)."""
    signed = view.stored.astype(np.int32) - 128
    comp = signed.astype(np.float64) * view.q_scale
    return torch.as_tensor(comp.transpose(2, 0, 1)[None], dtype=dtype)


def nn_decompress(container_bytes: bytes, weights: dict[str, np.ndarray] | None = None,
                  weights_path=None, seed: int = 0) -> np.ndarray:
    """Decode a container with the deep network; returns uint8 samples (nx, ny).

    Runs in double precision so an identity-initialized network reproduces the
    linear decode byte for byte. Without weights, the freshly initialized
    (identity) network is used.
    """
    view = parse_container(container_bytes)
    model = decoder_for_container(view, seed)
    if weights_path is not None:
        weights = load_archive(weights_path)
    if weights is not None:
        arrays_to_state(model, weights)
    model.double().eval()
    with torch.no_grad():
        out = model(comp_tensor(view))
    pixels = out[0, 0].numpy() * 127.5 + 127.5
    clipped = np.clip(pixels, 0.0, 255.0)
    return (np.sign(clipped) * np.floor(np.abs(clipped) + 0.5)).astype(np.uint8)

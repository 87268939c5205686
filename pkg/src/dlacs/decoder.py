"""Display-side linear baseline: dequantize and apply the learned transpose kernel."""

from __future__ import annotations

import numpy as np

from .encoder import CompQ
from .frame_io import BayerFrame, Pattern
from .rounding import round_half_away


class DecodeError(ValueError):
    """Out-of-contract decoder input."""


def dequantize(comp_q: CompQ) -> np.ndarray:
    return (comp_q.stored.astype(np.int32) - 128).astype(np.float64) * comp_q.q_scale


def transpose_decode(comp: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Blockwise outer product: block(i,j)[u,v] = sum_c comp[i,j,c] * d[c,u,v].

    The exact adjoint of the blocked masked sum; blocks tile the output with
    no overlap.
    """
    comp = np.asarray(comp, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    if comp.ndim != 3 or d.ndim != 3 or comp.shape[2] != d.shape[0]:
        raise DecodeError(
            f"channel mismatch: comp {comp.shape} vs kernel {d.shape}"
        )
    bx, by, _ = comp.shape
    _, kx, ky = d.shape
    blocks = np.einsum("ijc,cuv->iujv", comp, d)
    return blocks.reshape(bx * kx, by * ky)


def decode_to_frame(decoded: np.ndarray, pattern: Pattern = Pattern.RGGB) -> BayerFrame:
    """Clamp to [0, 255] and round half away from zero."""
    samples = round_half_away(np.clip(decoded, 0.0, 255.0)).astype(np.uint8)
    return BayerFrame(samples, pattern)

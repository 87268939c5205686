"""Round half away from zero — the single rounding rule used across the codec."""

from __future__ import annotations

import numpy as np


def round_half_away(x):
    x = np.asarray(x)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)

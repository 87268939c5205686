"""Bilinear RGGB demosaic for quality comparison (no white-balance or color tuning).

Each missing color is the average of its nearest same-color neighbors.
Border taps are mirrored (index -k maps to k) rather than clamped: mirroring
preserves the Bayer phase, so an out-of-range tap always lands on a sample of
the right color.
"""

from __future__ import annotations

import numpy as np

from .frame_io import BayerFrame, Pattern, RgbImage
from .rounding import round_half_away


class DemosaicError(ValueError):
    pass


def demosaic_bilinear(frame: BayerFrame) -> RgbImage:
    if frame.pattern is not Pattern.RGGB:
        raise DemosaicError("demosaic requires an RGGB frame")
    if frame.height % 2 or frame.width % 2:
        raise DemosaicError("demosaic requires even dims")

    p = np.pad(frame.samples.astype(np.float64), 1, mode="reflect")
    s = frame.samples.astype(np.float64)
    h, w = s.shape
    # offset views of the padded image: c = center, n/s/e/w = 4-neighbors,
    # nw/ne/sw/se = diagonals
    c = p[1 : 1 + h, 1 : 1 + w]
    n_ = p[0:h, 1 : 1 + w]
    s_ = p[2 : 2 + h, 1 : 1 + w]
    w_ = p[1 : 1 + h, 0:w]
    e_ = p[1 : 1 + h, 2 : 2 + w]
    nw = p[0:h, 0:w]
    ne = p[0:h, 2 : 2 + w]
    sw = p[2 : 2 + h, 0:w]
    se = p[2 : 2 + h, 2 : 2 + w]

    cross = (n_ + s_ + w_ + e_) / 4.0
    diag = (nw + ne + sw + se) / 4.0
    horiz = (w_ + e_) / 2.0
    vert = (n_ + s_) / 2.0

    red = np.empty_like(s)
    green = np.empty_like(s)
    blue = np.empty_like(s)

    # RGGB site classes: (even row, even col)=R, (even, odd)=Gr,
    # (odd, even)=Gb, (odd, odd)=B
    red[0::2, 0::2] = c[0::2, 0::2]
    red[0::2, 1::2] = horiz[0::2, 1::2]
    red[1::2, 0::2] = vert[1::2, 0::2]
    red[1::2, 1::2] = diag[1::2, 1::2]

    green[0::2, 0::2] = cross[0::2, 0::2]
    green[0::2, 1::2] = c[0::2, 1::2]
    green[1::2, 0::2] = c[1::2, 0::2]
    green[1::2, 1::2] = cross[1::2, 1::2]

    blue[0::2, 0::2] = diag[0::2, 0::2]
    blue[0::2, 1::2] = vert[0::2, 1::2]
    blue[1::2, 0::2] = horiz[1::2, 0::2]
    blue[1::2, 1::2] = c[1::2, 1::2]

    planes = round_half_away(np.stack([red, green, blue])).astype(np.uint8)
    return RgbImage(planes)

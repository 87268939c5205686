import numpy as np
import pytest

from dlacs.demosaic import DemosaicError, demosaic_bilinear
from dlacs.frame_io import BayerFrame, Pattern
from dlacs.synth import smooth_frame


def test_constant_frame():
    frame = BayerFrame(np.full((8, 8), 77, dtype=np.uint8))
    img = demosaic_bilinear(frame)
    assert (img.planes == 77).all()


def test_two_by_two_collapses_to_single_samples():
    frame = BayerFrame(np.array([[100, 50], [50, 200]], dtype=np.uint8))
    img = demosaic_bilinear(frame)
    assert (img.planes[0] == 100).all()
    assert (img.planes[1] == 50).all()
    assert (img.planes[2] == 200).all()


def test_output_dims_match_input():
    img = demosaic_bilinear(smooth_frame(128, 128, seed=1))
    assert img.height == 128 and img.width == 128


def test_green_sites_pass_through(rng):
    samples = rng.integers(0, 256, size=(16, 16)).astype(np.uint8)
    img = demosaic_bilinear(BayerFrame(samples))
    assert np.array_equal(img.planes[1][0::2, 1::2], samples[0::2, 1::2])
    assert np.array_equal(img.planes[1][1::2, 0::2], samples[1::2, 0::2])
    # red/blue sites keep their raw sample too
    assert np.array_equal(img.planes[0][0::2, 0::2], samples[0::2, 0::2])
    assert np.array_equal(img.planes[2][1::2, 1::2], samples[1::2, 1::2])


def test_rejects_plain_pattern():
    frame = BayerFrame(np.zeros((4, 4), dtype=np.uint8), Pattern.PLAIN)
    with pytest.raises(DemosaicError):
        demosaic_bilinear(frame)


def test_rejects_odd_dims():
    with pytest.raises(DemosaicError):
        demosaic_bilinear(BayerFrame(np.zeros((5, 4), dtype=np.uint8)))

import math

import numpy as np
import pytest

from dlacs.metrics import MetricsError, mse, psnr, quality_report, ssim
from dlacs.synth import smooth_field


def test_mse_identical():
    a = np.arange(16.0).reshape(4, 4)
    assert mse(a, a) == 0.0


def test_mse_unit_offset():
    a = np.zeros((4, 4))
    assert mse(a, a + 1) == 1.0


def test_mse_hand_value():
    assert mse([0.0, 2.0], [1.0, 0.0]) == 2.5


def test_psnr_identical_is_infinite():
    a = np.zeros((4, 4))
    assert math.isinf(psnr(a, a))


def test_psnr_unit_mse():
    a = np.zeros((16, 16))
    b = a.copy()
    b[::2] += 1
    b[1::2] -= 1
    assert psnr(a, b) == pytest.approx(20 * math.log10(255), abs=1e-9)
    assert psnr(a, b) == pytest.approx(48.1308, abs=1e-4)


def test_psnr_worst_case():
    a = np.zeros((4, 4))
    assert psnr(a, a + 255.0) == pytest.approx(0.0, abs=1e-12)


def test_ssim_identical():
    img = smooth_field(32, 32, seed=3)
    assert ssim(img, img) == pytest.approx(1.0)


def test_ssim_constant_planes_closed_form():
    mu_x, mu_y = 90.0, 140.0
    a = np.full((16, 16), mu_x)
    b = np.full((16, 16), mu_y)
    c1 = (0.01 * 255) ** 2
    expected = (2 * mu_x * mu_y + c1) / (mu_x**2 + mu_y**2 + c1)
    assert ssim(a, b) == pytest.approx(expected, rel=1e-12)


def test_ssim_anticorrelated_negative():
    # checkerboard keeps window means ~0 so the negative covariance sets the sign
    i, j = np.meshgrid(np.arange(32), np.arange(32), indexing="ij")
    p = 100.0 * (-1.0) ** (i + j)
    assert ssim(p, -p) < 0


def test_ssim_bounds(rng):
    for _ in range(5):
        a = 255 * rng.random((16, 16))
        b = 255 * rng.random((16, 16))
        assert -1.0 <= ssim(a, b) <= 1.0


def test_metric_symmetry(rng):
    a = 255 * rng.random((16, 16))
    b = 255 * rng.random((16, 16))
    assert mse(a, b) == mse(b, a)
    assert psnr(a, b) == psnr(b, a)
    assert ssim(a, b) == pytest.approx(ssim(b, a), rel=1e-12)


def test_psnr_decreases_with_noise(rng):
    img = smooth_field(32, 32, seed=5)
    noise = rng.standard_normal(img.shape)
    values = [psnr(img, img + amp * noise) for amp in (1.0, 2.0, 4.0, 8.0)]
    assert all(x > y for x, y in zip(values, values[1:]))


def test_rgb_metrics_joint_mean():
    a = np.zeros((3, 16, 16))
    b = a.copy()
    b[0] += 3.0  # error on one plane only
    assert mse(a, b) == pytest.approx(3.0)
    report = quality_report(a, b)
    assert report.psnr == pytest.approx(10 * math.log10(255**2 / 3.0))
    assert 0 < report.ssim <= 1.0


def test_dimension_mismatch():
    with pytest.raises(MetricsError, match="mismatch"):
        mse(np.zeros((2, 2)), np.zeros((3, 2)))


def test_quality_report_dict_infinity():
    a = np.zeros((16, 16))
    d = quality_report(a, a).as_dict()
    assert d["psnr_db"] is None
    assert d["ssim"] == pytest.approx(1.0)
    assert d["mse"] == 0.0

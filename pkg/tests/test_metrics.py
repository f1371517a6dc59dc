import math

import numpy as np
import pytest

from lflab.errors import ParameterError, ShapeError
from lflab.lightfield import LightField, View
from lflab.metrics import direct_psnr, mean_focal_psnr, mse, psnr
from lflab.ndjpeg import CodecConfig, decode, encode
from lflab.refocus import render_refocused

from conftest import random_lf


def test_identical_is_infinite(rng):
    a = rng.integers(0, 256, size=(4, 5, 3), dtype=np.uint8)
    assert psnr(a, a) == math.inf


def test_one_channel_full_scale():
    a = np.zeros((1, 1, 3), dtype=np.uint8)
    b = a.copy()
    b[0, 0, 1] = 255
    assert mse(a, b) == pytest.approx(255**2 / 3)
    assert psnr(a, b) == pytest.approx(10 * math.log10(3), abs=1e-3)
    assert psnr(a, b) == pytest.approx(4.771, abs=1e-3)


def test_uniform_unit_error():
    a = np.full((6, 7, 3), 100, dtype=np.uint8)
    assert psnr(a, a + 1) == pytest.approx(10 * math.log10(65025))
    assert psnr(a, a + 1) == pytest.approx(48.131, abs=1e-3)


def test_real_inputs_are_rounded_first():
    a = np.array([[[10.4, 10.5, -2.0]]])
    b = np.array([[[10, 11, 0]]], dtype=np.uint8)
    assert psnr(a, b) == math.inf


def test_symmetry_and_shape(rng):
    a = rng.integers(0, 256, size=(3, 3, 3), dtype=np.uint8)
    b = rng.integers(0, 256, size=(3, 3, 3), dtype=np.uint8)
    assert psnr(a, b) == psnr(b, a)
    with pytest.raises(ShapeError):
        psnr(a, b[:2])


def test_monotone_in_single_error():
    a = np.full((4, 4, 3), 100, dtype=np.uint8)
    b = a.copy()
    values = []
    for err in range(1, 60, 7):
        b[1, 2, 0] = 100 + err
        values.append(psnr(a, b))
    assert all(y < x for x, y in zip(values, values[1:]))


def test_direct_psnr_reductions(rng):
    lf = random_lf(rng, 1, 1, W=6, H=5)
    other = random_lf(rng, 1, 1, W=6, H=5)
    assert direct_psnr(lf, lf) == math.inf
    assert direct_psnr(lf, other) == psnr(View(lf.samples[0, 0]), View(other.samples[0, 0]))


def test_direct_psnr_pools_views():
    a = np.full((1, 2, 4, 4, 3), 50, dtype=np.uint8)
    b = a.copy()
    b[0, 1] += 4  # MSE 16 on one view, 0 on the other
    assert mse(LightField(a), LightField(b)) == pytest.approx(8.0)
    assert direct_psnr(LightField(a), LightField(b)) == pytest.approx(10 * math.log10(65025 / 8))


def test_direct_psnr_geometry(rng):
    with pytest.raises(ShapeError):
        direct_psnr(random_lf(rng, 2, 2), random_lf(rng, 2, 3))


def test_mean_focal_identical(rng):
    lf = random_lf(rng, 3, 3)
    mean, per = mean_focal_psnr(lf, lf, [-1, 0, 1])
    assert mean == math.inf and per == [math.inf] * 3


def test_mean_focal_single_alpha(rng):
    a = random_lf(rng, 3, 3, W=8, H=8)
    b = random_lf(rng, 3, 3, W=8, H=8)
    mean, per = mean_focal_psnr(a, b, [0.4])
    assert mean == per[0] == psnr(render_refocused(a, 0.4), render_refocused(b, 0.4))


def test_mean_is_arithmetic_mean_of_psnrs(rng):
    a = random_lf(rng, 3, 3, W=8, H=8)
    b = random_lf(rng, 3, 3, W=8, H=8)
    mean, per = mean_focal_psnr(a, b, [-1, 0.5, 2])
    assert mean == pytest.approx(sum(per) / 3)


def test_rendered_beats_direct_on_small_baseline(small_baseline_lf):
    lf = small_baseline_lf
    decoded = decode(encode(lf, CodecConfig(4, 50)))
    mean, _ = mean_focal_psnr(lf, decoded, [-1, -0.5, 0, 0.5, 1])
    assert mean > direct_psnr(lf, decoded)


def test_mean_focal_errors(rng):
    with pytest.raises(ParameterError):
        mean_focal_psnr(random_lf(rng), random_lf(rng), [])
    with pytest.raises(ShapeError):
        mean_focal_psnr(random_lf(rng, 2, 2), random_lf(rng, 1, 2), [0])

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from di3stego.attacks import (
    AttackSpec,
    crop_attack,
    dct_matrix,
    dct_quantize_attack,
    haar_forward,
    haar_inverse,
    quality_table,
    rotation_attack,
    wavelet_quantize_attack,
)
from di3stego.bench import synthetic_corpus, synthetic_image
from di3stego.errors import BadAngle, BadParameter, BadPercentage, BadQuality
from di3stego.image_io import GrayImage


def const(value, h=24, w=40):
    return GrayImage.from_array(np.full((h, w), value))


images = st.tuples(st.integers(1, 20), st.integers(1, 20)).flatmap(
    lambda hw: arrays(np.uint8, hw)
).map(GrayImage.from_array)


def test_crop_zero_is_identity():
    img = synthetic_image(32, 1)
    assert crop_attack(img, 0) == img


def test_crop_full_blanks_everything():
    assert crop_attack(synthetic_image(32, 1), 100).pixels.max() == 0


def test_crop_two_by_two_quarter():
    img = GrayImage.from_array([[9, 9], [9, 9]])
    assert crop_attack(img, 25).pixels.tolist() == [[0, 9], [9, 9]]


def test_crop_region_matches_formula():
    img = const(200, 100, 100)
    out = crop_attack(img, 81)
    s = round(100 * math.sqrt(0.81))
    top = (100 - s) // 2
    zeros = np.argwhere(out.pixels == 0)
    assert zeros.min(axis=0).tolist() == [top, top]
    assert zeros.max(axis=0).tolist() == [top + s - 1, top + s - 1]
    assert len(zeros) == s * s


@pytest.mark.parametrize("pct", [-1, 101])
def test_crop_bad_percentage(pct):
    with pytest.raises(BadPercentage):
        crop_attack(const(1), pct)


def test_rotation_zero_identity():
    img = synthetic_image(48, 2)
    assert rotation_attack(img, 0) == img


@pytest.mark.parametrize("theta", [90, 180, 270])
def test_quarter_turns_exact(theta, rng):
    img = GrayImage.from_array(rng.integers(0, 256, (64, 64)))
    assert rotation_attack(img, theta) == img


@pytest.mark.parametrize("theta", [2, 13.5, 20, 45])
def test_rotation_constant_fixed(theta):
    assert rotation_attack(const(77), theta) == const(77)


def test_rotation_small_angle_close(rng):
    img = synthetic_image(64, 3)
    out = rotation_attack(img, 2)
    centre = np.abs(out.pixels.astype(int) - img.pixels)[16:48, 16:48]
    assert centre.mean() < 6


def test_rotation_bad_angle():
    with pytest.raises(BadAngle):
        rotation_attack(const(1), -5)


def test_quality_table_law():
    assert quality_table(50)[0, 0] == 16
    assert quality_table(100).max() == 1
    # q=10: scale 500 -> 16*500/100 = 80
    assert quality_table(10)[0, 0] == 80
    assert quality_table(1).max() == 255
    with pytest.raises(BadQuality):
        quality_table(0)


def test_dct_matrix_orthonormal():
    C = dct_matrix(8)
    assert np.allclose(C @ C.T, np.eye(8))
    # DC row is constant 1/sqrt(8)
    assert np.allclose(C[0], 1 / math.sqrt(8))


@pytest.mark.parametrize("q", [1, 10, 50, 90, 100])
def test_dct_constant_128_fixed(q):
    assert dct_quantize_attack(const(128, 13, 21), q) == const(128, 13, 21)


def test_dct_q100_close(small_corpus):
    for img in small_corpus.values():
        out = dct_quantize_attack(img, 100)
        assert np.abs(out.pixels.astype(int) - img.pixels).max() <= 1


def test_dct_error_grows_as_quality_drops():
    img = synthetic_image(64, 5)
    err = [np.abs(dct_quantize_attack(img, q).pixels.astype(int) - img.pixels).mean() for q in (90, 50, 10)]
    assert err[0] < err[1] < err[2]


def test_haar_perfect_reconstruction(rng):
    a = rng.integers(0, 256, (32, 16)).astype(float)
    ll, details = haar_forward(a, 3)
    assert ll.shape == (4, 2)
    assert np.array_equal(haar_inverse(ll, details), a)


@pytest.mark.parametrize("levels, step", [(1, 2), (3, 8), (5, 32), (2, 0.5)])
def test_wavelet_constant_fixed(levels, step):
    assert wavelet_quantize_attack(const(201, 17, 33), levels, step) == const(201, 17, 33)


def test_wavelet_unit_step_near_identity(small_corpus):
    for img in small_corpus.values():
        out = wavelet_quantize_attack(img, 3, 1)
        assert np.abs(out.pixels.astype(int) - img.pixels).max() <= 1


@pytest.mark.parametrize("levels, step", [(0, 1), (6, 1), (3, 0), (3, -2)])
def test_wavelet_bad_parameter(levels, step):
    with pytest.raises(BadParameter):
        wavelet_quantize_attack(const(1), levels, step)


@settings(max_examples=40, deadline=None)
@given(images, st.sampled_from([
    AttackSpec("crop", 30), AttackSpec("rotation", 7), AttackSpec("dct_quantize", 40),
    AttackSpec("wavelet_quantize", 16, 2),
]))
def test_geometry_range_determinism(img, spec):
    out = spec.apply(img)
    assert out.shape == img.shape
    assert 0 <= out.pixels.min() and out.pixels.max() <= 255
    assert spec.apply(img) == out


def test_attack_spec_validation():
    with pytest.raises(BadParameter):
        AttackSpec("blur", 1)
    with pytest.raises(BadQuality):
        AttackSpec("dct_quantize", 0)
    assert AttackSpec("none").apply(const(3)) == const(3)

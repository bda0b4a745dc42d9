import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from di3stego.errors import BadMaxval, MalformedHeader, TruncatedData, UnsupportedMagic
from di3stego.image_io import GrayImage, from_bits, parse_pgm, to_bits, write_pgm


def test_parse_ascii():
    img = parse_pgm(b"P2\n2 2\n255\n0 128 255 7\n")
    assert (img.width, img.height, img.maxval) == (2, 2, 255)
    assert img.flat() == [0, 128, 255, 7]


def test_parse_with_comments():
    data = b"P5\n# made by hand\n2 # width\n1\n# maxval next\n255\n\x01\xff"
    assert parse_pgm(data).flat() == [1, 255]


@pytest.mark.parametrize("data, exc", [
    (b"P7\n1 1\n255\n\x00", UnsupportedMagic),
    (b"P3\n1 1\n255\n0 0 0\n", UnsupportedMagic),
    (b"P2\n1 1\n65535\n0\n", BadMaxval),
    (b"P5\n2 2\n255\n\x00\x00\x00", TruncatedData),
    (b"P2\n2 2\n255\n1 2 3\n", TruncatedData),
    (b"P5\n2\n", MalformedHeader),
    (b"P2\nx 2\n255\n", MalformedHeader),
    (b"P2\n1 1\n255\n300\n", MalformedHeader),
])
def test_parse_errors(data, exc):
    with pytest.raises(exc):
        parse_pgm(data)


def test_write_binary_single_pixel():
    img = GrayImage(1, 1, np.array([0]))
    assert write_pgm(img, binary=True) == b"P5\n1 1\n255\n\x00"


def test_write_ascii():
    img = GrayImage(2, 1, np.array([255, 1]))
    assert write_pgm(img, binary=False) == b"P2\n2 1\n255\n255 1\n"


def test_write_is_canonical_after_one_pass():
    raw = b"P2 # c\n 2   1\n255\n 255\n1"
    once = write_pgm(parse_pgm(raw), binary=False)
    assert write_pgm(parse_pgm(once), binary=False) == once


def test_corpus_roundtrip(small_corpus):
    for img in small_corpus.values():
        assert parse_pgm(write_pgm(img, binary=True)) == img
        assert parse_pgm(write_pgm(img, binary=False)) == img


images = st.tuples(st.integers(1, 12), st.integers(1, 12)).flatmap(
    lambda hw: arrays(np.uint8, hw)
).map(GrayImage.from_array)


@given(images, st.booleans())
def test_roundtrip_property(img, binary):
    back = parse_pgm(write_pgm(img, binary=binary))
    assert back == img
    assert back.pixels.min() >= 0 and back.pixels.max() <= 255


def test_bit_indexing_is_msb_first():
    img = GrayImage(2, 1, np.array([0b10000000, 0b00000001]))
    bits = to_bits(img)
    assert bits[0] == 1 and bits[7] == 0
    assert bits[8] == 0 and bits[15] == 1
    assert from_bits(bits, 2, 1) == img

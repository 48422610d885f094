import os

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

import chaopad
from chaopad import imgio
from chaopad.errors import (
    BadPadTrailer, MalformedHeader, ParseError, RangeError, TruncatedData, UnsupportedMaxval,
)


@given(arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9))))
def test_pgm_round_trip(img):
    assert np.array_equal(imgio.parse_pgm(imgio.pgm_bytes(img)), img)


def test_pgm_header_example():
    img = imgio.parse_pgm(b"P5\n4 4\n255\n" + bytes(range(16)))
    assert img.shape == (4, 4) and img[3, 3] == 15


def test_pgm_comments_and_ascii():
    img = imgio.parse_pgm(b"P2\n# made by hand\n2 1\n# maxval next\n255\n7 200\n")
    assert img.tolist() == [[7, 200]]
    img = imgio.parse_pgm(b"P5 # c\n1 1 255\n\x09")
    assert img.tolist() == [[9]]


@pytest.mark.parametrize("data,err", [
    (b"P5\n4 4\n65535\n" + bytes(32), UnsupportedMaxval),
    (b"P5\n4 4\n15\n" + bytes(16), UnsupportedMaxval),
    (b"P6\n1 1\n255\n\0\0\0", MalformedHeader),
    (b"P5\n4 x\n255\n", MalformedHeader),
    (b"P5\n4", MalformedHeader),
    (b"P5\n4 4\n255\n" + bytes(10), TruncatedData),
    (b"P2\n2 2\n255\n1 2 3", TruncatedData),
    (b"P2\n1 1\n255\n300", MalformedHeader),
])
def test_pgm_errors(data, err):
    with pytest.raises(err):
        imgio.parse_pgm(data)


def test_pgm_file_round_trip(tmp_path, seed_image):
    path = tmp_path / "x.pgm"
    imgio.write_pgm(seed_image, path)
    assert np.array_equal(imgio.read_pgm(path), seed_image)


def test_bundled_key_set_a(key_a):
    assert key_a.m == 262144
    assert (key_a.x0, key_a.y0, key_a.rx, key_a.ry) == (0.2, 0.6, 4.0, 3.99997)
    assert (key_a.xp0, key_a.yp0, key_a.rpx, key_a.rpy) == (0.5, 0.1, 3.99998, 3.99999)
    assert os.path.exists(key_a.seed_image_path)


def test_bundled_sets_differ():
    keys = [chaopad.bundled_key(n) for n in chaopad.PARAMETER_SETS]
    assert len({(k.x0, k.y0, k.rx, k.ry, k.xp0, k.yp0, k.rpx, k.rpy) for k in keys}) == 4
    with pytest.raises(ValueError):
        chaopad.bundled_key("E")


def test_key_round_trip(tmp_path, key_a):
    path = tmp_path / "sub" / "k.key"
    path.parent.mkdir()
    imgio.write_key(key_a, path)
    text = path.read_text()
    assert "seed_image = ../" in text
    back = imgio.read_key(path)
    assert back == key_a.replace(seed_image_path=back.seed_image_path)
    assert os.path.samefile(back.seed_image_path, key_a.seed_image_path)


def test_key_text_is_canonical(key_a):
    text = imgio.key_text(key_a.replace(seed_image_path="retina_256.pgm"))
    path = chaopad.data_path("set_a.key")
    assert text == open(path).read()


def test_key_rejects_bad_r(key_a):
    text = imgio.key_text(key_a).replace("rx = 4.00000000000000", "rx = 3.50000000000000")
    with pytest.raises(RangeError):
        imgio.parse_key(text)


@pytest.mark.parametrize("edit", [
    ("format = chaopad-key/1", "format = other/2"),
    ("rounding = half-away-from-zero", "rounding = half-even"),
    ("x0 = 0.20000000000000", "x0 = 2e-1"),
    ("m = 262144", "m = many"),
    ("k = 8\n", ""),
    ("k = 8\n", "k = 8\nk = 8\n"),
    ("k = 8\n", "k 8\n"),
])
def test_key_parse_errors(edit, key_a):
    with pytest.raises(ParseError):
        imgio.parse_key(imgio.key_text(key_a).replace(*edit))


def test_format_decimal_exactness():
    assert imgio.format_decimal(0.2) == "0.20000000000000"
    with pytest.raises(ValueError):
        imgio.format_decimal(0.123456789012345678)


def test_bits_examples():
    assert imgio.bits_bytes([1, 0, 0, 0, 0, 0, 0, 0]) == b"\x80\x00"
    assert imgio.bits_bytes([1, 1, 1]) == b"\xe0\x05"
    assert imgio.parse_bits(b"0101", "ascii").tolist() == [0, 1, 0, 1]
    assert imgio.parse_bits(b"\x00").size == 0


@given(st.lists(st.integers(0, 1), max_size=200), st.sampled_from(["raw", "ascii"]))
def test_bits_round_trip(bits, mode):
    assert imgio.parse_bits(imgio.bits_bytes(bits, mode), mode).tolist() == bits


@pytest.mark.parametrize("data", [b"", b"\xff\x08", b"\x03"])
def test_bad_trailer(data):
    with pytest.raises(BadPadTrailer):
        imgio.parse_bits(data)


def test_bad_ascii_bits():
    with pytest.raises(ParseError):
        imgio.parse_bits(b"01x1", "ascii")

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from dseqmark.errors import HeaderError, NetpbmError, TruncatedError, UnsupportedMaxvalError
from dseqmark.netpbm import read_pbm, read_pgm, write_pbm, write_pgm
from dseqmark.raster import BitMatrix, GrayImage


def test_read_p5():
    img = read_pgm(b"P5 2 2 255\n" + bytes([0, 255, 128, 64]))
    assert img.pixels.tolist() == [[0, 255], [128, 64]]


def test_read_p2_with_comments():
    assert read_pgm(b"P2 1 1 255 7").pixels.tolist() == [[7]]
    assert read_pgm(b"P2\n# made by hand\n2 1\n# max\n255\n3 4\n").pixels.tolist() == [[3, 4]]


def test_read_p5_comment_in_header():
    data = b"P5\n# comment\n1 2\n255\n" + bytes([9, 10])
    assert read_pgm(data).pixels.tolist() == [[9], [10]]


@pytest.mark.parametrize("data,exc", [
    (b"P5 2 2 65535\n" + bytes(8), UnsupportedMaxvalError),
    (b"P2 1 1 15 3", UnsupportedMaxvalError),
    (b"P5 2 2 255\n" + bytes(3), TruncatedError),
    (b"P2 2 1 255 4", TruncatedError),
    (b"P5 0 2 255\n", HeaderError),
    (b"P6 1 1 255\n\x00\x00\x00", HeaderError),
    (b"P5 x 2 255\n", HeaderError),
    (b"", HeaderError),
    (b"P2 1 1 255 300", NetpbmError),
])
def test_pgm_errors(data, exc):
    with pytest.raises(exc):
        read_pgm(data)


def test_unsupported_maxval_message():
    with pytest.raises(UnsupportedMaxvalError, match="unsupported maxval"):
        read_pgm(b"P5 1 1 65535\n\x00\x00")


def test_write_pgm_exact():
    assert write_pgm(GrayImage(np.zeros((1, 1), np.uint8))) == b"P5\n1 1\n255\n\x00"
    assert write_pgm(GrayImage(np.array([[1, 2]], np.uint8)), ascii=True) == b"P2\n2 1\n255\n1 2\n"


def test_empty_dims_rejected():
    with pytest.raises(ValueError):
        GrayImage(np.zeros((0, 3), np.uint8))


def test_read_pbm():
    assert read_pbm(b"P1 2 2 1 0 0 1").bits.tolist() == [[1, 0], [0, 1]]
    assert read_pbm(b"P1\n2 2\n10\n01\n").bits.tolist() == [[1, 0], [0, 1]]
    assert read_pbm(b"P4 8 1\n\xa0").bits.tolist() == [[1, 0, 1, 0, 0, 0, 0, 0]]
    assert read_pbm(b"P4\n3 2\n\xa0\x40").bits.tolist() == [[1, 0, 1], [0, 1, 0]]


@pytest.mark.parametrize("data,exc", [
    (b"P4 9 1\n\xff", TruncatedError),
    (b"P1 2 2 1 0 1", TruncatedError),
    (b"P1 1 1 2", HeaderError),
    (b"P3 1 1", HeaderError),
])
def test_pbm_errors(data, exc):
    with pytest.raises(exc):
        read_pbm(data)


@settings(max_examples=60, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 40), st.integers(1, 40))), st.booleans())
def test_pgm_roundtrip(a, ascii):
    img = GrayImage(a)
    data = write_pgm(img, ascii)
    back = read_pgm(data)
    assert back == img
    assert write_pgm(back, ascii) == data


@settings(max_examples=60, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 30), st.integers(1, 30)), elements=st.integers(0, 1)),
       st.booleans())
def test_pbm_roundtrip(a, ascii):
    m = BitMatrix(a)
    data = write_pbm(m, ascii)
    back = read_pbm(data)
    assert back == m
    assert write_pbm(back, ascii) == data


def test_p4_padding_bits_are_zero():
    data = write_pbm(BitMatrix(np.ones((2, 3), np.uint8)))
    assert data == b"P4\n3 2\n\xe0\xe0"


def test_ascii_lines_are_short():
    img = GrayImage(np.full((2, 100), 255, np.uint8))
    assert max(len(line) for line in write_pgm(img, ascii=True).split(b"\n")) <= 70

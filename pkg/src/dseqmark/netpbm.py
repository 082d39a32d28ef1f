"""Netpbm codecs for 8-bit graymaps (P2/P5) and bitmaps (P1/P4).

Only ``maxval`` 255 graymaps are accepted. Writers never emit comments, so
``write(read(write(x))) == write(x)`` byte for byte.
"""
from __future__ import annotations

import numpy as np

from .errors import HeaderError, NetpbmError, TruncatedError, UnsupportedMaxvalError
from .raster import BitMatrix, GrayImage

_WS = b" \t\n\r\v\f"


class _Reader:
    def __init__(self, data: bytes):
        self.data = bytes(data)
        self.pos = 0

    def skip_ws(self):
        d = self.data
        while self.pos < len(d):
            c = d[self.pos:self.pos + 1]
            if c == b"#":
                nl = d.find(b"\n", self.pos)
                self.pos = len(d) if nl < 0 else nl + 1
            elif c in _WS:
                self.pos += 1
            else:
                break

    def token(self, what: str) -> bytes:
        self.skip_ws()
        start = self.pos
        d = self.data
        while self.pos < len(d) and d[self.pos:self.pos + 1] not in _WS and d[self.pos:self.pos + 1] != b"#":
            self.pos += 1
        if start == self.pos:
            raise HeaderError(f"missing {what}")
        return d[start:self.pos]

    def integer(self, what: str) -> int:
        tok = self.token(what)
        if not tok.isdigit():
            raise HeaderError(f"bad {what}: {tok!r}")
        return int(tok)

    def single_ws(self):
        if self.pos >= len(self.data) or self.data[self.pos:self.pos + 1] not in _WS:
            raise HeaderError("header must end with one whitespace byte")
        self.pos += 1


def _magic(data: bytes) -> bytes:
    if len(data) < 2 or data[:1] != b"P":
        raise HeaderError("not a netpbm file")
    return data[:2]


def _dims(rd: _Reader) -> tuple[int, int]:
    w = rd.integer("width")
    h = rd.integer("height")
    if w < 1 or h < 1:
        raise HeaderError(f"empty dimensions {w}x{h}")
    return w, h


def read_pgm(data: bytes) -> GrayImage:
    magic = _magic(data)
    if magic not in (b"P2", b"P5"):
        raise HeaderError(f"not a graymap: {magic!r}")
    rd = _Reader(data)
    rd.pos = 2
    w, h = _dims(rd)
    maxval = rd.integer("maxval")
    if maxval != 255:
        raise UnsupportedMaxvalError(f"unsupported maxval {maxval}")
    n = w * h
    if magic == b"P5":
        rd.single_ws()
        raw = rd.data[rd.pos:rd.pos + n]
        if len(raw) < n:
            raise TruncatedError(f"expected {n} pixel bytes, got {len(raw)}")
        px = np.frombuffer(raw, dtype=np.uint8)
    else:
        vals = []
        for i in range(n):
            try:
                vals.append(rd.integer("pixel"))
            except HeaderError:
                if rd.pos >= len(rd.data):
                    raise TruncatedError(f"expected {n} pixels, got {i}") from None
                raise
        px = np.array(vals, dtype=np.int64)
        if px.max() > 255:
            raise NetpbmError("pixel value exceeds maxval")
    return GrayImage(px.reshape(h, w).astype(np.uint8))


def write_pgm(img: GrayImage, ascii: bool = False) -> bytes:
    h, w = img.pixels.shape
    if not ascii:
        return b"P5\n%d %d\n255\n" % (w, h) + img.pixels.tobytes()
    lines = [b"P2", b"%d %d" % (w, h), b"255"]
    for row in img.pixels:
        lines.extend(_wrap([b"%d" % v for v in row]))
    return b"\n".join(lines) + b"\n"


def _wrap(tokens, limit=70):
    line = b""
    for t in tokens:
        if line and len(line) + 1 + len(t) > limit:
            yield line
            line = t
        else:
            line = line + b" " + t if line else t
    if line:
        yield line


def read_pbm(data: bytes) -> BitMatrix:
    magic = _magic(data)
    if magic not in (b"P1", b"P4"):
        raise HeaderError(f"not a bitmap: {magic!r}")
    rd = _Reader(data)
    rd.pos = 2
    w, h = _dims(rd)
    if magic == b"P4":
        rd.single_ws()
        stride = (w + 7) // 8
        raw = rd.data[rd.pos:rd.pos + stride * h]
        if len(raw) < stride * h:
            raise TruncatedError(f"expected {stride * h} bytes, got {len(raw)}")
        packed = np.frombuffer(raw, dtype=np.uint8).reshape(h, stride)
        bits = np.unpackbits(packed, axis=1)[:, :w]
        return BitMatrix(bits)
    bits = []
    d = rd.data
    pos = rd.pos
    n = w * h
    while len(bits) < n and pos < len(d):
        c = d[pos:pos + 1]
        if c == b"#":
            nl = d.find(b"\n", pos)
            pos = len(d) if nl < 0 else nl + 1
            continue
        if c in (b"0", b"1"):
            bits.append(c == b"1")
        elif c not in _WS:
            raise HeaderError(f"bad bitmap character {c!r}")
        pos += 1
    if len(bits) < n:
        raise TruncatedError(f"expected {n} bits, got {len(bits)}")
    return BitMatrix(np.array(bits, dtype=np.uint8).reshape(h, w))


def write_pbm(mark: BitMatrix, ascii: bool = False) -> bytes:
    h, w = mark.bits.shape
    if not ascii:
        return b"P4\n%d %d\n" % (w, h) + np.packbits(mark.bits, axis=1).tobytes()
    lines = [b"P1", b"%d %d" % (w, h)]
    for row in mark.bits:
        lines.extend(_wrap([b"%d" % v for v in row]))
    return b"\n".join(lines) + b"\n"

"""Synthetic covers and marks, so experiments need no external images.

Cover specs look like ``synth:<kind>:<W>x<H>[:<seed>]`` with kind one of
``flat``, ``gradient``, ``checker`` or ``texture``.
"""
from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .raster import BitMatrix, GrayImage

COVER_KINDS = ("flat", "gradient", "checker", "texture")


def flat(w: int, h: int, level: int = 128) -> GrayImage:
    return GrayImage(np.full((h, w), level, dtype=np.uint8))


def gradient(w: int, h: int) -> GrayImage:
    """Horizontal ramp from 0 at the left edge to 255 at the right."""
    if w == 1:
        return flat(1, h)
    row = np.rint(np.arange(w) * 255.0 / (w - 1)).astype(np.uint8)
    return GrayImage(np.tile(row, (h, 1)))


def checker(w: int, h: int, cells: int = 8) -> GrayImage:
    size = max(1, min(w, h) // cells)
    yy, xx = np.indices((h, w))
    return GrayImage(np.where((yy // size + xx // size) % 2, 192, 64).astype(np.uint8))


def texture(w: int, h: int, seed: int = 0, scale: int = 16, grain: float = 0.15) -> GrayImage:
    """Smooth random relief (bilinear-upsampled noise) plus fine grain, in [16, 239]."""
    rng = np.random.default_rng(seed)
    coarse = rng.normal(size=(h // scale + 2, w // scale + 2))
    y = np.arange(h) / scale
    x = np.arange(w) / scale
    y0, x0 = y.astype(int), x.astype(int)
    fy, fx = (y - y0)[:, None], (x - x0)[None, :]
    top = coarse[y0][:, x0] * (1 - fx) + coarse[y0][:, x0 + 1] * fx
    bot = coarse[y0 + 1][:, x0] * (1 - fx) + coarse[y0 + 1][:, x0 + 1] * fx
    relief = top * (1 - fy) + bot * fy
    relief = relief / relief.std() + grain * rng.normal(size=(h, w))
    lo, hi = relief.min(), relief.max()
    return GrayImage(np.rint(16 + 223 * (relief - lo) / (hi - lo)).astype(np.uint8))


def parse_dims(s: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in s.lower().split("x"))
    except ValueError:
        raise ParameterError(f"bad dimensions {s!r}; expected WxH") from None
    if w < 1 or h < 1:
        raise ParameterError(f"dimensions must be positive, got {s!r}")
    return w, h


def cover_from_spec(spec: str, seed: int | None = None) -> GrayImage:
    """Build a cover from ``synth:<kind>:<W>x<H>[:<seed>]``; ``seed`` overrides the spec's."""
    parts = spec.split(":")
    if len(parts) not in (3, 4) or parts[0] != "synth":
        raise ParameterError(f"bad synthetic cover spec {spec!r}")
    kind = parts[1]
    w, h = parse_dims(parts[2])
    if seed is None:
        seed = int(parts[3]) if len(parts) == 4 else 0
    if kind == "flat":
        return flat(w, h)
    if kind == "gradient":
        return gradient(w, h)
    if kind == "checker":
        return checker(w, h)
    if kind == "texture":
        return texture(w, h, seed)
    raise ParameterError(f"unknown cover kind {kind!r}; expected one of {COVER_KINDS}")


def random_mark(cols: int, rows: int, seed: int, black: tuple[int, int] | int | None = None) -> BitMatrix:
    """Mark with a seeded random layout.

    ``black`` fixes the number of black bits, or gives an inclusive range to
    draw it from; by default each bit is black with probability one half.
    """
    rng = np.random.default_rng(seed)
    n = cols * rows
    if black is None:
        bits = rng.integers(0, 2, size=n)
    else:
        count = black if isinstance(black, int) else int(rng.integers(black[0], black[1] + 1))
        if not 0 <= count <= n:
            raise ParameterError(f"cannot place {count} black bits in {n}")
        bits = np.zeros(n, dtype=np.uint8)
        bits[rng.permutation(n)[:count]] = 1
    return BitMatrix(np.asarray(bits, dtype=np.uint8).reshape(rows, cols))

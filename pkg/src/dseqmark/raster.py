"""Grayscale covers and monochrome watermark marks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale raster, row-major with a top-left origin (shape ``(h, w)``)."""

    pixels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.pixels)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError(f"image must be a non-empty 2-D array, got shape {a.shape}")
        if a.dtype != np.uint8:
            if a.size and (a.min() < 0 or a.max() > 255):
                raise DimensionError("pixel values must lie in [0, 255]")
        object.__setattr__(self, "pixels", _frozen(a, np.uint8))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """Monochrome mark; 1 is a black (information-bearing) pixel."""

    bits: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.bits)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError(f"mark must be a non-empty 2-D array, got shape {a.shape}")
        if not np.all((a == 0) | (a == 1)):
            raise DimensionError("mark bits must be 0 or 1")
        object.__setattr__(self, "bits", _frozen(a, np.uint8))

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def count(self) -> int:
        return self.bits.size

    def black(self) -> int:
        return int(self.bits.sum())

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    __hash__ = None

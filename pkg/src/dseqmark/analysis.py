"""Bipolar chip sequences and their correlation structure.

Digits are mapped 0 -> -1 and 1 -> +1 so that every chip squares to one.
Correlations are cyclic over one period and normalized by the period length.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .dseq import generate, period
from .errors import ParameterError

# Primitive feedback polynomials over GF(2); bit j is the coefficient of x**j.
PRIMITIVE_TAPS = {
    3: 0b1011,               # x^3 + x + 1
    4: 0x13,                 # x^4 + x + 1
    5: 0x25,                 # x^5 + x^2 + 1
    6: 0x43,                 # x^6 + x + 1
    7: 0x83,                 # x^7 + x + 1
    8: 0x11D,                # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,                # x^9 + x^4 + 1
    10: 0x409,               # x^10 + x^3 + 1
    11: 0x805,               # x^11 + x^2 + 1
    12: 0x1053,              # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,              # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,              # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,              # x^15 + x + 1
    16: 0x1100B,             # x^16 + x^12 + x^3 + x + 1
}


@dataclass(frozen=True, eq=False)
class ChipSequence:
    chips: np.ndarray
    source: str = ""
    shift: int = 0

    def __post_init__(self):
        arr = np.asarray(self.chips, dtype=np.int8)
        if arr.ndim != 1 or not np.all((arr == 1) | (arr == -1)):
            raise ParameterError("chips must be a 1-D sequence of -1/+1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "chips", arr)

    def __len__(self):
        return self.chips.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ChipSequence):
            return NotImplemented
        return np.array_equal(self.chips, other.chips)

    __hash__ = None

    def rotate(self, s: int) -> "ChipSequence":
        """Cyclic left rotation: ``out[i] = chips[(i + s) mod p]``."""
        p = len(self)
        if p == 0:
            return self
        return ChipSequence(np.roll(self.chips, -s), self.source, (self.shift + s) % p)

    def negate(self) -> "ChipSequence":
        return ChipSequence(-self.chips, self.source, self.shift)

    def tolist(self) -> list[int]:
        return self.chips.tolist()


@dataclass(frozen=True)
class CorrelationReport:
    q: int
    r: int
    values: tuple[float, ...]
    mean: float
    std: float
    sums: tuple[int, ...] = field(default=(), repr=False)

    @property
    def period(self) -> int:
        return len(self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["shift", "value"])
        for s, v in enumerate(self.values):
            w.writerow([s, format_value(v)])
        return buf.getvalue()


def format_value(v: float) -> str:
    """12 significant digits, always with a decimal point or exponent."""
    s = format(v, ".12g")
    if not any(ch in s for ch in ".einfa"):
        s += ".0"
    return s


def bipolarize(digits, r: int = 2, source: str = "") -> ChipSequence:
    if r != 2:
        raise ParameterError(f"only binary digits can be chipped, got radix {r}")
    d = np.asarray(list(digits), dtype=np.int64)
    if d.size and not np.all((d == 0) | (d == 1)):
        raise ParameterError("binary digits must be 0 or 1")
    return ChipSequence((2 * d - 1).astype(np.int8), source)


def dseq_chips(q: int) -> ChipSequence:
    """One period of the binary d-sequence of ``1/q`` as chips."""
    p = period(q, 2)
    return bipolarize(generate(q, 2, p).digits, 2, source=f"dseq:q={q}")


def autocorrelation(x: ChipSequence, s: int) -> float:
    p = len(x)
    if not 0 <= s < p:
        raise ParameterError(f"shift {s} outside [0, {p})")
    c = x.chips.astype(np.int64)
    return float(np.dot(c, np.roll(c, -s))) / p


def cross_correlation(a: ChipSequence, b: ChipSequence, s: int) -> float:
    p = len(a)
    if len(b) != p:
        raise ParameterError(f"length mismatch: {p} vs {len(b)}")
    if not 0 <= s < p:
        raise ParameterError(f"shift {s} outside [0, {p})")
    return float(np.dot(a.chips.astype(np.int64), np.roll(b.chips.astype(np.int64), -s))) / p


def report_from_chips(x: ChipSequence, q: int = 0, r: int = 2) -> CorrelationReport:
    p = len(x)
    if p < 2:
        raise ParameterError("need at least two chips for a correlation report")
    sums = kernels.cyclic_autocorr_sums(x.chips)
    values = sums / p
    tail = values[1:]
    return CorrelationReport(q=q, r=r, values=tuple(values.tolist()),
                             mean=float(tail.mean()), std=float(tail.std()),
                             sums=tuple(sums.tolist()))


def correlation_report(q: int, r: int = 2) -> CorrelationReport:
    if r != 2:
        raise ParameterError(f"correlation reports are binary only, got radix {r}")
    return report_from_chips(dseq_chips(q), q, r)


def select_shifts(report: CorrelationReport, count: int) -> list[int]:
    """The ``count`` nonzero shifts with the smallest |autocorrelation|, ties by shift."""
    p = report.period
    if not 1 <= count <= p - 1:
        raise ParameterError(f"count must be in [1, {p - 1}], got {count}")
    order = sorted(range(1, p), key=lambda s: (abs(report.values[s]), s))
    return order[:count]


def worst_shift(report: CorrelationReport) -> int:
    """Nonzero shift with the largest |autocorrelation|, ties by shift."""
    return min(range(1, report.period), key=lambda s: (-abs(report.values[s]), s))


def lfsr_bits(taps: int, degree: int, seed: int, n: int | None = None) -> list[int]:
    """Output bits of a Fibonacci LFSR.

    Bit ``j`` of the state holds ``a[k+j]``; each step emits ``a[k]`` and
    appends ``a[k+n] = XOR of a[k+j]`` over the low taps ``j < n``.
    """
    if degree < 1:
        raise ParameterError("degree must be positive")
    mask = (1 << degree) - 1
    seed &= mask
    if seed == 0:
        raise ParameterError("LFSR seed must be nonzero")
    low = taps & mask
    n = mask if n is None else n
    state = seed
    out = []
    for _ in range(n):
        out.append(state & 1)
        fb = bin(state & low).count("1") & 1
        state = (state >> 1) | (fb << (degree - 1))
    return out


def lfsr_msequence(taps: int, degree: int, seed: int = 1) -> ChipSequence:
    bits = lfsr_bits(taps, degree, seed)
    return bipolarize(bits, 2, source=f"lfsr:taps={taps:#x},degree={degree}")


def msequence(degree: int, seed: int = 1) -> ChipSequence:
    """m-sequence from the shipped primitive polynomial of ``degree``."""
    if degree not in PRIMITIVE_TAPS:
        raise ParameterError(f"no primitive polynomial shipped for degree {degree}")
    return lfsr_msequence(PRIMITIVE_TAPS[degree], degree, seed)

"""Block-based spread-spectrum embedding and correlation decoding.

Each mark bit owns one ``block_w x block_h`` block of the cover, taken in
row-major order. A block whose bit carries the embedding polarity receives
``gain_k`` times a cyclically shifted, row-major tiled copy of the chip
sequence; other blocks are left untouched. Decoding high-passes the image
(pixel minus the mean of its 3x3 neighbourhood, clamped to the block),
correlates every block with its
own chip pattern and calls a bit set when its correlation is strictly above
the mean of all block correlations.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import kernels
from .analysis import ChipSequence, CorrelationReport, dseq_chips, msequence, report_from_chips, select_shifts
from .errors import DegenerateSequenceError, DimensionError, ParameterError, PlanFormatError
from .prng import MASK64, XorShift64Star
from .raster import BitMatrix, GrayImage

SHIFT_MODES = ("selected", "circular", "random")
POLARITIES = ("black", "white")


@lru_cache(maxsize=256)
def _chips(q: int, lfsr_degree: int | None) -> ChipSequence:
    if lfsr_degree:
        return msequence(lfsr_degree)
    return dseq_chips(q)


@lru_cache(maxsize=256)
def _report(q: int, lfsr_degree: int | None) -> CorrelationReport:
    return report_from_chips(_chips(q, lfsr_degree), q, 2)


@dataclass(frozen=True)
class WatermarkPlan:
    q: int
    gain_k: int
    block_w: int
    block_h: int
    mark_cols: int
    mark_rows: int
    shift_mode: str
    key: int
    shifts: tuple[int, ...]
    r: int = 2
    polarity: str = "black"
    lfsr_degree: int | None = None

    @property
    def n_bits(self) -> int:
        return self.mark_cols * self.mark_rows

    def chips(self) -> ChipSequence:
        return _chips(self.q, self.lfsr_degree)

    def report(self) -> CorrelationReport:
        return _report(self.q, self.lfsr_degree)

    @property
    def period(self) -> int:
        return len(self.chips())

    def to_text(self) -> str:
        lines = [
            f"q={self.q}",
            f"r={self.r}",
            f"k={self.gain_k}",
            f"mode={self.shift_mode}",
            f"key={self.key:#018x}",
            f"mark={self.mark_cols}x{self.mark_rows}",
            f"block={self.block_w}x{self.block_h}",
            f"polarity={self.polarity}",
        ]
        if self.lfsr_degree:
            lines.append(f"lfsr={self.lfsr_degree}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "WatermarkPlan":
        """Parse a ``.wmplan`` sidecar and re-derive its shifts."""
        fields = {}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise PlanFormatError(f"line {n}: expected key=value, got {line!r}")
            k, v = line.split("=", 1)
            fields[k.strip()] = v.strip()
        missing = [f for f in ("q", "r", "k", "mode", "key", "mark", "block") if f not in fields]
        if missing:
            raise PlanFormatError(f"plan is missing {', '.join(missing)}")
        try:
            q = int(fields["q"])
            r = int(fields["r"])
            k = int(fields["k"])
            key = int(fields["key"], 0)
            cols, rows = _pair(fields["mark"])
            bw, bh = _pair(fields["block"])
            lfsr = int(fields["lfsr"]) if "lfsr" in fields else None
        except ValueError as e:
            raise PlanFormatError(f"bad plan value: {e}") from None
        if r != 2:
            raise PlanFormatError(f"only r=2 plans are supported, got r={r}")
        try:
            return _build_plan(q, k, (bw, bh), (cols, rows), fields["mode"], key,
                               fields.get("polarity", "black"), lfsr)
        except ParameterError as e:
            raise PlanFormatError(str(e)) from None


def _pair(s: str) -> tuple[int, int]:
    a, b = s.lower().split("x")
    return int(a), int(b)


def derive_shifts(report: CorrelationReport, mode: str, key: int, n_bits: int) -> tuple[int, ...]:
    """Per-bit chip shifts, a pure function of the sequence, mode, key and bit count."""
    p = report.period
    if mode == "selected":
        chosen = select_shifts(report, min(p - 1, n_bits))
        return tuple(chosen[i % len(chosen)] for i in range(n_bits))
    if mode == "circular":
        stride = max(1, p // n_bits)
        return tuple(i * stride % p for i in range(n_bits))
    if mode == "random":
        rng = XorShift64Star(key)
        return tuple(rng.below(p) for _ in range(n_bits))
    raise ParameterError(f"unknown shift mode {mode!r}; expected one of {SHIFT_MODES}")


def _build_plan(q, gain_k, block, mark_dims, shift_mode, key, polarity, lfsr_degree):
    if not isinstance(gain_k, int) or gain_k < 0:
        raise ParameterError(f"gain must be a non-negative integer, got {gain_k!r}")
    if not 0 <= key <= MASK64:
        raise ParameterError("key must fit in 64 bits")
    if shift_mode not in SHIFT_MODES:
        raise ParameterError(f"unknown shift mode {shift_mode!r}; expected one of {SHIFT_MODES}")
    if polarity not in POLARITIES:
        raise ParameterError(f"unknown polarity {polarity!r}")
    bw, bh = block
    cols, rows = mark_dims
    if min(bw, bh, cols, rows) < 1:
        raise DimensionError("block and mark dimensions must be positive")
    report = _report(q, lfsr_degree)
    if report.period < 2:
        raise DegenerateSequenceError(f"period {report.period} is too short")
    shifts = derive_shifts(report, shift_mode, key, cols * rows)
    return WatermarkPlan(q=q, gain_k=gain_k, block_w=bw, block_h=bh, mark_cols=cols,
                         mark_rows=rows, shift_mode=shift_mode, key=key, shifts=shifts,
                         polarity=polarity, lfsr_degree=lfsr_degree)


def make_plan(q: int, gain_k: int, cover_dims: tuple[int, int], mark_dims: tuple[int, int],
              shift_mode: str = "selected", key: int = 0, *, polarity: str = "black",
              lfsr_degree: int | None = None) -> WatermarkPlan:
    """Plan for a ``cover_dims = (width, height)`` cover and ``mark_dims = (cols, rows)`` mark.

    With ``lfsr_degree`` set the chips come from the shipped m-sequence of
    that degree instead of ``1/q`` (``q`` is then ignored and stored as 0).
    """
    cw, ch = cover_dims
    cols, rows = mark_dims
    if cols < 1 or rows < 1:
        raise DimensionError(f"mark must be non-empty, got {cols}x{rows}")
    if cols > cw or rows > ch:
        raise DimensionError(f"mark {cols}x{rows} does not fit cover {cw}x{ch}")
    if lfsr_degree:
        q = 0
    return _build_plan(q, gain_k, (cw // cols, ch // rows), (cols, rows), shift_mode, key,
                       polarity, lfsr_degree)


def pin_shifts(plan: WatermarkPlan, shift: int) -> WatermarkPlan:
    """Copy of ``plan`` with every bit forced onto one shift (for shift-quality studies)."""
    if not 0 <= shift < plan.period:
        raise ParameterError(f"shift {shift} outside [0, {plan.period})")
    return replace(plan, shifts=(shift,) * plan.n_bits)


def spread_pattern(plan: WatermarkPlan, bit_index: int) -> np.ndarray:
    """Block-shaped ``(block_h, block_w)`` array of chips for one mark bit."""
    if not 0 <= bit_index < plan.n_bits:
        raise ParameterError(f"bit index {bit_index} outside [0, {plan.n_bits})")
    c = plan.chips().chips
    p = len(c)
    idx = (np.arange(plan.block_w * plan.block_h) + plan.shifts[bit_index]) % p
    return c[idx].reshape(plan.block_h, plan.block_w)


def _check_image(img: GrayImage, plan: WatermarkPlan):
    if plan.block_w * plan.mark_cols > img.width or plan.block_h * plan.mark_rows > img.height:
        raise DimensionError(
            f"image {img.width}x{img.height} smaller than plan grid "
            f"{plan.block_w * plan.mark_cols}x{plan.block_h * plan.mark_rows}")


def embed(cover: GrayImage, mark: BitMatrix, plan: WatermarkPlan) -> GrayImage:
    """Add ``gain_k * chips`` to every block whose bit matches the plan's polarity.

    Output is clamped to [0, 255]; clipping near black or white weakens the
    embedded pattern there.
    """
    _check_image(cover, plan)
    if (mark.cols, mark.rows) != (plan.mark_cols, plan.mark_rows):
        raise DimensionError(f"mark {mark.cols}x{mark.rows} does not match plan "
                             f"{plan.mark_cols}x{plan.mark_rows}")
    active = mark.bits.ravel() == (1 if plan.polarity == "black" else 0)
    out = kernels.embed_blocks(cover.pixels, active.astype(np.uint8), plan.chips().chips,
                               np.asarray(plan.shifts, dtype=np.int64), plan.block_w,
                               plan.block_h, plan.mark_cols, plan.gain_k)
    return GrayImage(out)


@dataclass(frozen=True)
class ExtractionResult:
    recovered: BitMatrix
    correlations: tuple[float, ...]
    threshold: float


def extract(image: GrayImage, plan: WatermarkPlan) -> ExtractionResult:
    """Recover the mark by thresholding per-block correlations at their mean.

    Correlations are ``sum(hp * chips) / (9 * block area)`` with
    ``hp = 9*pixel - 3x3 box sum`` taken inside each block; the comparison against the mean is done
    on the integer sums so ties (decoded as "not above") are exact.
    """
    _check_image(image, plan)
    hp = kernels.highpass9(image.pixels, plan.block_w, plan.block_h)
    sums = kernels.block_correlation_sums(hp, plan.chips().chips,
                                          np.asarray(plan.shifts, dtype=np.int64),
                                          plan.block_w, plan.block_h, plan.mark_cols)
    n = len(sums)
    scale = 9 * plan.block_w * plan.block_h
    total = int(sums.sum())
    above = sums * n > total
    bits = above if plan.polarity == "black" else ~above
    recovered = BitMatrix(bits.astype(np.uint8).reshape(plan.mark_rows, plan.mark_cols))
    return ExtractionResult(recovered=recovered,
                            correlations=tuple((sums / scale).tolist()),
                            threshold=total / (scale * n))


def noise_pixels(recovered: BitMatrix, original: BitMatrix) -> int:
    if recovered.bits.shape != original.bits.shape:
        raise DimensionError(f"shape mismatch {recovered.bits.shape} vs {original.bits.shape}")
    return int(np.count_nonzero(recovered.bits != original.bits))


def psnr(a: GrayImage, b: GrayImage) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    if a.pixels.shape != b.pixels.shape:
        raise DimensionError("images differ in size")
    mse = np.mean((a.pixels.astype(np.float64) - b.pixels.astype(np.float64)) ** 2)
    if mse == 0:
        return float("inf")
    return float(10 * np.log10(255.0 ** 2 / mse))

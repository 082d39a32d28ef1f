"""Decimal-sequence spreading codes and spread-spectrum image watermarking."""

__version__ = "0.1.0"

from .analysis import (
    ChipSequence,
    CorrelationReport,
    autocorrelation,
    bipolarize,
    correlation_report,
    cross_correlation,
    lfsr_msequence,
    msequence,
    select_shifts,
)
from .dseq import (
    DSequence,
    RegisterTrace,
    check_complementarity,
    digit_at,
    generate,
    long_division_digits,
    period,
    register_generate,
)
from .kernels import BACKEND
from .netpbm import read_pbm, read_pgm, write_pbm, write_pgm
from .raster import BitMatrix, GrayImage
from .watermark import (
    ExtractionResult,
    WatermarkPlan,
    embed,
    extract,
    make_plan,
    noise_pixels,
    psnr,
    spread_pattern,
)

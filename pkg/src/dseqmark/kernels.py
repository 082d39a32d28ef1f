"""Hot-loop kernels, dispatched to the compiled extension when it is built.

Set ``DSEQMARK_PURE=1`` to force the numpy fallback.
"""
import os

if os.environ.get("DSEQMARK_PURE"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
dseq_digits = _impl.dseq_digits
register_rows = _impl.register_rows
cyclic_autocorr_sums = _impl.cyclic_autocorr_sums
highpass9 = _impl.highpass9
block_correlation_sums = _impl.block_correlation_sums
embed_blocks = _impl.embed_blocks

__all__ = [
    "BACKEND",
    "dseq_digits",
    "register_rows",
    "cyclic_autocorr_sums",
    "highpass9",
    "block_correlation_sums",
    "embed_blocks",
]

"""Compare the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from dseqmark import _pykernels
from dseqmark.analysis import dseq_chips
from dseqmark.synth import texture

try:
    from dseqmark import _ckernels
except ImportError:
    _ckernels = None


def cases():
    chips = np.asarray(dseq_chips(283).chips, dtype=np.int8)
    cover = texture(512, 512, 1).pixels
    hp = _pykernels.highpass9(cover, 32, 32)
    active = np.arange(256, dtype=np.uint8) % 3 == 0
    shifts = np.arange(256, dtype=np.int64) * 7 % 94
    return {
        "dseq_digits(99991, 2, 1e5)": lambda m: m.dseq_digits(99991, 2, 100_000),
        "cyclic_autocorr_sums(p=94)": lambda m: m.cyclic_autocorr_sums(chips),
        "highpass9(512x512, 32x32)": lambda m: m.highpass9(cover, 32, 32),
        "block_correlation_sums(256 bits)": lambda m: m.block_correlation_sums(hp, chips, shifts, 32, 32, 16),
        "embed_blocks(256 bits)": lambda m: m.embed_blocks(cover, active, chips, shifts, 32, 32, 16, 2),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    mods = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'kernel':36s}" + "".join(f"{n:>12s}" for n, _ in mods) + ("     speedup" if _ckernels else ""))
    for name, fn in cases().items():
        times = []
        for _, mod in mods:
            n = 3
            times.append(min(timeit.repeat(lambda: fn(mod), number=n, repeat=args.repeat)) / n)
        row = f"{name:36s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()

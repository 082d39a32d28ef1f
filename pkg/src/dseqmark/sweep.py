"""Factorial embed/extract sweeps producing one CSV row per trial."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from .analysis import format_value
from .errors import ParameterError
from .prng import derive_key
from .raster import BitMatrix, GrayImage
from .synth import cover_from_spec, parse_dims, random_mark
from .watermark import embed, extract, make_plan, noise_pixels

HEADER = ("q", "period", "shift_mode", "gain_k", "trial", "noise_pixels", "mean_abs_autocorr")


@dataclass(frozen=True)
class SweepRow:
    q: int | str
    period: int
    shift_mode: str
    gain_k: int
    trial: int
    noise_pixels: int
    mean_abs_autocorr: float

    def sort_key(self):
        baseline = isinstance(self.q, str)
        return (baseline, self.period if baseline else self.q, self.shift_mode, self.gain_k, self.trial)


@dataclass(frozen=True)
class TrialInputs:
    """Cover and mark sources; ``synth:`` specs are re-seeded for every trial."""

    cover: GrayImage | str
    mark: BitMatrix | str

    def cover_for(self, trial_key: int) -> GrayImage:
        if isinstance(self.cover, GrayImage):
            return self.cover
        return cover_from_spec(self.cover, seed=trial_key)

    def mark_for(self, trial_key: int) -> BitMatrix:
        if isinstance(self.mark, BitMatrix):
            return self.mark
        return mark_from_spec(self.mark, trial_key)


def mark_from_spec(spec: str, seed: int) -> BitMatrix:
    """``synth:random:<C>x<R>[:<lo>-<hi>]`` -> seeded random mark."""
    parts = spec.split(":")
    if len(parts) not in (3, 4) or parts[:2] != ["synth", "random"]:
        raise ParameterError(f"bad synthetic mark spec {spec!r}")
    cols, rows = parse_dims(parts[2])
    black = None
    if len(parts) == 4:
        try:
            lo, hi = (int(v) for v in parts[3].split("-"))
        except ValueError:
            raise ParameterError(f"bad black-bit range {parts[3]!r}") from None
        black = (lo, hi)
    return random_mark(cols, rows, seed, black)


def run_trial(inputs: TrialInputs, source, mode: str, gain_k: int, trial: int, key: int) -> SweepRow:
    """One embed/extract round; ``source`` is a prime or ``("msequence", degree)``."""
    trial_key = derive_key(key, trial)
    cover = inputs.cover_for(trial_key)
    mark = inputs.mark_for(trial_key)
    dims = (cover.width, cover.height)
    if isinstance(source, tuple):
        plan = make_plan(0, gain_k, dims, (mark.cols, mark.rows), mode, trial_key,
                         lfsr_degree=source[1])
        label = f"m{source[1]}"
    else:
        plan = make_plan(source, gain_k, dims, (mark.cols, mark.rows), mode, trial_key)
        label = source
    result = extract(embed(cover, mark, plan), plan)
    vals = np.abs(np.asarray(plan.report().values))
    return SweepRow(q=label, period=plan.period, shift_mode=mode, gain_k=gain_k, trial=trial,
                    noise_pixels=noise_pixels(result.recovered, mark),
                    mean_abs_autocorr=float(vals[list(plan.shifts)].mean()))


def _run(args):
    return run_trial(*args)


def run_sweep(inputs: TrialInputs, primes, gains, modes, trials: int, key: int = 0,
              baseline_degree: int | None = None, jobs: int = 1) -> list[SweepRow]:
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    sources = list(primes)
    if baseline_degree:
        sources.append(("msequence", baseline_degree))
    tasks = [(inputs, s, m, k, t, key) for s in sources for m in modes for k in gains
             for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run, tasks, chunksize=4))
    else:
        rows = [_run(t) for t in tasks]
    return sorted(rows, key=SweepRow.sort_key)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for row in rows:
        vals = list(astuple(row))
        vals[-1] = format_value(vals[-1])
        w.writerow(vals)
    return buf.getvalue()


def rows_from_csv(text: str) -> list[dict]:
    rd = csv.DictReader(io.StringIO(text))
    if tuple(rd.fieldnames or ()) != HEADER:
        raise ParameterError(f"unexpected sweep header {rd.fieldnames}")
    return list(rd)


assert tuple(f.name for f in fields(SweepRow)) == HEADER

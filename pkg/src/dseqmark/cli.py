"""Command-line front end: ``dseqmark gen|analyze|embed|extract|sweep``.

Exit codes: 0 success, 2 parameter error, 3 I/O or file-format error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import correlation_report, select_shifts
from .dseq import generate, period, register_generate
from .errors import DSeqError, NetpbmError, ParameterError, PlanFormatError
from .netpbm import read_pbm, read_pgm, write_pbm, write_pgm
from .numtheory import factorize
from .sweep import TrialInputs, rows_to_csv, run_sweep
from .synth import cover_from_spec
from .watermark import SHIFT_MODES, WatermarkPlan, embed, extract, make_plan, noise_pixels, psnr

EXIT_PARAM = 2
EXIT_IO = 3

# Periods printed in published figure captions, checked against the computed order.
CAPTION_PERIODS = {283: 94, 167: 84}


class IOFailure(Exception):
    pass


def _int(s: str) -> int:
    return int(s, 0)


def _int_list(s: str) -> list[int]:
    try:
        return [int(v, 0) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def _str_list(s: str) -> list[str]:
    return [v.strip() for v in s.split(",") if v.strip()]


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise IOFailure(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, data: bytes | str):
    try:
        p = Path(path)
        if isinstance(data, str):
            p.write_text(data)
        else:
            p.write_bytes(data)
    except OSError as e:
        raise IOFailure(f"cannot write {path}: {e.strerror}") from None


def _load_cover(spec: str, seed: int | None = None):
    if spec.startswith("synth:"):
        return cover_from_spec(spec, seed)
    try:
        return read_pgm(_read(spec))
    except NetpbmError as e:
        raise IOFailure(f"{spec}: {e}") from None


def _load_mark(path: str):
    try:
        return read_pbm(_read(path))
    except NetpbmError as e:
        raise IOFailure(f"{path}: {e}") from None


def _join(values) -> str:
    return " ".join(str(v) for v in values)


def cmd_gen(args, out):
    q, r = args.q, args.base
    fmt = "register" if args.register else args.format
    n = args.len or period(q, r)
    if fmt == "register":
        t, rem = divmod(q + 1, r)
        if rem:
            raise ParameterError(f"q={q} is not of the form t*{r} - 1")
        trace = register_generate(t, r, n)
        print(f"upper: {_join(trace.carry_row)}", file=out)
        print(f"lower: {_join(trace.digit_row)}", file=out)
        print(f"reversed: {_join(trace.reversed_digits())}", file=out)
    elif fmt == "chips":
        if r != 2:
            raise ParameterError("chips need --base 2")
        seq = generate(q, r, n)
        print(_join(2 * d - 1 for d in seq.digits), file=out)
    else:
        print(_join(generate(q, r, n).digits), file=out)


def caption_note(q: int, computed: int) -> str | None:
    reported = CAPTION_PERIODS.get(q)
    if reported is None:
        return None
    if reported == computed:
        return f"reported_period={reported} matches"
    why = "does not divide" if (q - 1) % reported else "divides"
    return (f"reported_period={reported} MISMATCH computed={computed}; "
            f"{reported} {why} q-1={q - 1}={'*'.join(map(str, _expand(factorize(q - 1))))}"
            + (", so it cannot be the order" if (q - 1) % reported else ""))


def _expand(factors):
    return [p for p, e in sorted(factors.items()) for _ in range(e)]


def cmd_analyze(args, out):
    if args.base != 2:
        raise ParameterError("analysis is binary only; use --base 2")
    rep = correlation_report(args.q, 2)
    csv_text = rep.to_csv()
    if args.out:
        _write(args.out, csv_text)
    else:
        out.write(csv_text)
    best = select_shifts(rep, min(args.best, rep.period - 1))
    max_abs = max(abs(v) for v in rep.values[1:])
    print(f"period={rep.period} best_shifts={','.join(map(str, best))} "
          f"mean={rep.mean:.6g} std={rep.std:.6g} max_abs={max_abs:.6g}", file=out)
    note = caption_note(args.q, rep.period)
    if note:
        print(note, file=out)


def cmd_embed(args, out):
    cover = _load_cover(args.cover)
    mark = _load_mark(args.mark)
    plan = make_plan(args.q, args.k, (cover.width, cover.height), (mark.cols, mark.rows),
                     args.mode, args.key)
    marked = embed(cover, mark, plan)
    plan_path = args.plan or str(Path(args.out).with_suffix(".wmplan"))
    _write(args.out, write_pgm(marked))
    _write(plan_path, plan.to_text())
    value = psnr(cover, marked)
    print(f"psnr={'inf' if value == float('inf') else f'{value:.4f}'}", file=out)
    print(f"period={plan.period} block={plan.block_w}x{plan.block_h} plan={plan_path}", file=out)


def cmd_extract(args, out):
    try:
        plan = WatermarkPlan.from_text(_read(args.plan).decode("utf-8", "replace"))
    except PlanFormatError as e:
        raise IOFailure(f"{args.plan}: {e}") from None
    image = _load_cover(args.image)
    res = extract(image, plan)
    _write(args.out, write_pbm(res.recovered))
    c = np.asarray(res.correlations)
    print(f"threshold={res.threshold:.6g} corr_min={c.min():.6g} corr_max={c.max():.6g} "
          f"corr_std={c.std():.6g} black={res.recovered.black()}", file=out)
    if args.truth:
        print(f"noise_pixels={noise_pixels(res.recovered, _load_mark(args.truth))}", file=out)


def cmd_sweep(args, out):
    cover = args.cover if args.cover.startswith("synth:") else _load_cover(args.cover)
    mark = args.mark if args.mark.startswith("synth:") else _load_mark(args.mark)
    for m in args.modes:
        if m not in SHIFT_MODES:
            raise ParameterError(f"unknown shift mode {m!r}")
    degree = None
    if args.baseline:
        if args.baseline != "msequence":
            raise ParameterError(f"unknown baseline {args.baseline!r}")
        degree = args.degree
    rows = run_sweep(TrialInputs(cover, mark), args.primes, args.gains, args.modes,
                     args.trials, args.key, degree, args.jobs)
    text = rows_to_csv(rows)
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dseqmark", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="print d-sequence digits, chips or the register trace")
    g.add_argument("--q", type=_int, required=True)
    g.add_argument("--base", type=_int, default=2)
    g.add_argument("--len", type=_int, default=0, help="number of digits (default: one period)")
    g.add_argument("--format", choices=("digits", "chips", "register"), default="digits")
    g.add_argument("--register", action="store_true", help="shorthand for --format register")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="cyclic autocorrelation report as shift,value CSV")
    a.add_argument("--q", type=_int, required=True)
    a.add_argument("--base", type=_int, default=2)
    a.add_argument("--out", help="CSV path (default: stdout)")
    a.add_argument("--best", type=_int, default=5, help="how many best shifts to list")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("embed", help="embed a PBM mark into a PGM cover")
    e.add_argument("--cover", required=True, help="PGM path or synth:<kind>:<W>x<H>[:seed]")
    e.add_argument("--mark", required=True)
    e.add_argument("--q", type=_int, required=True)
    e.add_argument("--k", type=_int, default=2)
    e.add_argument("--mode", choices=SHIFT_MODES, default="selected")
    e.add_argument("--key", type=_int, default=0)
    e.add_argument("--out", required=True)
    e.add_argument("--plan", help="sidecar path (default: OUT with .wmplan suffix)")
    e.set_defaults(func=cmd_embed)

    x = sub.add_parser("extract", help="recover the mark using a .wmplan sidecar")
    x.add_argument("--image", required=True)
    x.add_argument("--plan", required=True)
    x.add_argument("--out", required=True)
    x.add_argument("--truth", help="original mark, to report noise_pixels")
    x.set_defaults(func=cmd_extract)

    s = sub.add_parser("sweep", help="factorial embed/extract sweep to CSV")
    s.add_argument("--cover", default="synth:texture:256x256")
    s.add_argument("--mark", default="synth:random:8x8:10-54",
                   help="PBM path or synth:random:<C>x<R>[:<lo>-<hi>]")
    s.add_argument("--primes", type=_int_list, default=[283, 277])
    s.add_argument("--gains", type=_int_list, default=[2])
    s.add_argument("--modes", type=_str_list, default=["selected"])
    s.add_argument("--trials", type=_int, default=5)
    s.add_argument("--key", type=_int, default=0)
    s.add_argument("--baseline", choices=("msequence",))
    s.add_argument("--degree", type=_int, default=6)
    s.add_argument("--jobs", type=_int, default=1)
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except IOFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    except DSeqError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    return 0


if __name__ == "__main__":
    sys.exit(main())

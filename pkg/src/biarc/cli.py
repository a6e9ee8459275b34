"""Command line interface: ``biarc {solve,sample,sweep,render,gcode}``.

Exit status is 0 when every input solved, 1 when any record carries a
geometric error, 2 on usage or parse errors. Angles are radians unless
``--degrees`` is given; it applies to input only, records are always radians.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from typing import Iterable, Iterator, TextIO

from . import __version__
from .core import HermiteData, biarc_eval
from .linalg2 import TOL_RESIDUAL
from .records import (
    BiarcRecord,
    RecordParseError,
    dumps,
    iter_records,
    parse_hermite_line,
    solve_record,
)
from .render import gcode_program, svg_document
from .sweep import SweepSpec, run_sweep

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple[float, float]:
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two numbers 'a,b', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number pair: {text!r}") from None


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


@contextlib.contextmanager
def _open_out(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


@contextlib.contextmanager
def _open_in(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


def _read_records(path: str | None) -> list[BiarcRecord]:
    with _open_in(path) as fh:
        return list(iter_records(fh))


def _hermite_inputs(args) -> Iterable[HermiteData]:
    flags = (args.p0, args.theta0, args.p1, args.theta1)
    if any(f is not None for f in flags):
        if any(f is None for f in flags):
            raise UsageError("--p0, --theta0, --p1 and --theta1 must be given together")
        if args.input is not None:
            raise UsageError("give either point flags or --input, not both")
        return [
            HermiteData(
                args.p0[0],
                args.p0[1],
                _angle(args.theta0, args.degrees),
                args.p1[0],
                args.p1[1],
                _angle(args.theta1, args.degrees),
            )
        ]
    out = []
    with _open_in(args.input) as fh:
        for n, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                out.append(parse_hermite_line(s, args.degrees))
            except ValueError as exc:
                raise RecordParseError(str(exc), n) from None
    return out


def cmd_solve(args) -> int:
    status = EXIT_OK
    with _open_out(args.output) as out:
        for h in _hermite_inputs(args):
            rec = solve_record(h, tol_residual=args.tol)
            if not rec.ok:
                status = EXIT_DOMAIN
            out.write(dumps(rec, args.format) + "\n")
    return status


def _sample_lines(rec: BiarcRecord, index: int, n: int, fmt: str) -> Iterator[str]:
    b = rec.to_biarc()
    total = b.total_length
    for i in range(n + 1):
        ell = total if i == n else i * total / n
        p = biarc_eval(b, ell)
        row = {"record": index, "i": i, "ell": ell, "x": p.x, "y": p.y, "theta": p.theta, "kappa": p.kappa}
        if fmt == "json":
            yield json.dumps(row, separators=(", ", ": "))
        else:
            yield " ".join(f"{k}={v!r}" for k, v in row.items())


def cmd_sample(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    status = EXIT_OK
    recs = _read_records(args.input)
    with _open_out(args.output) as out:
        for index, rec in enumerate(recs):
            if not rec.ok:
                status = EXIT_DOMAIN
                out.write(f"# record {index}: {rec.kind}\n")
                continue
            for line in _sample_lines(rec, index, args.n, args.format):
                out.write(line + "\n")
    return status


def cmd_sweep(args) -> int:
    t0 = tuple(_angle(v, args.degrees) for v in args.theta0_range)
    t1 = tuple(_angle(v, args.degrees) for v in args.theta1_range)
    try:
        spec = SweepSpec(
            t0,
            t1,
            args.samples,
            tuple(args.p0),
            tuple(args.p1),
            _angle(args.perturbation, args.degrees),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_sweep(spec, tol_residual=args.tol)
    with _open_out(args.output) as out:
        for p in report.points:
            rec = (
                BiarcRecord.from_biarc(p.hermite, p.biarc, i=p.i, j=p.j)
                if p.biarc is not None
                else BiarcRecord(p.hermite, p.outcome, message=p.message, i=p.i, j=p.j)
            )
            out.write(dumps(rec, args.format) + "\n")
        summary = json.dumps(report.summary(), separators=(", ", ": "))
        if args.format == "json":
            out.write(f'{{"summary": {summary}}}\n')
        else:
            out.write(f"# summary {summary}\n")
    # failures inside a sweep are data, not a failed run
    return EXIT_OK


def _ok_biarcs(recs: list[BiarcRecord]):
    return [r.to_biarc() for r in recs if r.ok]


def cmd_render(args) -> int:
    recs = _read_records(args.input)
    biarcs = _ok_biarcs(recs)
    if not biarcs:
        raise UsageError("no solved records to render")
    with _open_out(args.output) as out:
        out.write(svg_document(biarcs, arrows=args.arrows, width=args.width))
    return EXIT_OK if len(biarcs) == len(recs) else EXIT_DOMAIN


def cmd_gcode(args) -> int:
    recs = _read_records(args.input)
    biarcs = _ok_biarcs(recs)
    if not biarcs:
        raise UsageError("no solved records to export")
    with _open_out(args.output) as out:
        out.write(gcode_program(biarcs, feed=args.feed, decimals=args.decimals))
    return EXIT_OK if len(biarcs) == len(recs) else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degrees", action="store_true", help="input angles are in degrees")
    common.add_argument("--tol", type=float, default=TOL_RESIDUAL, help="residual tolerance of the 2x2 solve")
    common.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("records", "json"), default="records")

    p = argparse.ArgumentParser(prog="biarc", description="Robust biarc G1 Hermite interpolation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="solve Hermite problems")
    s.add_argument("--p0", type=_pair)
    s.add_argument("--theta0", type=float)
    s.add_argument("--p1", type=_pair)
    s.add_argument("--theta1", type=float)
    s.add_argument(
        "--input", "-i", default=None,
        help="file with one problem per line: 'x0 y0 theta0 x1 y1 theta1' or a record (default stdin)",
    )
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("sample", parents=[common], help="sample solved records as polylines")
    s.add_argument("--n", type=int, default=32, help="segments per biarc (n+1 points)")
    s.add_argument("--input", "-i", default=None)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("sweep", parents=[common], help="solve a grid of end angles")
    s.add_argument("--theta0-range", type=_pair, required=True)
    s.add_argument("--theta1-range", type=_pair, required=True)
    s.add_argument("--samples", type=int, default=16)
    s.add_argument("--p0", type=_pair, default=(0.0, 0.0))
    s.add_argument("--p1", type=_pair, default=(1.0, 0.0))
    s.add_argument("--perturbation", type=float, default=0.0, help="offset added to every angle")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("render", parents=[common], help="draw records as SVG")
    s.add_argument("--input", "-i", default=None)
    s.add_argument("--arrows", action="store_true", help="draw end tangents")
    s.add_argument("--width", type=int, default=600)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("gcode", parents=[common], help="export records as G-code")
    s.add_argument("--input", "-i", default=None)
    s.add_argument("--feed", type=float, default=100.0)
    s.add_argument("--decimals", type=int, default=6)
    s.set_defaults(func=cmd_gcode)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RecordParseError as exc:
        print(f"biarc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, OSError) as exc:
        print(f"biarc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

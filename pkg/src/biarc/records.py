"""Line-delimited biarc records.

Two encodings share one field layout:

``records``
    ``key=value`` pairs separated by single spaces, one record per line.
    Floats use ``repr`` (shortest round-trip decimal); strings are quoted
    with :func:`shlex.quote`. Blank lines and lines starting with ``#`` are
    ignored by the parser.
``json``
    One JSON object per line with the same keys in the same order.

Both round-trip exactly: ``dumps(loads(line)) == line``.
"""

from __future__ import annotations

import json
import math
import shlex
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .core import ArcSegment, Biarc, BiarcError, HermiteData, arc_eval, compute_biarc
from .kernels import normalize_angle
from .linalg2 import EPS_RANK, TOL_RESIDUAL, SolveKind

__all__ = [
    "BiarcRecord",
    "RecordParseError",
    "HERMITE_KEYS",
    "BIARC_KEYS",
    "solve_record",
    "dumps",
    "loads",
    "iter_records",
    "parse_hermite_line",
]

HERMITE_KEYS = ("x0", "y0", "theta0", "x1", "y1", "theta1")
BIARC_KEYS = ("ell0", "kappa0", "ell1", "kappa1", "x_joint", "y_joint", "theta_joint", "length")
DIAG_KEYS = ("res_pos", "res_theta")
_INT_KEYS = ("i", "j")


class RecordParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class BiarcRecord:
    """Hermite input, solved biarc (or the error), and endpoint residuals."""

    hermite: HermiteData
    kind: str = "ok"
    solve: Optional[str] = None
    ell0: Optional[float] = None
    kappa0: Optional[float] = None
    ell1: Optional[float] = None
    kappa1: Optional[float] = None
    x_joint: Optional[float] = None
    y_joint: Optional[float] = None
    theta_joint: Optional[float] = None
    length: Optional[float] = None
    res_pos: Optional[float] = None
    res_theta: Optional[float] = None
    message: Optional[str] = None
    i: Optional[int] = None
    j: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.kind == "ok"

    @classmethod
    def from_biarc(cls, h: HermiteData, b: Biarc, **extra) -> "BiarcRecord":
        end = arc_eval(b.arc1, b.arc1.length)
        scale = max(1.0, h.chord)
        return cls(
            h,
            "ok",
            b.kind.value,
            b.arc0.length,
            b.arc0.curvature,
            b.arc1.length,
            b.arc1.curvature,
            b.x_joint,
            b.y_joint,
            b.theta_joint,
            b.total_length,
            math.hypot(end.x - h.x1, end.y - h.y1) / scale,
            abs(normalize_angle(end.theta - h.theta1)),
            **extra,
        )

    @classmethod
    def from_error(cls, h: HermiteData, exc: BiarcError, **extra) -> "BiarcRecord":
        return cls(h, exc.kind, message=str(exc), **extra)

    def to_biarc(self) -> Biarc:
        """Rebuild the curve; the first arc starts on the recorded input pose."""
        if not self.ok:
            raise ValueError(f"record holds no biarc (kind={self.kind})")
        h = self.hermite
        return Biarc(
            ArcSegment(h.x0, h.y0, h.theta0, self.kappa0, self.ell0),
            ArcSegment(self.x_joint, self.y_joint, self.theta_joint, self.kappa1, self.ell1),
            self.x_joint,
            self.y_joint,
            self.theta_joint,
            SolveKind(self.solve) if self.solve else SolveKind.UNIQUE,
        )

    def as_dict(self) -> dict:
        d: dict = {}
        for k in _INT_KEYS:
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        d["kind"] = self.kind
        if self.solve is not None:
            d["solve"] = self.solve
        for k in HERMITE_KEYS:
            d[k] = getattr(self.hermite, k)
        for k in BIARC_KEYS + DIAG_KEYS:
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        if self.message is not None:
            d["message"] = self.message
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BiarcRecord":
        try:
            h = HermiteData(*(float(d[k]) for k in HERMITE_KEYS))
        except KeyError as exc:
            raise RecordParseError(f"missing field {exc.args[0]!r}") from None
        kw = {}
        for k in BIARC_KEYS + DIAG_KEYS:
            if k in d:
                kw[k] = float(d[k])
        for k in _INT_KEYS:
            if k in d:
                kw[k] = int(d[k])
        unknown = set(d) - set(kw) - set(HERMITE_KEYS) - {"kind", "solve", "message"}
        if unknown:
            raise RecordParseError(f"unknown fields {sorted(unknown)}")
        return cls(h, str(d.get("kind", "ok")), d.get("solve"), message=d.get("message"), **kw)


def solve_record(
    h: HermiteData,
    eps_rank: float = EPS_RANK,
    tol_residual: float = TOL_RESIDUAL,
    **extra,
) -> BiarcRecord:
    try:
        b = compute_biarc(h, eps_rank, tol_residual)
    except BiarcError as exc:
        return BiarcRecord.from_error(h, exc, **extra)
    return BiarcRecord.from_biarc(h, b, **extra)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, int):
        return str(v)
    return shlex.quote(str(v))


def dumps(rec: BiarcRecord, fmt: str = "records") -> str:
    d = rec.as_dict()
    if fmt == "json":
        return json.dumps(d, separators=(", ", ": "))
    if fmt != "records":
        raise ValueError(f"unknown format {fmt!r}")
    return " ".join(f"{k}={_fmt(v)}" for k, v in d.items())


def _parse_kv(line: str) -> dict:
    d = {}
    for tok in shlex.split(line, comments=False, posix=True):
        key, sep, val = tok.partition("=")
        if not sep or not key:
            raise RecordParseError(f"expected key=value, got {tok!r}")
        d[key] = val
    return d


def loads(line: str, fmt: str = "records") -> BiarcRecord:
    if fmt == "json":
        try:
            d = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordParseError(str(exc)) from None
        if not isinstance(d, dict):
            raise RecordParseError("expected a JSON object")
        return BiarcRecord.from_dict(d)
    try:
        d = _parse_kv(line)
        return BiarcRecord.from_dict(d)
    except ValueError as exc:
        if isinstance(exc, RecordParseError):
            raise
        raise RecordParseError(str(exc)) from None


def _guess_format(line: str) -> str:
    return "json" if line.lstrip().startswith("{") else "records"


def iter_records(lines: Iterable[str]) -> Iterator[BiarcRecord]:
    """Parse a record stream of either encoding, skipping blanks and comments.

    Lines whose JSON object has no record fields (such as sweep summaries)
    are skipped as well.
    """
    for n, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        fmt = _guess_format(s)
        if fmt == "json":
            try:
                obj = json.loads(s)
            except json.JSONDecodeError as exc:
                raise RecordParseError(str(exc), n) from None
            if isinstance(obj, dict) and "summary" in obj:
                continue
        try:
            yield loads(s, fmt)
        except RecordParseError as exc:
            raise RecordParseError(str(exc), n) from None


def parse_hermite_line(line: str, degrees: bool = False) -> HermiteData:
    """Six numbers ``x0 y0 theta0 x1 y1 theta1`` (commas or whitespace),
    or any record carrying the Hermite fields."""
    s = line.strip()
    if s.startswith("{") or "=" in s:
        h = loads(s, _guess_format(s)).hermite
    else:
        parts = s.replace(",", " ").split()
        if len(parts) != 6:
            raise RecordParseError(f"expected 6 numbers, got {len(parts)}")
        try:
            h = HermiteData(*(float(p) for p in parts))
        except ValueError as exc:
            raise RecordParseError(str(exc)) from None
    if degrees:
        h = HermiteData(h.x0, h.y0, math.radians(h.theta0), h.x1, h.y1, math.radians(h.theta1))
    return h

"""SVG figures and G-code programs from solved biarcs."""

from __future__ import annotations

import math
from typing import Iterable, Sequence
from xml.sax.saxutils import quoteattr

from .core import ArcSegment, Biarc, arc_eval

__all__ = ["arc_pieces", "svg_document", "gcode_program", "ARC_STYLES"]

ARC_STYLES = ("#1f4fd1", "#d1281f")  # first arc blue, second red
_MAX_SWEEP = math.pi + 1e-9


def arc_pieces(seg: ArcSegment) -> list[ArcSegment]:
    """Split ``seg`` into pieces sweeping at most pi each.

    Arcs of a half turn or less come back unchanged; longer ones are halved
    so that neither SVG nor G-code sees a nearly closed circle.
    """
    if abs(seg.curvature * seg.length) <= _MAX_SWEEP:
        return [seg]
    half = 0.5 * seg.length
    mid = arc_eval(seg, half)
    return [
        ArcSegment(seg.x_start, seg.y_start, seg.theta_start, seg.curvature, half),
        ArcSegment(mid.x, mid.y, mid.theta, seg.curvature, seg.length - half),
    ]


def _num(v: float) -> str:
    return repr(float(v))


def _path_d(seg: ArcSegment) -> str:
    parts = [f"M {_num(seg.x_start)} {_num(seg.y_start)}"]
    if seg.curvature == 0.0:
        e = arc_eval(seg, seg.length)
        parts.append(f"L {_num(e.x)} {_num(e.y)}")
        return " ".join(parts)
    r = abs(1.0 / seg.curvature)
    sweep_flag = 1 if seg.curvature > 0 else 0
    for piece in arc_pieces(seg):
        e = arc_eval(piece, piece.length)
        # pieces never exceed a half turn, so the small arc is always right
        parts.append(f"A {_num(r)} {_num(r)} 0 0 {sweep_flag} {_num(e.x)} {_num(e.y)}")
    return " ".join(parts)


def _bbox(biarcs: Sequence[Biarc]) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for b in biarcs:
        for seg in (b.arc0, b.arc1):
            for k in range(33):
                p = arc_eval(seg, seg.length * k / 32)
                xs.append(p.x)
                ys.append(p.y)
    return min(xs), min(ys), max(xs), max(ys)


def svg_document(
    biarcs: Iterable[Biarc],
    arrows: bool = False,
    width: int = 600,
    stroke_width: float = 1.5,
    margin: float = 0.08,
) -> str:
    """Render biarcs as an SVG 1.1 document.

    Geometry is written in model coordinates (y up) inside a group that
    flips the y axis, so path data can be read back without rescaling.
    Each biarc contributes two ``<path>`` elements, classes ``arc0`` and
    ``arc1``. With ``arrows`` the end tangents are drawn as arrows.
    """
    biarcs = list(biarcs)
    if not biarcs:
        raise ValueError("nothing to render")
    x_lo, y_lo, x_hi, y_hi = _bbox(biarcs)
    span = max(x_hi - x_lo, y_hi - y_lo, 1e-12)
    pad = margin * span
    vx, vy = x_lo - pad, -(y_hi + pad)
    vw, vh = (x_hi - x_lo) + 2 * pad, (y_hi - y_lo) + 2 * pad
    height = max(1, round(width * vh / vw))
    arrow_len = 0.08 * span

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}">',
    ]
    if arrows:
        out += [
            "<defs>",
            '<marker id="head" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" '
            'markerHeight="6" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="#444"/></marker>',
            "</defs>",
        ]
    out.append('<g transform="matrix(1 0 0 -1 0 0)" fill="none" stroke-linecap="round">')
    for n, b in enumerate(biarcs):
        for k, seg in enumerate((b.arc0, b.arc1)):
            out.append(
                f'<path class="arc{k}" data-biarc="{n}" stroke={quoteattr(ARC_STYLES[k])} '
                f'stroke-width="{stroke_width}" vector-effect="non-scaling-stroke" '
                f"d={quoteattr(_path_d(seg))}/>"
            )
        if arrows:
            start = arc_eval(b.arc0, 0.0)
            end = arc_eval(b.arc1, b.arc1.length)
            for p in (start, end):
                x2 = p.x + arrow_len * math.cos(p.theta)
                y2 = p.y + arrow_len * math.sin(p.theta)
                out.append(
                    f'<line class="tangent" x1="{_num(p.x)}" y1="{_num(p.y)}" x2="{_num(x2)}" '
                    f'y2="{_num(y2)}" stroke="#444" stroke-width="1" '
                    'vector-effect="non-scaling-stroke" marker-end="url(#head)"/>'
                )
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)


def _g(v: float, decimals: int) -> str:
    s = f"{v:.{decimals}f}"
    return s[1:] if s.startswith("-") and float(s) == 0.0 else s


def gcode_program(
    biarcs: Iterable[Biarc],
    feed: float = 100.0,
    decimals: int = 6,
    min_bend: float = 1e-12,
) -> str:
    """ISO 6983 style program: G1 for segments, G2 (cw) / G3 (ccw) for arcs.

    Coordinates are absolute (G90); arc centres are incremental I, J offsets
    from the start of each move. Arcs with ``|curvature| * chord`` below
    ``min_bend`` are emitted as G1 lines, and arcs longer than a half turn
    are split in two.
    """
    f = _g(feed, 3).rstrip("0").rstrip(".")
    lines = ["%", "(biarc program)", "G21 G90 G17", f"F{f}"]
    for n, b in enumerate(biarcs):
        lines.append(f"(biarc {n})")
        lines.append(f"G0 X{_g(b.arc0.x_start, decimals)} Y{_g(b.arc0.y_start, decimals)}")
        for seg in (b.arc0, b.arc1):
            for piece in arc_pieces(seg):
                e = arc_eval(piece, piece.length)
                chord = math.hypot(e.x - piece.x_start, e.y - piece.y_start)
                xy = f"X{_g(e.x, decimals)} Y{_g(e.y, decimals)}"
                if abs(piece.curvature) * chord < min_bend:
                    lines.append(f"G1 {xy}")
                    continue
                cx, cy = piece.center()
                word = "G3" if piece.curvature > 0 else "G2"
                lines.append(
                    f"{word} {xy} I{_g(cx - piece.x_start, decimals)} J{_g(cy - piece.y_start, decimals)}"
                )
    lines += ["M2", "%", ""]
    return "\n".join(lines)

"""Biarc G1 Hermite interpolation.

Two points with prescribed tangent angles are joined by two circular arcs
(either may degenerate to a segment). The free parameter is fixed by the
joint-angle rule: the tangent at the joint is the mirror image, across the
chord, of the mean of the end tangent angles. After moving the chord onto
(0, 0)-(1, 0) the arc lengths solve one 2x2 linear system, which is singular
exactly when both end angles agree; the pseudoinverse solution covers that
case continuously.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .kernels import cosc, normalize_angle, sinc
from .linalg2 import EPS_RANK, TOL_RESIDUAL, Mat2, SolveKind, Vec2, solve2x2

__all__ = [
    "BiarcError",
    "DegenerateChord",
    "NoSolution",
    "NonPositiveLength",
    "OutOfRange",
    "HermiteData",
    "Frame",
    "StandardProblem",
    "StandardSolution",
    "ArcSegment",
    "Biarc",
    "Pose",
    "to_standard",
    "assemble_matrix",
    "solve_standard",
    "compute_biarc",
    "arc_eval",
    "biarc_eval",
    "MIN_CHORD",
    "MIN_LENGTH",
    "NULL_MATRIX_TOL",
]

MIN_CHORD = 1e-300
MIN_LENGTH = 1e-14
# standard-form coefficients are O(1); below this they are rounding noise
NULL_MATRIX_TOL = 1e-14


class BiarcError(ValueError):
    """Base class for geometric failures of the biarc construction."""

    kind = "error"


class DegenerateChord(BiarcError):
    kind = "DegenerateChord"


class NoSolution(BiarcError):
    kind = "NoSolution"


class NonPositiveLength(BiarcError):
    kind = "NonPositiveLength"


class OutOfRange(BiarcError):
    kind = "OutOfRange"


class Pose(NamedTuple):
    x: float
    y: float
    theta: float
    kappa: float


@dataclass(frozen=True, slots=True)
class HermiteData:
    """End points with tangent angles (radians, world frame)."""

    x0: float
    y0: float
    theta0: float
    x1: float
    y1: float
    theta1: float

    def __post_init__(self):
        for name in ("x0", "y0", "theta0", "x1", "y1", "theta1"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    @property
    def chord(self) -> float:
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)


@dataclass(frozen=True, slots=True)
class Frame:
    alpha: float
    d: float


@dataclass(frozen=True, slots=True)
class StandardProblem:
    theta0: float
    theta1: float
    theta_star: float
    dtheta0: float
    dtheta1: float

    @classmethod
    def from_angles(cls, theta0: float, theta1: float) -> "StandardProblem":
        theta_star = -0.5 * (theta0 + theta1)
        return cls(theta0, theta1, theta_star, theta_star - theta0, theta_star - theta1)


@dataclass(frozen=True, slots=True)
class StandardSolution:
    s: float
    t: float
    kappa0_std: float
    kappa1_std: float
    kind: SolveKind = SolveKind.UNIQUE


@dataclass(frozen=True, slots=True)
class ArcSegment:
    x_start: float
    y_start: float
    theta_start: float
    curvature: float
    length: float

    @property
    def sweep(self) -> float:
        return self.curvature * self.length

    def end(self) -> Pose:
        return arc_eval(self, self.length)

    def center(self) -> tuple[float, float] | None:
        if self.curvature == 0.0:
            return None
        r = 1.0 / self.curvature
        return (
            self.x_start - r * math.sin(self.theta_start),
            self.y_start + r * math.cos(self.theta_start),
        )


@dataclass(frozen=True, slots=True)
class Biarc:
    arc0: ArcSegment
    arc1: ArcSegment
    x_joint: float
    y_joint: float
    theta_joint: float
    kind: SolveKind = SolveKind.UNIQUE

    @property
    def ell_star(self) -> float:
        return self.arc0.length

    @property
    def total_length(self) -> float:
        return self.arc0.length + self.arc1.length

    def __call__(self, ell: float) -> Pose:
        return biarc_eval(self, ell)


def to_standard(h: HermiteData) -> tuple[StandardProblem, Frame]:
    dx = h.x1 - h.x0
    dy = h.y1 - h.y0
    d = math.hypot(dx, dy)
    if not d > MIN_CHORD:
        raise DegenerateChord(f"end points coincide (chord length {d!r})")
    alpha = math.atan2(dy, dx)
    sp = StandardProblem.from_angles(
        normalize_angle(h.theta0 - alpha), normalize_angle(h.theta1 - alpha)
    )
    return sp, Frame(alpha, d)


def assemble_matrix(sp: StandardProblem) -> Mat2:
    """Coefficient matrix whose columns are R(theta_i) (sinc d_i, cosc d_i).

    Each column equals sinc(d_i/2) (cos phi_i, sin phi_i) with
    phi_i = theta_i + d_i/2; in standard form phi_0 = -phi_1 = (theta0 - theta1)/4.
    Using that directly keeps the near-singular Schur complement free of
    cancellation.
    """
    phi = 0.25 * (sp.theta0 - sp.theta1)
    c, s = math.cos(phi), math.sin(phi)
    g0 = sinc(0.5 * sp.dtheta0)
    g1 = sinc(0.5 * sp.dtheta1)
    return Mat2(g0 * c, g1 * c, g0 * s, -g1 * s)


def _solve(sp: StandardProblem, eps_rank: float, tol_residual: float):
    a = assemble_matrix(sp)
    if a.max_abs() <= NULL_MATRIX_TOL:
        raise NoSolution(
            f"coefficient matrix vanishes for theta0={sp.theta0!r}, theta1={sp.theta1!r}"
        )
    out = solve2x2(a, Vec2(1.0, 0.0), eps_rank, tol_residual)
    if not out.ok:
        raise NoSolution(
            f"linear system is {out.kind.value} for theta0={sp.theta0!r}, theta1={sp.theta1!r}"
        )
    s, t = out.solution
    if not (s > MIN_LENGTH and t > MIN_LENGTH):
        raise NonPositiveLength(f"normalised arc lengths s={s!r}, t={t!r}")
    return a, s, t, out.kind


def solve_standard(
    sp: StandardProblem,
    eps_rank: float = EPS_RANK,
    tol_residual: float = TOL_RESIDUAL,
) -> StandardSolution:
    """Normalised arc lengths and curvatures for a problem in standard form.

    When both reduced angles coincide the system has rank 1 and the
    minimum-norm split is returned, which satisfies ``s + t = 1/sinc(theta0)``.
    """
    _, s, t, kind = _solve(sp, eps_rank, tol_residual)
    return StandardSolution(s, t, sp.dtheta0 / s, -sp.dtheta1 / t, kind)


def compute_biarc(
    h: HermiteData,
    eps_rank: float = EPS_RANK,
    tol_residual: float = TOL_RESIDUAL,
) -> Biarc:
    """Solve the biarc Hermite problem.

    Raises
    ------
    DegenerateChord
        If the two end points coincide.
    NoSolution
        If the linear system is inconsistent, e.g. both reduced angles equal pi.
    NonPositiveLength
        If either arc would have non-positive length.
    """
    sp, fr = to_standard(h)
    a, s, t, kind = _solve(sp, eps_rank, tol_residual)

    ell0 = fr.d * s
    ell1 = fr.d * t
    # + 0.0 turns a signed zero into +0.0
    k0 = sp.dtheta0 / ell0 + 0.0
    k1 = -sp.dtheta1 / ell1 + 0.0
    ca, sa = math.cos(fr.alpha), math.sin(fr.alpha)
    xj = h.x0 + ell0 * (ca * a.a11 - sa * a.a21)
    yj = h.y0 + ell0 * (sa * a.a11 + ca * a.a21)
    theta_joint = sp.theta_star + fr.alpha
    theta_start = sp.theta0 + fr.alpha
    return Biarc(
        ArcSegment(h.x0, h.y0, theta_start, k0, ell0),
        ArcSegment(xj, yj, theta_joint, k1, ell1),
        xj,
        yj,
        theta_joint,
        kind,
    )


def arc_eval(seg: ArcSegment, ell: float) -> Pose:
    """Pose on ``seg`` at arclength ``ell`` from its start.

    Values outside ``[0, seg.length]`` extend the circle; callers that care
    check the range themselves.
    """
    u = seg.curvature * ell
    sc, cc = sinc(u), cosc(u)
    c, s = math.cos(seg.theta_start), math.sin(seg.theta_start)
    return Pose(
        seg.x_start + ell * (c * sc - s * cc),
        seg.y_start + ell * (s * sc + c * cc),
        seg.theta_start + u,
        seg.curvature,
    )


def biarc_eval(b: Biarc, ell: float) -> Pose:
    """Pose at arclength ``ell`` in ``[0, total_length]``.

    The curvature at the joint itself is that of the second arc.
    """
    total = b.total_length
    if not 0.0 <= ell <= total:
        raise OutOfRange(f"arclength {ell!r} outside [0, {total!r}]")
    if ell < b.ell_star:
        return arc_eval(b.arc0, ell)
    return arc_eval(b.arc1, ell - b.ell_star)

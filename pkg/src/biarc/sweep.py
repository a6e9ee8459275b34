"""Batch experiments over grids of end angles.

A sweep fixes both end points and solves every (theta0, theta1) pair of a
rectangular grid. Failures are recorded, not raised. The report also holds
discrete continuity statistics: the largest jump of each output between
neighbouring grid points, divided by the grid step.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import Biarc, BiarcError, HermiteData, compute_biarc
from .kernels import normalize_angle
from .linalg2 import EPS_RANK, TOL_RESIDUAL

__all__ = ["SweepSpec", "SweepPoint", "SweepReport", "run_sweep", "OUTCOMES", "FIELDS"]

OUTCOMES = ("ok", "NoSolution", "NonPositiveLength", "DegenerateChord")
FIELDS = ("ell0", "kappa0", "ell1", "kappa1", "x_joint", "y_joint", "theta_joint")


@dataclass(frozen=True)
class SweepSpec:
    theta0_range: tuple[float, float]
    theta1_range: tuple[float, float]
    samples_per_axis: int = 16
    p0: tuple[float, float] = (0.0, 0.0)
    p1: tuple[float, float] = (1.0, 0.0)
    perturbation: float = 0.0

    def __post_init__(self):
        if self.samples_per_axis < 2:
            raise ValueError(f"samples_per_axis must be >= 2, got {self.samples_per_axis}")
        for name in ("theta0_range", "theta1_range"):
            lo, hi = getattr(self, name)
            if not (-math.pi < lo <= math.pi and -math.pi < hi <= math.pi):
                raise ValueError(f"{name} must lie in (-pi, pi], got {(lo, hi)}")
            if lo > hi:
                raise ValueError(f"{name} is reversed: {(lo, hi)}")

    def axis(self, which: int) -> np.ndarray:
        lo, hi = self.theta0_range if which == 0 else self.theta1_range
        if lo == hi:
            return np.array([lo])
        return np.linspace(lo, hi, self.samples_per_axis)


@dataclass(frozen=True)
class SweepPoint:
    i: int
    j: int
    hermite: HermiteData
    outcome: str
    biarc: Optional[Biarc] = None
    message: str = ""

    def values(self) -> Optional[tuple[float, ...]]:
        b = self.biarc
        if b is None:
            return None
        return (
            b.arc0.length,
            b.arc0.curvature,
            b.arc1.length,
            b.arc1.curvature,
            b.x_joint,
            b.y_joint,
            b.theta_joint,
        )


@dataclass
class SweepReport:
    spec: SweepSpec
    points: list[SweepPoint]
    shape: tuple[int, int]
    counts: dict[str, int] = field(default_factory=dict)
    max_jump: dict[str, float] = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return self.counts.get("ok", 0) == len(self.points)

    def summary(self) -> dict:
        return {
            "points": len(self.points),
            "shape": list(self.shape),
            "counts": dict(self.counts),
            "max_jump": dict(self.max_jump),
        }


def _solve_point(i: int, j: int, h: HermiteData, eps_rank: float, tol_residual: float) -> SweepPoint:
    try:
        b = compute_biarc(h, eps_rank, tol_residual)
    except BiarcError as exc:
        return SweepPoint(i, j, h, exc.kind, None, str(exc))
    return SweepPoint(i, j, h, "ok", b)


def _max_jumps(points: list[SweepPoint], shape: tuple[int, int], steps: tuple[float, float]) -> dict[str, float]:
    n0, n1 = shape
    vals = np.full((n0, n1, len(FIELDS)), np.nan)
    for p in points:
        v = p.values()
        if v is not None:
            vals[p.i, p.j] = v
    jumps = {name: 0.0 for name in FIELDS}
    jumps["joint"] = 0.0
    for axis, step in ((0, steps[0]), (1, steps[1])):
        if vals.shape[axis] < 2 or step == 0.0:
            continue
        diff = np.diff(vals, axis=axis)
        k = FIELDS.index("theta_joint")
        diff[..., k] = (diff[..., k] + math.pi) % (2 * math.pi) - math.pi
        joint = np.hypot(diff[..., 4], diff[..., 5])
        for n, name in enumerate(FIELDS):
            d = np.abs(diff[..., n])
            if np.any(np.isfinite(d)):
                jumps[name] = max(jumps[name], float(np.nanmax(d)) / step)
        if np.any(np.isfinite(joint)):
            jumps["joint"] = max(jumps["joint"], float(np.nanmax(joint)) / step)
    return jumps


def run_sweep(
    spec: SweepSpec,
    eps_rank: float = EPS_RANK,
    tol_residual: float = TOL_RESIDUAL,
) -> SweepReport:
    """Solve every grid point of ``spec``; the result is fully deterministic."""
    a0, a1 = spec.axis(0), spec.axis(1)
    (x0, y0), (x1, y1) = spec.p0, spec.p1
    points = []
    for i, t0 in enumerate(a0):
        for j, t1 in enumerate(a1):
            h = HermiteData(
                x0,
                y0,
                normalize_angle(float(t0) + spec.perturbation),
                x1,
                y1,
                normalize_angle(float(t1) + spec.perturbation),
            )
            points.append(_solve_point(i, j, h, eps_rank, tol_residual))

    counts = Counter(p.outcome for p in points)
    steps = (
        float(a0[1] - a0[0]) if len(a0) > 1 else 0.0,
        float(a1[1] - a1[0]) if len(a1) > 1 else 0.0,
    )
    return SweepReport(
        spec,
        points,
        (len(a0), len(a1)),
        {k: counts.get(k, 0) for k in OUTCOMES},
        _max_jumps(points, (len(a0), len(a1)), steps),
    )

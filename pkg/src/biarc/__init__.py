"""Robust biarc G1 Hermite interpolation.

>>> import math
>>> from biarc import HermiteData, compute_biarc
>>> b = compute_biarc(HermiteData(0, 0, math.pi / 2, 1, 0, math.pi / 2))
>>> round(b.x_joint, 12), round(b.arc0.curvature, 9), round(b.arc1.curvature, 9)
(0.5, -4.0, 4.0)
"""

__version__ = "0.1.0"

from .core import (
    ArcSegment,
    Biarc,
    BiarcError,
    DegenerateChord,
    Frame,
    HermiteData,
    NonPositiveLength,
    NoSolution,
    OutOfRange,
    Pose,
    StandardProblem,
    StandardSolution,
    arc_eval,
    assemble_matrix,
    biarc_eval,
    compute_biarc,
    solve_standard,
    to_standard,
)
from .kernels import cosc, fn_D, fn_K, normalize_angle, sinc
from .linalg2 import Mat2, SolveKind, SolveOutcome, Vec2, pseudoinverse2x2, solve2x2

__all__ = [
    "ArcSegment",
    "Biarc",
    "BiarcError",
    "DegenerateChord",
    "Frame",
    "HermiteData",
    "NonPositiveLength",
    "NoSolution",
    "OutOfRange",
    "Pose",
    "StandardProblem",
    "StandardSolution",
    "arc_eval",
    "assemble_matrix",
    "biarc_eval",
    "compute_biarc",
    "solve_standard",
    "to_standard",
    "cosc",
    "fn_D",
    "fn_K",
    "normalize_angle",
    "sinc",
    "Mat2",
    "SolveKind",
    "SolveOutcome",
    "Vec2",
    "pseudoinverse2x2",
    "solve2x2",
]

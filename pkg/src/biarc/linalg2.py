"""Exact-size 2x2 linear algebra.

Full-pivoted LU solve with a rank-1 least-squares fallback, and the
Moore-Penrose pseudoinverse built from the same factorisation. Rank
deficiency is reported through :class:`SolveOutcome`, never raised.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple, Optional

import numpy as np

__all__ = [
    "Mat2",
    "Vec2",
    "SolveKind",
    "SolveOutcome",
    "EPS_RANK",
    "TOL_RESIDUAL",
    "solve2x2",
    "pseudoinverse2x2",
    "matvec",
]

EPS_RANK = 1e-12
TOL_RESIDUAL = 1e-8


class Mat2(NamedTuple):
    a11: float
    a12: float
    a21: float
    a22: float

    @classmethod
    def from_array(cls, a) -> "Mat2":
        a = np.asarray(a, dtype=float)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {a.shape}")
        return cls(float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]))

    def to_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]])

    def max_abs(self) -> float:
        return max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))


class Vec2(NamedTuple):
    x1: float
    x2: float


class SolveKind(enum.Enum):
    UNIQUE = "unique"
    LEAST_SQUARES = "least_squares"
    INCONSISTENT = "inconsistent"
    NULL_MATRIX = "null_matrix"


class SolveOutcome(NamedTuple):
    solution: Optional[Vec2]
    kind: SolveKind
    residual_norm: float

    @property
    def ok(self) -> bool:
        return self.kind in (SolveKind.UNIQUE, SolveKind.LEAST_SQUARES)


def matvec(a: Mat2, x: Vec2) -> Vec2:
    return Vec2(a.a11 * x.x1 + a.a12 * x.x2, a.a21 * x.x1 + a.a22 * x.x2)


def _pivot(a: Mat2) -> tuple[int, int]:
    """Row and column (0-based) of the largest entry; ties go to the first in row-major order."""
    best, k, l = abs(a.a11), 0, 0
    for v, i, j in ((a.a12, 0, 1), (a.a21, 1, 0), (a.a22, 1, 1)):
        if abs(v) > best:
            best, k, l = abs(v), i, j
    return k, l


def _permute(a: Mat2, k: int, l: int) -> tuple[float, float, float, float]:
    rows = ((a.a11, a.a12), (a.a21, a.a22))
    if k:
        rows = (rows[1], rows[0])
    if l:
        rows = ((rows[0][1], rows[0][0]), (rows[1][1], rows[1][0]))
    return rows[0][0], rows[0][1], rows[1][0], rows[1][1]


def _residual(a: Mat2, x: Vec2, b: Vec2) -> float:
    r = matvec(a, x)
    return math.hypot(r.x1 - b.x1, r.x2 - b.x2)


def solve2x2(
    a: Mat2,
    b: Vec2,
    eps_rank: float = EPS_RANK,
    tol_residual: float = TOL_RESIDUAL,
) -> SolveOutcome:
    """Solve ``a @ x = b`` returning the pseudoinverse solution.

    Parameters
    ----------
    a, b : Mat2, Vec2
        The system. Entries must be finite.
    eps_rank : float
        Rank threshold relative to ``max|a_ij|``: the Schur complement of
        the pivot below ``eps_rank * max|a_ij|`` means rank 1.
    tol_residual : float
        Absolute residual bound. A full-rank solve whose residual exceeds it
        is redone as rank 1; a rank-1 residual above it means inconsistent.

    Returns
    -------
    SolveOutcome
        For consistent systems ``solution`` is the minimum-norm solution.
        Inconsistent systems still carry the least-squares solution;
        ``NULL_MATRIX`` carries none.
    """
    k, l = _pivot(a)
    p11, p12, p21, p22 = _permute(a, k, l)
    if p11 == 0.0:
        return SolveOutcome(None, SolveKind.NULL_MATRIX, math.hypot(b.x1, b.x2))
    b1, b2 = (b.x2, b.x1) if k else (b.x1, b.x2)

    def unpermute(y1, y2):
        return Vec2(y2, y1) if l else Vec2(y1, y2)

    r = p21 / p11
    w = p22 - r * p12
    if abs(w) >= eps_rank * abs(p11):
        y2 = (b2 - r * b1) / w
        x = unpermute((b1 - p12 * y2) / p11, y2)
        res = _residual(a, x, b)
        if res <= tol_residual:
            return SolveOutcome(x, SolveKind.UNIQUE, res)
        # too ill-conditioned to reproduce b: treat as numerically rank 1

    # A ~ p11 (1, r)^T (1, q); ratios keep the scale out of the squares
    q = p12 / p11
    t = (b1 + r * b2) / ((1.0 + r * r) * (1.0 + q * q) * p11)
    x = unpermute(t, t * q)
    res = _residual(a, x, b)
    kind = SolveKind.LEAST_SQUARES if res <= tol_residual else SolveKind.INCONSISTENT
    return SolveOutcome(x, kind, res)


def pseudoinverse2x2(a: Mat2, eps_rank: float = EPS_RANK) -> Mat2:
    """Moore-Penrose pseudoinverse via the pivoted LU factors.

    Full rank gives ``U^-1 L^-1``. At rank 1 ``L`` is a column and ``U`` a
    row, and ``(LU)^+ = U^+ L^+`` with ``v^+ = v^T / |v|^2``. The zero
    matrix maps to itself. Entries so small that their reciprocal
    overflows give infinite results.
    """
    k, l = _pivot(a)
    p11, p12, p21, p22 = _permute(a, k, l)
    if p11 == 0.0:
        return Mat2(0.0, 0.0, 0.0, 0.0)

    r = p21 / p11
    q = p12 / p11
    w = p22 - r * p12
    if abs(w) < eps_rank * abs(p11):
        c = 1.0 / ((1.0 + r * r) * (1.0 + q * q) * p11)
        q11, q12 = c, c * r
        q21, q22 = c * q, c * q * r
    else:
        q11 = 1.0 / p11 + r * q / w
        q12 = -q / w
        q21 = -r / w
        q22 = 1.0 / w

    # pinv(P A Q) = Q^T pinv(A) P^T, so undo by swapping rows with l and columns with k
    if l:
        q11, q12, q21, q22 = q21, q22, q11, q12
    if k:
        q11, q12, q21, q22 = q12, q11, q22, q21
    return Mat2(q11, q12, q21, q22)

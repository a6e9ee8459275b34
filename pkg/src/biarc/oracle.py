"""Independent references used to check the production path.

Nothing here is fast, and nothing here shares code with the solver beyond the
data types: kernel references use mpmath (or long double when it is wide
enough), the linear system is solved by Cramer's rule, the curve is recovered
by integrating the Frenet ODE with RK4, and least squares is checked by brute
force on a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .core import Biarc, StandardProblem, StandardSolution
from .linalg2 import Mat2, Vec2, SolveKind

__all__ = [
    "SingularDeterminant",
    "sinc_ref",
    "cosc_ref",
    "fn_D_ref",
    "fn_K_ref",
    "sinc_series_ref",
    "cosc_series_ref",
    "sinc_ld",
    "cosc_ld",
    "LONGDOUBLE_IS_EXTENDED",
    "cramer_solution",
    "IntegrationConfig",
    "integrate_frenet",
    "integrate_frenet_batch",
    "grid_least_squares",
]

_DPS = 40


class SingularDeterminant(ArithmeticError):
    pass


def _mpf(x) -> mpmath.mpf:
    return mpmath.mpf(x) if not isinstance(x, mpmath.mpf) else x


def sinc_ref(x, dps: int = _DPS) -> mpmath.mpf:
    with mpmath.workdps(dps):
        x = _mpf(x)
        return mpmath.mpf(1) if x == 0 else mpmath.sin(x) / x


def _guard(*vals) -> int:
    """Extra decimal digits to cover cancellation at the scale of ``vals``."""
    g = 0
    for v in vals:
        if v != 0 and abs(v) < 1:
            g += int(-math.log10(abs(float(v)))) + 1
    return g


def cosc_ref(x, dps: int = _DPS) -> mpmath.mpf:
    with mpmath.workdps(dps + 2 * _guard(x)):
        x = _mpf(x)
        return mpmath.mpf(0) if x == 0 else +((1 - mpmath.cos(x)) / x)


def sinc_series_ref(x, dps: int = _DPS) -> mpmath.mpf:
    """The degree-4 truncated series evaluated without rounding error."""
    with mpmath.workdps(dps):
        x2 = _mpf(x) ** 2
        return 1 - x2 / 6 + x2 * x2 / 120


def cosc_series_ref(x, dps: int = _DPS) -> mpmath.mpf:
    with mpmath.workdps(dps):
        x = _mpf(x)
        return x / 2 - x**3 / 24 + x**5 / 720


def fn_D_ref(x, y, dps: int = _DPS) -> mpmath.mpf:
    """The defining quotient, with the limits at x=0 or y=0 taken by hand."""
    if x == 0:
        return -cosc_ref(y, dps)
    if y == 0:
        return cosc_ref(x, dps)
    with mpmath.workdps(dps + _guard(x, y, float(x) - float(y))):
        x, y = _mpf(x), _mpf(y)
        return (mpmath.sin(x - y) + mpmath.sin(y) - mpmath.sin(x)) / (x * y)


def fn_K_ref(x, y, dps: int = _DPS) -> mpmath.mpf:
    with mpmath.workdps(dps):
        x, y = _mpf(x), _mpf(y)
        if x == y:
            return -mpmath.sin(x)
    with mpmath.workdps(dps + _guard(float(x) - float(y), float(x) + float(y))):
        x, y = _mpf(x), _mpf(y)
        return (mpmath.cos(x) - mpmath.cos(y)) / (x - y)


LONGDOUBLE_IS_EXTENDED = np.finfo(np.longdouble).eps < 1e-18


def sinc_ld(x) -> np.ndarray:
    """Vectorised sinc in long double; exact float64 inputs, long double output."""
    xs = np.asarray(x, dtype=np.longdouble)
    if not LONGDOUBLE_IS_EXTENDED:
        return np.array([sinc_ref(float(v)) for v in np.ravel(xs)], dtype=object).reshape(xs.shape)
    out = np.ones_like(xs)
    nz = xs != 0
    out[nz] = np.sin(xs[nz]) / xs[nz]
    return out


def cosc_ld(x) -> np.ndarray:
    xs = np.asarray(x, dtype=np.longdouble)
    if not LONGDOUBLE_IS_EXTENDED:
        return np.array([cosc_ref(float(v)) for v in np.ravel(xs)], dtype=object).reshape(xs.shape)
    out = np.zeros_like(xs)
    nz = xs != 0
    h = np.sin(xs[nz] / 2)
    out[nz] = 2 * h * h / xs[nz]
    return out


def cramer_solution(sp: StandardProblem, threshold: float = 1e-12) -> StandardSolution:
    """Closed-form solution of the standard system by Cramer's rule.

    With D the system determinant, ``s = -K(theta1, theta*)/D`` and
    ``t = K(theta0, theta*)/D``; each K is (minus) an entry of the second
    row of the matrix. Evaluated in extended precision.
    """
    with mpmath.workdps(_DPS):
        # derived angles are recomputed exactly from the two end angles
        th0, th1 = mpmath.mpf(sp.theta0), mpmath.mpf(sp.theta1)
        ths = -(th0 + th1) / 2
        d0, d1 = ths - th0, ths - th1
        det = fn_D_ref(d0, d1)
        if abs(det) <= threshold:
            raise SingularDeterminant(f"|D| = {float(abs(det))!r} <= {threshold!r}")
        s = -fn_K_ref(th1, ths) / det
        t = fn_K_ref(th0, ths) / det
        return StandardSolution(float(s), float(t), float(d0 / s), float(-d1 / t), SolveKind.UNIQUE)


@dataclass(frozen=True)
class IntegrationConfig:
    step_count: int = 2**16
    method: str = "RK4"

    def __post_init__(self):
        if self.step_count < 1024:
            raise ValueError(f"step_count must be >= 1024, got {self.step_count}")
        if self.method != "RK4":
            raise ValueError(f"unsupported method {self.method!r}")


def _rk4_arc(x, y, th, kappa, length, n):
    h = length / n
    hk = h * kappa
    # compensated sums: with 2**16 steps plain accumulation of x and y
    # loses more than the method error
    cx = np.zeros_like(x)
    cy = np.zeros_like(y)
    for i in range(n):
        # theta' does not depend on the state, so RK4 advances it exactly
        t1 = th + i * hk
        c1, s1 = np.cos(t1), np.sin(t1)
        tm = t1 + 0.5 * hk
        c2, s2 = np.cos(tm), np.sin(tm)  # stages 2 and 3 coincide
        t4 = t1 + hk
        c4, s4 = np.cos(t4), np.sin(t4)
        dx = h / 6 * (c1 + 4 * c2 + c4) - cx
        sx = x + dx
        cx = (sx - x) - dx
        x = sx
        dy = h / 6 * (s1 + 4 * s2 + s4) - cy
        sy = y + dy
        cy = (sy - y) - dy
        y = sy
    return x, y, th + n * hk


def integrate_frenet_batch(
    biarcs: Sequence[Biarc], cfg: IntegrationConfig = IntegrationConfig()
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """RK4 on x' = cos(theta), y' = sin(theta), theta' = k(l) from l = 0 to L.

    The curvature is piecewise constant, so each arc is integrated
    separately with ``cfg.step_count`` steps and the state carried across
    the joint. Returns terminal (x, y, theta) arrays.
    """
    a0 = [b.arc0 for b in biarcs]
    a1 = [b.arc1 for b in biarcs]
    x = np.array([a.x_start for a in a0])
    y = np.array([a.y_start for a in a0])
    th = np.array([a.theta_start for a in a0])
    x, y, th = _rk4_arc(
        x, y, th, np.array([a.curvature for a in a0]), np.array([a.length for a in a0]), cfg.step_count
    )
    return _rk4_arc(
        x, y, th, np.array([a.curvature for a in a1]), np.array([a.length for a in a1]), cfg.step_count
    )


def integrate_frenet(b: Biarc, cfg: IntegrationConfig = IntegrationConfig()) -> tuple[float, float, float]:
    x, y, th = integrate_frenet_batch([b], cfg)
    return float(x[0]), float(y[0]), float(th[0])


def grid_least_squares(
    a: Mat2,
    b: Vec2,
    grid_extent: float = 2.0,
    grid_n: int = 4001,
    tie_rtol: float = 1e-9,
) -> Vec2:
    """Exhaustive search of ``[-extent, extent]^2`` for the least-squares minimiser.

    Points whose residual is within ``tie_rtol`` (relative, plus the same
    absolute) of the best are ties; the one of smallest norm wins.
    """
    if grid_n < 1000:
        raise ValueError(f"grid_n must be >= 1000, got {grid_n}")
    g = np.linspace(-grid_extent, grid_extent, grid_n)
    # residual over the whole grid, one row of x1 values at a time
    res = np.empty((grid_n, grid_n))
    for i, x1 in enumerate(g):
        r1 = a.a11 * x1 + a.a12 * g - b.x1
        r2 = a.a21 * x1 + a.a22 * g - b.x2
        res[i] = np.hypot(r1, r2)
    best = res.min()
    ties = np.argwhere(res <= best + tie_rtol * (1.0 + best))
    norms = g[ties[:, 0]] ** 2 + g[ties[:, 1]] ** 2
    i, j = ties[int(np.argmin(norms))]
    return Vec2(float(g[i]), float(g[j]))

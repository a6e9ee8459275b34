"""Numerically stable scalar kernels.

``sinc`` and ``cosc`` make the constant-curvature arc formula total at zero
curvature; ``fn_D`` and ``fn_K`` are the determinant functions that show up
when the biarc linear system is solved by Cramer's rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "KernelConstants",
    "KERNEL_CONSTANTS",
    "sinc",
    "cosc",
    "sinc_series",
    "cosc_series",
    "sinc_direct",
    "cosc_direct",
    "sinc_error_bound",
    "cosc_error_bound",
    "fn_D",
    "fn_K",
    "normalize_angle",
]


@dataclass(frozen=True)
class KernelConstants:
    """Series crossover thresholds for the kernels."""

    sinc_threshold: float = 0.002
    cosc_threshold: float = 0.002


KERNEL_CONSTANTS = KernelConstants()
_SINC_T = KERNEL_CONSTANTS.sinc_threshold
_COSC_T = KERNEL_CONSTANTS.cosc_threshold


def sinc_series(x: float) -> float:
    """Truncated Maclaurin series of sin(x)/x, error at most x**6/5040."""
    x2 = x * x
    return 1.0 - (x2 / 6.0) * (1.0 - x2 / 20.0)


def cosc_series(x: float) -> float:
    """Truncated Maclaurin series of (1-cos x)/x, error at most |x|**7/40320."""
    x2 = x * x
    return 0.5 * x * (1.0 - (x2 / 12.0) * (1.0 - x2 / 30.0))


def sinc_direct(x: float) -> float:
    return math.sin(x) / x


def cosc_direct(x: float) -> float:
    # 1 - cos x == 2 sin^2(x/2) without the cancellation near 0
    h = math.sin(0.5 * x)
    return 2.0 * h * h / x


def sinc_error_bound(x: float) -> float:
    return abs(x) ** 6 / 5040.0


def cosc_error_bound(x: float) -> float:
    return abs(x) ** 7 / 40320.0


def sinc(x: float) -> float:
    """sin(x)/x with the removable singularity at 0 filled in."""
    if abs(x) < _SINC_T:
        return sinc_series(x)
    return math.sin(x) / x


def cosc(x: float) -> float:
    """(1 - cos x)/x with the removable singularity at 0 filled in."""
    if abs(x) < _COSC_T:
        return cosc_series(x)
    h = math.sin(0.5 * x)
    return 2.0 * h * h / x


def fn_D(x: float, y: float) -> float:
    """(sin(x-y) + sin y - sin x)/(x y), evaluated as sinc y cosc x - sinc x cosc y."""
    return sinc(y) * cosc(x) - sinc(x) * cosc(y)


def fn_K(x: float, y: float) -> float:
    """(cos x - cos y)/(x - y), evaluated as -sin((x+y)/2) sinc((x-y)/2)."""
    return -math.sin(0.5 * (x + y)) * sinc(0.5 * (x - y))


_TWO_PI = 2.0 * math.pi


def normalize_angle(x: float) -> float:
    """Map ``x`` to the equivalent angle in (-pi, pi]."""
    if -math.pi < x <= math.pi:
        return x
    y = math.fmod(x, _TWO_PI)
    if y <= -math.pi:
        y += _TWO_PI
    elif y > math.pi:
        y -= _TWO_PI
    return y

"""Coordinate map between the inertial frame and the uniformly accelerated frame.

Natural units (hbar = k_B = c = 1) are hard-wired; the proper acceleration ``a``
is the only dimensional scale. The accelerated worldline xi = 0 lives in the
right wedge x > |t|, and its future horizon is the null line t = x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, RangeOverflowError


@dataclass(frozen=True)
class RindlerPoint:
    """A point in the accelerated frame: (tau, xi) in units of 1/a."""

    tau: float
    xi: float
    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"proper acceleration must be positive, got a={self.a}")


@dataclass(frozen=True)
class MinkowskiPoint:
    """A point in the inertial frame."""

    t: float
    x: float


def rindler_to_minkowski(p: RindlerPoint) -> MinkowskiPoint:
    """Map accelerated-frame coordinates to inertial coordinates.

    t = (1/a) e^{a xi} sinh(a tau),  x = (1/a) e^{a xi} cosh(a tau),
    so that x^2 - t^2 = e^{2 a xi} / a^2 and the image lies in the right wedge.
    """
    if not (math.isfinite(p.tau) and math.isfinite(p.xi)):
        raise DomainError(f"coordinates must be finite, got tau={p.tau}, xi={p.xi}")
    try:
        radial = math.exp(p.a * p.xi) / p.a
        ch = math.cosh(p.a * p.tau)
        sh = math.sinh(p.a * p.tau)
    except OverflowError:
        raise RangeOverflowError(
            f"exp/cosh overflow: a*xi={p.a * p.xi}, a*tau={p.a * p.tau}"
        ) from None
    t, x = radial * sh, radial * ch
    if not (math.isfinite(t) and math.isfinite(x)):
        raise RangeOverflowError(
            f"coordinate product overflow: radial={radial}, cosh={ch}"
        )
    return MinkowskiPoint(t=t, x=x)


def null_offset(p: MinkowskiPoint) -> float:
    """Retarded coordinate t - x: negative ahead of the horizon, zero on it."""
    return p.t - p.x

"""Scalar kernels of the accelerated-detector channel.

Everything is reduced to two dimensionless parameters before any integral is
written down: the emission offset u = k_so (t - x) and the packet sharpness
delta = k_so / sigma. Frequencies are dimensionless Rindler wave numbers
k = omega / a. All functions accept scalars or numpy arrays in ``k``.

1 - e^{-x} is always evaluated through expm1; the cutoff regime of interest
(k down to 1e-8) sits squarely in the cancellation-prone range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ChannelParams:
    """Dimensionless scenario parameters.

    u:     emission offset k_so (t - x); negative before the horizon.
    delta: packet sharpness k_so / sigma; the narrow-band regime needs >= 1.
    alpha: coherent signal amplitude (complex).
    beta:  local-oscillator amplitude; observables are taken in the beta-large
           limit, so beta only matters for input validation.
    phi:   homodyne quadrature phase in radians.
    """

    u: float
    delta: float
    alpha: complex = 1.0 + 0.0j
    beta: float = 1.0e3
    phi: float = 0.0

    def __post_init__(self):
        if not self.delta >= 1.0:
            raise DomainError(f"packet sharpness must be >= 1, got delta={self.delta}")
        if not self.beta > 0:
            raise DomainError(f"local-oscillator amplitude must be > 0, got beta={self.beta}")
        if not np.isfinite(self.u):
            raise DomainError(f"emission offset must be finite, got u={self.u}")


@dataclass(frozen=True)
class BracketTerms:
    """The three addends of the channel integrand bracket and their sum.

    t2 is the only term that can be negative; |t2| <= 2 sqrt(t1 t3), so
    total >= (sqrt(t1) - sqrt(t3))^2 >= 0 always.
    """

    t1: float | np.ndarray
    t2: float | np.ndarray
    t3: float | np.ndarray
    total: float | np.ndarray


def one_minus_exp_neg(x):
    """Stable 1 - e^{-x}."""
    return -np.expm1(-np.asarray(x, dtype=float))


def _require_positive(k, name="k"):
    k = np.asarray(k, dtype=float)
    if np.any(k <= 0) or np.any(~np.isfinite(k)):
        raise DomainError(f"{name} must be positive and finite")
    return k


def thermal_weight_signal(k):
    """1 / (1 - e^{-2 pi k}); ~ 1/(2 pi k) as k -> 0, -> 1 as k -> inf."""
    k = _require_positive(k)
    out = 1.0 / one_minus_exp_neg(TWO_PI * k)
    return out if out.ndim else float(out)


def thermal_weight_variance(k):
    """(1 + e^{-2 pi k}) / (1 - e^{-2 pi k})^2; ~ 2/(2 pi k)^2 as k -> 0."""
    k = _require_positive(k)
    d = one_minus_exp_neg(TWO_PI * k)
    out = (1.0 + np.exp(-TWO_PI * k)) / (d * d)
    return out if out.ndim else float(out)


def mean_occupation(k):
    """Bose-Einstein occupation 1/(e^{2 pi k} - 1) at the Unruh temperature.

    Shares the stable primitive with thermal_weight_signal, so the identity
    n(k) = thermal_weight_signal(k) - 1 holds exactly.
    """
    k = _require_positive(k)
    out = 1.0 / one_minus_exp_neg(TWO_PI * k) - 1.0
    return out if out.ndim else float(out)


def gamma_sq_magnitude(k):
    """|Gamma(1 - i k)|^2 = pi k / sinh(pi k), with the k -> 0 limit = 1.

    Evaluated as 2 pi k e^{-pi k} / (1 - e^{-2 pi k}) to stay finite for
    large k where sinh overflows.
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0) or np.any(~np.isfinite(k)):
        raise DomainError("k must be non-negative and finite")
    x = np.pi * k
    small = x < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(
            small,
            1.0 - x * x / 6.0,
            2.0 * x * np.exp(-x) / one_minus_exp_neg(np.where(small, 1.0, 2.0 * x)),
        )
    return out if out.ndim else float(out)


def gaussian_bracket(k, params: ChannelParams) -> BracketTerms:
    """The three-term Gaussian bracket shared by the strength and variance integrands.

    t1 = e^{-2 (k+u)^2 / delta^2}
    t2 = 2 cos(2u) e^{-pi k} e^{-(k+u)^2/delta^2} e^{-(k-u)^2/delta^2}
    t3 = e^{-2 pi k} e^{-2 (k-u)^2 / delta^2}

    At k = 0 the sum collapses to 4 e^{-2 u^2/delta^2} cos^2(u), which is the
    suppression-point structure: it vanishes at u = (n + 1/2) pi.
    """
    k = np.asarray(k, dtype=float)
    u, d = params.u, params.delta
    gp = np.exp(-((k + u) ** 2) / d**2)  # half-power Gaussian, + offset
    gm = np.exp(-((k - u) ** 2) / d**2)
    t1 = gp * gp
    t2 = 2.0 * np.cos(2.0 * u) * np.exp(-np.pi * k) * gp * gm
    t3 = np.exp(-TWO_PI * k) * gm * gm
    total = t1 + t2 + t3
    if k.ndim:
        return BracketTerms(t1=t1, t2=t2, t3=t3, total=total)
    return BracketTerms(t1=float(t1), t2=float(t2), t3=float(t3), total=float(total))

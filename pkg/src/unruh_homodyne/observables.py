"""Communication observables of the accelerated receiver.

All quantities are normalized by the local-oscillator amplitude: i_norm is
I / beta^2, v_bar is V / I, and the SNR gain i_norm / v_bar equals
I^2 / (beta^2 V). The strength and variance integrals share one bracket
evaluation per abscissa (fused integrand), so the conditional-variance
identity v_c = v_bar - i_norm holds to quadrature error only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel_math import (
    ChannelParams,
    gaussian_bracket,
    thermal_weight_signal,
    thermal_weight_variance,
)
from .errors import DegenerateChannelError, DomainError
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    integrate_lower_edge,
    truncation_limit,
)

K_CUT_FLOOR = 1e-8
DEGENERATE_I_NORM = 1e-30
TAIL_TOL = 1e-16


@dataclass(frozen=True)
class DetectorConfig:
    """Low-frequency cutoff of the receiver plus quadrature settings."""

    k_cut: float
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not self.k_cut >= K_CUT_FLOOR:
            raise DomainError(f"k_cut must be >= {K_CUT_FLOOR}, got {self.k_cut}")


@dataclass(frozen=True)
class Observables:
    """Bundle of channel observables with propagated quadrature errors."""

    i_norm: float
    x_bar: float
    v_bar: float
    snr_gain: float
    v_c: float
    i_err: float
    v_err: float


def _channel_integrals(params: ChannelParams, det: DetectorConfig) -> QuadratureResult:
    """Fused integrals [int W_s * bracket, int W_v * bracket] over [k_cut, K_max]."""
    k_max = truncation_limit(params, TAIL_TOL)
    if not det.k_cut < k_max:
        raise DomainError(f"k_cut={det.k_cut} is beyond the truncation limit {k_max}")

    def integrand(k):
        br = gaussian_bracket(k, params).total
        return np.stack([thermal_weight_signal(k) * br,
                         thermal_weight_variance(k) * br], axis=-1)

    return integrate_lower_edge(integrand, det.k_cut, det.quad, k_max)


def lo_strength(params: ChannelParams, det: DetectorConfig) -> tuple[float, float]:
    """Normalized local-oscillator strength I / beta^2 and its error estimate."""
    res = _channel_integrals(params, det)
    pref = math.sqrt(2.0 / math.pi) / params.delta
    return pref * res.value[0], pref * res.error_estimate[0]


def variance_norm(params: ChannelParams, det: DetectorConfig) -> tuple[float, float]:
    """Normalized variance V / I and its error estimate."""
    obs = compute_observables(params, det)
    return obs.v_bar, obs.v_err


def signal_expectation(params: ChannelParams, i_norm: float) -> float:
    """Mean output quadrature sqrt(i_norm) * (alpha e^{i phi} + c.c.)."""
    if i_norm < 0:
        raise DomainError(f"i_norm must be non-negative, got {i_norm}")
    return math.sqrt(i_norm) * 2.0 * (params.alpha * np.exp(1j * params.phi)).real


def snr_gain(params: ChannelParams, det: DetectorConfig) -> float:
    """SNR_out / SNR_in = i_norm / v_bar; independent of alpha, beta, phi."""
    return compute_observables(params, det).snr_gain


def conditional_variance(params: ChannelParams, det: DetectorConfig) -> float:
    """Input-output conditional variance (1 - snr_gain) * v_bar = v_bar - i_norm."""
    return compute_observables(params, det).v_c


def compute_observables(params: ChannelParams, det: DetectorConfig) -> Observables:
    """Evaluate every observable from one fused pair of integrals."""
    res = _channel_integrals(params, det)
    s_i, s_v = res.value
    e_i, e_v = res.error_estimate
    pref = math.sqrt(2.0 / math.pi) / params.delta
    i_norm = pref * s_i
    i_err = pref * e_i
    if i_norm < DEGENERATE_I_NORM:
        raise DegenerateChannelError(
            f"local-oscillator strength underflowed (i_norm={i_norm:.3e}); "
            "the packet is entirely behind the horizon for these parameters")
    v_bar = s_v / s_i
    v_err = v_bar * (e_i / s_i + e_v / s_v)
    gain = i_norm / v_bar
    return Observables(
        i_norm=i_norm,
        x_bar=signal_expectation(params, i_norm),
        v_bar=v_bar,
        snr_gain=gain,
        v_c=v_bar - i_norm,
        i_err=i_err,
        v_err=v_err,
    )


def conditional_variance_literal(params: ChannelParams, det: DetectorConfig) -> float:
    """Cross-check form (1 - I^2/(beta^2 V)) * v_bar of the conditional variance."""
    obs = compute_observables(params, det)
    return (1.0 - obs.snr_gain) * obs.v_bar


def asymptotic_lo_strength(u: float) -> float:
    """Far-from-horizon closed form I / beta^2 = 1 / (1 - e^{-2 pi |u|}).

    Valid only before the horizon (u < 0) with the packet fully accessible.
    """
    if not u < 0:
        raise DomainError(f"closed form requires u < 0, got u={u}")
    return 1.0 / -math.expm1(-2.0 * math.pi * abs(u))


def asymptotic_variance(u: float) -> float:
    """Far-from-horizon closed form V/I = (1 + e^{-2 pi |u|}) / (1 - e^{-2 pi |u|})."""
    if not u < 0:
        raise DomainError(f"closed form requires u < 0, got u={u}")
    e = math.exp(-2.0 * math.pi * abs(u))
    return (1.0 + e) / -math.expm1(-2.0 * math.pi * abs(u))

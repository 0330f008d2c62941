"""Brute-force validation paths that never touch the reduced integrands.

Two independent routes to the local-oscillator strength and variance:

* the "triple" route keeps the un-collapsed double integral over the sender
  wave numbers (k_s, k_s'), using the large-carrier product approximation of
  the mode-mixing coefficients. The double integral factorizes into
  |M|^2-type products of a single complex envelope integral, which this
  implementation exploits; the k_s integrals are done by composite Simpson
  on a truncated Gaussian window and the receiver-frequency integral by
  composite Simpson on a log-spaced grid.

* the "exact" route evaluates the mode-mixing coefficients with the true
  oscillatory factor k_s^{i k} (no phase approximation anywhere); only the
  magnitude |Gamma(1 - i k)|^2 = pi k / sinh(pi k) of the common gamma factor
  enters, since its phase cancels in the modulus squared.

Both carry the explicit carrier wave number k_so and bandwidth
sigma = k_so / delta that the reduced formulas eliminated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel_math import (
    ChannelParams,
    thermal_weight_signal,
    thermal_weight_variance,
)
from .errors import DomainError, ResolutionError
from .observables import DetectorConfig
from .quadrature import truncation_limit

_RICHARDSON_RTOL = 2e-5


@dataclass(frozen=True)
class OracleConfig:
    """Grid settings for the brute-force routes.

    k_so:   carrier wave number in units of the acceleration scale.
    grid_s: abscissa count for the sender-frequency integrals (odd, >= 3).
    grid_d: abscissa count for the receiver-frequency integral (odd, >= 3).
    window: Gaussian support half-width in units of sigma.
    """

    k_so: float = 200.0
    grid_s: int = 4001
    grid_d: int = 2001
    window: float = 8.0

    def __post_init__(self):
        if not self.k_so > 0:
            raise DomainError(f"k_so must be positive, got {self.k_so}")
        for name, n in (("grid_s", self.grid_s), ("grid_d", self.grid_d)):
            if n < 3 or n % 2 == 0:
                raise DomainError(f"{name} must be odd and >= 3, got {n}")
        if not self.window > 0:
            raise DomainError(f"window must be positive, got {self.window}")


def _simpson_weights(n, h):
    w = np.full(n, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (h / 3.0)


def _sender_grid(params, cfg):
    """Truncated Gaussian envelope support, clamped to positive wave numbers."""
    sigma = cfg.k_so / params.delta
    lo = max(cfg.k_so - cfg.window * sigma, 1e-12 * cfg.k_so)
    hi = cfg.k_so + cfg.window * sigma
    ks = np.linspace(lo, hi, cfg.grid_s)
    w = _simpson_weights(cfg.grid_s, ks[1] - ks[0])
    envelope = (1.0 / (2.0 * np.pi * sigma**2)) ** 0.25 * np.exp(
        -((ks - cfg.k_so) ** 2) / (4.0 * sigma**2))
    return ks, w, envelope


def _receiver_grid(k_cut, k_max, n):
    """Log-spaced Simpson grid on [k_cut, k_max]: uniform in s = ln k."""
    s = np.linspace(math.log(k_cut), math.log(k_max), n)
    k = np.exp(s)
    w = _simpson_weights(n, s[1] - s[0]) * k  # Jacobian dk = k ds
    return k, w


def _halve(n):
    return (n - 1) // 2 + 1


def _coarse(cfg):
    return OracleConfig(k_so=cfg.k_so, grid_s=_halve(cfg.grid_s),
                        grid_d=_halve(cfg.grid_d), window=cfg.window)


def _triple_pair(params, det, cfg, _check=True):
    """Common core of the triple route: returns (I/beta^2, V/beta^2).

    Integrand in the receiver frequency k:
        weight(k) / (2 pi k_so)
        * { |M+|^2 + 2 e^{-pi k} Re(M+ conj(M-)) + e^{-2 pi k} |M-|^2 }
    with M±(k) = int dk_s g(k_s) exp(i k_s [k/k_so ± (t - x)]) the complex
    envelope moments, t - x = u / k_so, and the signal/anticommutator thermal
    weight for I and V respectively. Both moments come from one phase matrix,
    and both integrals reuse one brace evaluation.
    """
    ks, w, env = _sender_grid(params, cfg)
    t_minus_x = params.u / cfg.k_so
    kd, wd = _receiver_grid(det.k_cut, truncation_limit(params, 1e-16), cfg.grid_d)

    gw_p = w * env * np.exp(1j * ks * t_minus_x)
    gw_m = np.conj(gw_p)
    total_i = 0.0
    total_v = 0.0
    for sl in _chunks(cfg.grid_d, 256):
        phase = np.exp(1j * np.outer(kd[sl] / cfg.k_so, ks))
        mp = phase @ gw_p
        mm = phase @ gw_m
        kb = kd[sl]
        brace = (np.abs(mp) ** 2
                 + 2.0 * np.exp(-np.pi * kb) * (mp * np.conj(mm)).real
                 + np.exp(-2.0 * np.pi * kb) * np.abs(mm) ** 2)
        base = wd[sl] * brace / (2.0 * np.pi * cfg.k_so)
        total_i += float(base @ thermal_weight_signal(kb))
        total_v += float(base @ thermal_weight_variance(kb))

    if _check:
        ci, cv = _triple_pair(params, det, _coarse(cfg), _check=False)
        for fine, coarse in ((total_i, ci), (total_v, cv)):
            if abs(fine - coarse) > _RICHARDSON_RTOL * max(abs(fine), 1e-300):
                raise ResolutionError(
                    f"oracle grid too coarse: fine={fine!r}, halved={coarse!r}")
    return total_i, total_v


def _chunks(n, size):
    for start in range(0, n, size):
        yield slice(start, min(start + size, n))


def strength_and_variance_triple(params: ChannelParams, det: DetectorConfig,
                                 cfg: OracleConfig | None = None
                                 ) -> tuple[float, float]:
    """(I / beta^2, V / beta^2) by the un-collapsed product route, one pass."""
    cfg = cfg or OracleConfig()
    return _triple_pair(params, det, cfg)


def lo_strength_triple(params: ChannelParams, det: DetectorConfig,
                       cfg: OracleConfig | None = None) -> float:
    """I / beta^2 by the un-collapsed product route."""
    return strength_and_variance_triple(params, det, cfg)[0]


def variance_triple(params: ChannelParams, det: DetectorConfig,
                    cfg: OracleConfig | None = None) -> float:
    """V / beta^2 by the un-collapsed product route (anticommutator weight)."""
    return strength_and_variance_triple(params, det, cfg)[1]


def _exact_integral(params, det, cfg, _check=True):
    ks, w, env = _sender_grid(params, cfg)
    t_minus_x = params.u / cfg.k_so
    kd, wd = _receiver_grid(det.k_cut, truncation_limit(params, 1e-16), cfg.grid_d)

    log_ks = np.log(ks)
    base_p = w * env / np.sqrt(ks) * np.exp(1j * ks * t_minus_x)
    base_m = w * env / np.sqrt(ks) * np.exp(-1j * ks * t_minus_x)

    total = 0.0
    for sl in _chunks(cfg.grid_d, 256):
        osc = np.exp(1j * np.outer(kd[sl], log_ks))   # k_s^{i k}
        bp = osc @ base_p
        bm = osc @ base_m
        kb = kd[sl]
        # |Gamma|^2/(4 pi^2 k) * |e^{pi k/2} B+ + e^{-pi k/2} B-|^2, with the
        # growing exponential folded into the thermal weight to avoid overflow.
        g = np.abs(bp + np.exp(-np.pi * kb) * bm) ** 2
        integrand = thermal_weight_signal(kb) / (2.0 * np.pi) * g
        total += float(wd[sl] @ integrand)

    if _check:
        coarse = _exact_integral(params, det, _coarse(cfg), _check=False)
        if abs(total - coarse) > _RICHARDSON_RTOL * max(abs(total), 1e-300):
            raise ResolutionError(
                f"oracle grid too coarse: fine={total!r}, halved={coarse!r}")
    return total


def lo_strength_exact(params: ChannelParams, det: DetectorConfig,
                      cfg: OracleConfig | None = None) -> float:
    """I / beta^2 with the exact oscillatory factor k_s^{i k}.

    Requires a carrier at least 10x the sharpness (k_so >= 10 delta) so the
    truncated envelope support stays well inside k_s > 0.
    """
    cfg = cfg or OracleConfig()
    if not cfg.k_so >= 10.0 * params.delta:
        raise DomainError(
            f"exact route needs k_so >= 10*delta, got k_so={cfg.k_so}, "
            f"delta={params.delta}")
    return _exact_integral(params, det, cfg)

"""Cutoff scans and derivative-free optimization of channel metrics.

The optimum is located by a coarse log-spaced scan that brackets the extremum
followed by golden-section shrinkage. No derivatives: the quadrature noise
floor of the metrics makes finite differences unreliable below an interval
tolerance of about 1e-3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel_math import ChannelParams
from .errors import ChannelError, OptimizationError, UsageError
from .observables import DetectorConfig, compute_observables
from .quadrature import QuadratureConfig

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

METRICS = ("snr_gain", "conditional_variance", "i_norm", "v_bar")
_MINIMIZE = {"conditional_variance"}

DEFAULT_SEARCH_LO = 0.01
DEFAULT_SEARCH_HI = 1.0


@dataclass(frozen=True)
class MetricCurve:
    """Sampled metric-vs-cutoff curve; failed points carry nan and a note."""

    points: tuple  # of (k_cut, metric, error_estimate)
    params: ChannelParams
    metric_name: str
    notes: tuple = ()


@dataclass(frozen=True)
class OptimizeResult:
    k_opt: float
    metric_at_opt: float
    bracket_lo: float
    bracket_hi: float
    scan: MetricCurve
    converged: bool
    note: str = ""


def _metric_value(params, metric, k_cut, quad):
    obs = compute_observables(params, DetectorConfig(k_cut=k_cut, quad=quad))
    err = {"snr_gain": obs.snr_gain * (obs.i_err / obs.i_norm + obs.v_err / obs.v_bar),
           "conditional_variance": obs.v_err + obs.i_err,
           "i_norm": obs.i_err,
           "v_bar": obs.v_err}[metric]
    return getattr(obs, {"snr_gain": "snr_gain",
                         "conditional_variance": "v_c",
                         "i_norm": "i_norm",
                         "v_bar": "v_bar"}[metric]), err


def scan_metric(params: ChannelParams, metric: str, grid,
                quad: QuadratureConfig | None = None) -> MetricCurve:
    """Evaluate a metric on a strictly increasing cutoff grid.

    Failed points are recorded as nan with an explanatory note instead of
    aborting the scan.
    """
    if metric not in METRICS:
        raise UsageError(f"unknown metric {metric!r}; choose from {METRICS}")
    grid = [float(k) for k in grid]
    if not grid:
        raise UsageError("empty cutoff grid")
    if any(b <= a for a, b in zip(grid, grid[1:])) or min(grid) < 1e-8:
        raise UsageError("grid must be strictly increasing with all points >= 1e-8")
    quad = quad or QuadratureConfig()
    points, notes = [], []
    for k in grid:
        try:
            m, e = _metric_value(params, metric, k, quad)
            points.append((k, m, e))
            notes.append("")
        except ChannelError as exc:
            points.append((k, math.nan, math.nan))
            notes.append(str(exc))
    return MetricCurve(points=tuple(points), params=params,
                       metric_name=metric, notes=tuple(notes))


def _golden_section(fun, lo, hi, x_tol, maximize):
    sign = -1.0 if maximize else 1.0
    c = hi - (hi - lo) * _INVPHI
    d = lo + (hi - lo) * _INVPHI
    fc, fd = sign * fun(c), sign * fun(d)
    while hi - lo > x_tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) * _INVPHI
            fc = sign * fun(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) * _INVPHI
            fd = sign * fun(d)
    return lo, hi


def find_optimal_cutoff(params: ChannelParams, metric: str,
                        search_lo: float = DEFAULT_SEARCH_LO,
                        search_hi: float = DEFAULT_SEARCH_HI,
                        x_tol: float = 1e-4,
                        scan_points: int = 40,
                        quad: QuadratureConfig | None = None) -> OptimizeResult:
    """Locate the cutoff extremizing a metric (max for snr_gain, min for v_c).

    A 40-point log-spaced scan brackets the extremum; golden-section shrinkage
    then refines the interval to x_tol. A scan that is monotone or flat within
    evaluation error returns a boundary/midpoint with converged = False.
    """
    if metric not in ("snr_gain", "conditional_variance"):
        raise UsageError(f"metric {metric!r} is not optimizable; use snr_gain or "
                         "conditional_variance")
    if not (1e-8 <= search_lo < search_hi):
        raise UsageError(f"invalid search interval [{search_lo}, {search_hi}]")
    if not x_tol > 0:
        raise UsageError(f"x_tol must be positive, got {x_tol}")
    quad = quad or QuadratureConfig()
    maximize = metric not in _MINIMIZE

    grid = np.geomspace(search_lo, search_hi, scan_points)
    scan = scan_metric(params, metric, grid, quad=quad)
    vals = np.array([p[1] for p in scan.points])
    errs = np.array([p[2] for p in scan.points])
    ok = np.isfinite(vals)
    if ok.sum() <= 0.5 * len(vals):
        raise OptimizationError(
            f"{int((~ok).sum())}/{len(vals)} scan points failed for metric {metric}")

    noise = 10.0 * np.nanmax(np.where(ok, errs, 0.0)) + 1e-12 * np.nanmax(np.abs(vals))
    if np.nanmax(vals) - np.nanmin(vals) <= noise:
        mid = math.sqrt(search_lo * search_hi)
        m, e = _metric_value(params, metric, mid, quad)
        return OptimizeResult(k_opt=mid, metric_at_opt=m,
                              bracket_lo=search_lo, bracket_hi=search_hi,
                              scan=scan, converged=False,
                              note="flat metric: variation within evaluation error")

    masked = np.where(ok, vals, -np.inf if maximize else np.inf)
    best = int(np.argmax(masked) if maximize else np.argmin(masked))
    if best == 0 or best == len(grid) - 1:
        return OptimizeResult(k_opt=float(grid[best]), metric_at_opt=float(vals[best]),
                              bracket_lo=search_lo, bracket_hi=search_hi,
                              scan=scan, converged=False,
                              note="extremum at search boundary: scan is monotone")

    lo, hi = float(grid[best - 1]), float(grid[best + 1])
    fun = lambda k: _metric_value(params, metric, k, quad)[0]
    lo, hi = _golden_section(fun, lo, hi, x_tol, maximize)
    k_opt = 0.5 * (lo + hi)
    m_opt, m_err = _metric_value(params, metric, k_opt, quad)
    note = ""
    edge_vals = sorted(abs(fun(x) - m_opt) for x in (lo, hi))
    if edge_vals[-1] <= 10.0 * max(m_err, 1e-300):
        note = "plateau: metric variation below 10x evaluation error over final interval"
    return OptimizeResult(k_opt=k_opt, metric_at_opt=m_opt,
                          bracket_lo=lo, bracket_hi=hi,
                          scan=scan, converged=True, note=note)

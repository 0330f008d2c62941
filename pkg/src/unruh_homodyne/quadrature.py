"""Adaptive integration over the semi-infinite dimensionless frequency domain.

The integrands of interest grow like 1/k and 1/k^2 toward the low-frequency
cutoff, so the panel list starts with a block of log-spaced panels hugging the
lower limit; the rest of the domain is handled by globally adaptive bisection
with an embedded Gauss(7)/Kronrod(15) error estimate per panel. The upper
limit is a hard truncation chosen so that every bracket term and thermal
weight beyond it is negligible.

Integrands are vectorized callables: f(k: ndarray of shape (n,)) may return
shape (n,) or (n, m); in the latter case all m components are integrated
simultaneously against a shared refinement (one bracket evaluation serves
both the strength and variance integrals downstream).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .channel_math import ChannelParams, gaussian_bracket, thermal_weight_variance
from .errors import ConvergenceError, DomainError, EvaluationError

# Gauss(7)/Kronrod(15) nodes and weights on [-1, 1] (QUADPACK values).
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759,
    0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529,
])
# Gauss-7 weights aligned with the odd Kronrod indices 1, 3, 5, 7, ...
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])
_G_IDX = np.arange(1, 15, 2)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    edge_panels: int = 40

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_subdivisions < 1 or self.edge_panels < 0:
            raise DomainError("invalid panel budget")


@dataclass(frozen=True)
class QuadratureResult:
    value: float | np.ndarray
    error_estimate: float | np.ndarray
    evaluations: int
    truncation_k: float


def truncation_limit(params: ChannelParams, tail_tol: float,
                     c: float = 8.0, k_floor: float = 10.0) -> float:
    """Upper integration limit beyond which the integrand is below tail_tol.

    K_max = max(|u| + c*delta, k_floor) covers c Gaussian widths past the
    bracket peaks; with the defaults the bracket is < 1e-55 there and
    e^{-2 pi k_floor} < 1e-27, so the loop below essentially never runs.
    """
    if not tail_tol > 0:
        raise DomainError(f"tail_tol must be positive, got {tail_tol}")
    k_max = max(abs(params.u) + c * params.delta, k_floor)
    while (gaussian_bracket(k_max, params).total
           * thermal_weight_variance(k_max)) >= tail_tol:
        k_max += params.delta
    return k_max


def _panel(f, lo, hi):
    """Evaluate one Gauss/Kronrod panel; returns (value, per-component error, fx count)."""
    half = 0.5 * (hi - lo)
    x = 0.5 * (lo + hi) + half * _XK
    fx = np.atleast_1d(np.asarray(f(x), dtype=float))
    if fx.ndim == 1:
        fx = fx[:, None]
    if not np.all(np.isfinite(fx)):
        bad = x[~np.all(np.isfinite(fx), axis=1)][0]
        raise EvaluationError(f"non-finite integrand sample at k={bad!r}", abscissa=bad)
    vk = half * (_WK @ fx)
    vg = half * (_WG @ fx[_G_IDX])
    return vk, np.abs(vk - vg), x.size


def integrate_lower_edge(f, k_cut: float, config: QuadratureConfig,
                         k_max: float) -> QuadratureResult:
    """Integrate f over [k_cut, k_max] with edge refinement near k_cut.

    The first config.edge_panels panels are log-spaced on
    [k_cut, min(10 k_cut, k_max)]; the remainder is split adaptively,
    always bisecting the panel with the largest error estimate, until
    sum(err) <= max(abs_tol, rel_tol * |value|) per component.

    Raises ConvergenceError (carrying the best result) when the budget runs
    out, and EvaluationError on a non-finite integrand sample.
    """
    if not k_cut > 0:
        raise DomainError(f"lower limit must be positive, got {k_cut}")
    if not k_max > k_cut:
        raise DomainError(f"need k_max > k_cut, got [{k_cut}, {k_max}]")

    edge_hi = min(10.0 * k_cut, k_max)
    breaks = [k_cut]
    if config.edge_panels > 0 and edge_hi > k_cut:
        breaks = list(np.geomspace(k_cut, edge_hi, config.edge_panels + 1))
    if breaks[-1] < k_max:
        breaks.append(k_max)

    heap = []  # (-max_err, tiebreak, lo, hi, value, err)
    counter = 0
    evals = 0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        v, e, n = _panel(f, lo, hi)
        heap.append((-float(e.max()), counter, lo, hi, v, e))
        counter += 1
        evals += n
    heapq.heapify(heap)
    value = sum(item[4] for item in heap)
    error = sum(item[5] for item in heap)

    subdivisions = 0
    while True:
        bound = np.maximum(config.abs_tol, config.rel_tol * np.abs(value))
        if np.all(error <= bound):
            break
        if subdivisions >= config.max_subdivisions:
            best = _squeeze(QuadratureResult(value, error, evals, k_max))
            raise ConvergenceError(
                f"tolerance not met after {subdivisions} subdivisions "
                f"(error={np.max(error):.3e})", result=best)
        _, _, lo, hi, v0, e0 = heapq.heappop(heap)
        value = value - v0
        error = error - e0
        mid = 0.5 * (lo + hi)
        for a, b in ((lo, mid), (mid, hi)):
            v, e, n = _panel(f, a, b)
            heapq.heappush(heap, (-float(e.max()), counter, a, b, v, e))
            counter += 1
            evals += n
            value = value + v
            error = error + e
        subdivisions += 1

    return _squeeze(QuadratureResult(value, error, evals, k_max))


def _squeeze(res: QuadratureResult) -> QuadratureResult:
    v, e = res.value, res.error_estimate
    if np.ndim(v) and np.size(v) == 1:
        return QuadratureResult(float(v[0]), float(e[0]), res.evaluations,
                                res.truncation_k)
    return res

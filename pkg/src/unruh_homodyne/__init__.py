"""Observables of coherent-state homodyne communication across a Rindler horizon.

The receiver's thermal channel is reduced to one-dimensional integrals over the
dimensionless Rindler frequency; this package evaluates them adaptively,
optimizes the detector's low-frequency cutoff, and cross-checks everything
against brute-force oracles that skip the reduction.
"""

from .channel_math import (
    BracketTerms,
    ChannelParams,
    gamma_sq_magnitude,
    gaussian_bracket,
    mean_occupation,
    thermal_weight_signal,
    thermal_weight_variance,
)
from .errors import (
    ChannelError,
    ConvergenceError,
    DegenerateChannelError,
    DomainError,
    EvaluationError,
    OptimizationError,
    RangeOverflowError,
    ResolutionError,
    SchemaError,
    UsageError,
)
from .kinematics import MinkowskiPoint, RindlerPoint, null_offset, rindler_to_minkowski
from .observables import (
    DetectorConfig,
    Observables,
    asymptotic_lo_strength,
    asymptotic_variance,
    compute_observables,
    conditional_variance,
    lo_strength,
    signal_expectation,
    snr_gain,
    variance_norm,
)
from .optimizer import MetricCurve, OptimizeResult, find_optimal_cutoff, scan_metric
from .oracle import (
    OracleConfig,
    lo_strength_exact,
    lo_strength_triple,
    strength_and_variance_triple,
    variance_triple,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    integrate_lower_edge,
    truncation_limit,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

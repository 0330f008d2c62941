import math

import numpy as np
import pytest

from unruh_homodyne import (
    ChannelParams,
    UsageError,
    find_optimal_cutoff,
    scan_metric,
)

DELTA10 = ChannelParams(u=math.pi, delta=10.0)


class TestScanMetric:
    def test_far_from_horizon_flat_at_unity(self):
        curve = scan_metric(ChannelParams(u=-100, delta=10), "snr_gain",
                            [0.05, 0.1, 0.2])
        for _, value, _ in curve.points:
            assert value == pytest.approx(1.0, abs=2e-3)

    def test_peak_offset_unimodal_with_peak_in_unruh_band(self):
        grid = np.geomspace(0.01, 1.0, 50)
        curve = scan_metric(DELTA10, "snr_gain", grid)
        vals = np.array([p[1] for p in curve.points])
        peak = int(np.argmax(vals))
        assert 0.1 <= grid[peak] <= 0.2
        assert np.all(np.diff(vals[: peak + 1]) > 0)
        assert np.all(np.diff(vals[peak:]) < 0)

    def test_strength_strictly_decreasing_in_cutoff(self):
        curve = scan_metric(ChannelParams(u=0, delta=10), "i_norm",
                            [1e-5, 1e-3, 0.1])
        vals = [p[1] for p in curve.points]
        assert vals[0] > vals[1] > vals[2]

    def test_failed_points_recorded_not_fatal(self):
        # u >> delta puts the packet behind the horizon: degenerate channel
        curve = scan_metric(ChannelParams(u=100.0, delta=10), "v_bar", [0.3, 0.5])
        assert all(math.isnan(p[1]) for p in curve.points)
        assert all(note for note in curve.notes)

    def test_empty_grid_rejected(self):
        with pytest.raises(UsageError):
            scan_metric(DELTA10, "snr_gain", [])

    def test_non_increasing_grid_rejected(self):
        with pytest.raises(UsageError):
            scan_metric(DELTA10, "snr_gain", [0.1, 0.1, 0.2])

    def test_unknown_metric_rejected(self):
        with pytest.raises(UsageError):
            scan_metric(DELTA10, "banana", [0.1, 0.2])


class TestFindOptimalCutoff:
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_snr_optimum_near_unruh_frequency(self, n):
        params = ChannelParams(u=n * math.pi, delta=10.0)
        res = find_optimal_cutoff(params, "snr_gain", 0.01, 1.0, x_tol=1e-3)
        assert res.converged
        assert 0.1 <= res.k_opt <= 0.2
        # close to the Unruh frequency 1/(2 pi)
        ratio = res.k_opt * 2 * math.pi
        assert 0.7 <= ratio <= 1.4

    def test_refinement_consistency_with_scan_neighbors(self):
        res = find_optimal_cutoff(DELTA10, "snr_gain", 0.01, 1.0, x_tol=1e-3)
        ks = np.array([p[0] for p in res.scan.points])
        vals = np.array([p[1] for p in res.scan.points])
        errs = np.array([p[2] for p in res.scan.points])
        i = int(np.argmin(np.abs(ks - res.k_opt)))
        slack = 10 * errs.max() + 1e-10
        for j in (max(i - 1, 0), min(i + 1, len(ks) - 1)):
            assert res.metric_at_opt >= vals[j] - slack

    def test_interval_respects_x_tol(self):
        res = find_optimal_cutoff(DELTA10, "snr_gain", 0.01, 1.0, x_tol=1e-3)
        assert res.bracket_lo < res.k_opt < res.bracket_hi
        assert res.bracket_hi - res.bracket_lo <= 1e-3 * (1 + 1e-12)

    def test_conditional_variance_minimum_location(self):
        res = find_optimal_cutoff(ChannelParams(u=0.0, delta=10.0),
                                  "conditional_variance", 0.01, 1.0, x_tol=1e-3)
        assert res.converged
        assert 0.1 <= res.k_opt <= 0.4

    def test_flat_metric_far_from_horizon(self):
        res = find_optimal_cutoff(ChannelParams(u=-100, delta=10), "snr_gain",
                                  0.01, 1.0, x_tol=1e-3)
        assert not res.converged
        assert "flat" in res.note or "monotone" in res.note

    def test_determinism(self):
        a = find_optimal_cutoff(DELTA10, "snr_gain", 0.01, 1.0, x_tol=1e-3)
        b = find_optimal_cutoff(DELTA10, "snr_gain", 0.01, 1.0, x_tol=1e-3)
        assert a == b

    def test_alpha_rescaling_leaves_optimum_unchanged(self):
        p1 = ChannelParams(u=math.pi, delta=10.0, alpha=1.0)
        p2 = ChannelParams(u=math.pi, delta=10.0, alpha=5.0 - 2.0j)
        r1 = find_optimal_cutoff(p1, "snr_gain", 0.01, 1.0, x_tol=1e-3)
        r2 = find_optimal_cutoff(p2, "snr_gain", 0.01, 1.0, x_tol=1e-3)
        assert r1.k_opt == r2.k_opt

    def test_non_optimizable_metric_rejected(self):
        with pytest.raises(UsageError):
            find_optimal_cutoff(DELTA10, "i_norm", 0.01, 1.0, x_tol=1e-3)

    def test_bad_interval_rejected(self):
        with pytest.raises(UsageError):
            find_optimal_cutoff(DELTA10, "snr_gain", 0.5, 0.1, x_tol=1e-3)
        with pytest.raises(UsageError):
            find_optimal_cutoff(DELTA10, "snr_gain", 0.01, 1.0, x_tol=0.0)

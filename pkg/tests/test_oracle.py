import math

import pytest

from unruh_homodyne import (
    ChannelParams,
    DetectorConfig,
    DomainError,
    OracleConfig,
    ResolutionError,
    compute_observables,
    lo_strength_exact,
    lo_strength_triple,
    strength_and_variance_triple,
    variance_triple,
)

FAST = OracleConfig(grid_s=2001, grid_d=1001)


def reduced(u, k_cut, delta=10.0):
    return compute_observables(ChannelParams(u=u, delta=delta),
                               DetectorConfig(k_cut=k_cut))


class TestTripleRoute:
    def test_far_from_horizon_strength_is_unity(self):
        got = lo_strength_triple(ChannelParams(u=-100, delta=10),
                                 DetectorConfig(k_cut=0.1), FAST)
        assert got == pytest.approx(1.0, abs=1e-3)

    def test_far_from_horizon_variance_is_unity(self):
        p = ChannelParams(u=-100, delta=10)
        d = DetectorConfig(k_cut=0.1)
        v = variance_triple(p, d, FAST)
        o = reduced(-100, 0.1)
        assert v == pytest.approx(o.v_bar * o.i_norm, abs=2e-3)

    @pytest.mark.parametrize("u,k_cut", [
        (math.pi / 2, 0.01),
        (0.0, 0.1),
        (math.pi, 0.5),
    ])
    def test_matches_reduced_path(self, u, k_cut):
        o = reduced(u, k_cut)
        i_t, v_t = strength_and_variance_triple(
            ChannelParams(u=u, delta=10), DetectorConfig(k_cut=k_cut))
        assert abs(i_t - o.i_norm) / o.i_norm <= 1e-4
        assert abs(v_t / i_t - o.v_bar) / o.v_bar <= 1e-4

    def test_outputs_nonnegative(self):
        i_t, v_t = strength_and_variance_triple(
            ChannelParams(u=2.0, delta=10), DetectorConfig(k_cut=0.05), FAST)
        assert i_t >= 0.0
        assert v_t >= 0.0

    def test_coarse_grid_raises_resolution_error(self):
        with pytest.raises(ResolutionError):
            strength_and_variance_triple(
                ChannelParams(u=0.0, delta=10), DetectorConfig(k_cut=0.01),
                OracleConfig(grid_s=101, grid_d=21))


class TestExactRoute:
    def test_far_from_horizon_strength_is_unity(self):
        got = lo_strength_exact(ChannelParams(u=-100, delta=10),
                                DetectorConfig(k_cut=0.1), FAST)
        assert got == pytest.approx(1.0, abs=1e-3)

    def test_result_nonnegative_by_construction(self):
        got = lo_strength_exact(ChannelParams(u=0.0, delta=10),
                                DetectorConfig(k_cut=0.15), FAST)
        assert isinstance(got, float)
        assert got >= 0.0

    def test_phase_approximation_error_does_not_grow_with_carrier(self):
        # the discarded term of the oscillatory-factor expansion is set by the
        # relative bandwidth 1/delta; at fixed delta the deviation is
        # carrier-independent, so check it never grows beyond grid noise
        p = ChannelParams(u=math.pi, delta=10)
        d = DetectorConfig(k_cut=0.15)
        i_ref = reduced(math.pi, 0.15).i_norm
        devs = [abs(lo_strength_exact(p, d, OracleConfig(k_so=k_so)) - i_ref) / i_ref
                for k_so in (200.0, 500.0, 1000.0)]
        for earlier, later in zip(devs, devs[1:]):
            assert later <= earlier * (1 + 1e-6)

    def test_phase_approximation_error_shrinks_with_bandwidth(self):
        d = DetectorConfig(k_cut=0.15)
        devs = []
        for delta in (10.0, 40.0):
            p = ChannelParams(u=math.pi, delta=delta)
            i_ref = compute_observables(p, d).i_norm
            got = lo_strength_exact(p, d, OracleConfig(k_so=40 * delta))
            devs.append(abs(got - i_ref) / i_ref)
        assert devs[1] < devs[0] / 2

    def test_requires_large_carrier(self):
        with pytest.raises(DomainError):
            lo_strength_exact(ChannelParams(u=0.0, delta=30),
                              DetectorConfig(k_cut=0.1), OracleConfig(k_so=200))


class TestOracleConfig:
    def test_rejects_even_grids(self):
        with pytest.raises(DomainError):
            OracleConfig(grid_s=100)
        with pytest.raises(DomainError):
            OracleConfig(grid_d=2000)

    def test_rejects_tiny_grids(self):
        with pytest.raises(DomainError):
            OracleConfig(grid_s=1)

    def test_rejects_nonpositive_carrier_or_window(self):
        with pytest.raises(DomainError):
            OracleConfig(k_so=0.0)
        with pytest.raises(DomainError):
            OracleConfig(window=-1.0)

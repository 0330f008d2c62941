import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from unruh_homodyne import (
    ChannelParams,
    DegenerateChannelError,
    DetectorConfig,
    DomainError,
    asymptotic_lo_strength,
    asymptotic_variance,
    compute_observables,
    conditional_variance,
    lo_strength,
    signal_expectation,
    snr_gain,
    variance_norm,
)
from unruh_homodyne.observables import conditional_variance_literal


def obs(u, k_cut, delta=10.0):
    return compute_observables(ChannelParams(u=u, delta=delta),
                               DetectorConfig(k_cut=k_cut))


class TestFarFromHorizon:
    def test_lo_strength_is_unity(self):
        i_norm, _ = lo_strength(ChannelParams(u=-100, delta=10),
                                DetectorConfig(k_cut=0.1))
        assert i_norm == pytest.approx(1.0, abs=1e-3)

    def test_variance_is_unity(self):
        v_bar, _ = variance_norm(ChannelParams(u=-100, delta=10),
                                 DetectorConfig(k_cut=0.1))
        assert v_bar == pytest.approx(1.0, abs=1e-3)

    def test_snr_gain_is_unity(self):
        assert snr_gain(ChannelParams(u=-100, delta=10),
                        DetectorConfig(k_cut=0.1)) == pytest.approx(1.0, abs=2e-3)

    def test_identity_channel_adds_no_noise(self):
        assert conditional_variance(
            ChannelParams(u=-100, delta=10),
            DetectorConfig(k_cut=0.1)) == pytest.approx(0.0, abs=2e-3)


class TestSuppressionPoints:
    @pytest.mark.parametrize("u", [math.pi / 2, 3 * math.pi / 2])
    def test_cutoff_insensitive(self, u):
        a = obs(u, 1e-5).i_norm
        b = obs(u, 1e-3).i_norm
        assert abs(a - b) / b < 0.01

    def test_variance_near_one(self):
        assert obs(math.pi / 2, 0.01).v_bar == pytest.approx(1.0, abs=0.1)


class TestPeakPoints:
    @pytest.mark.parametrize("u", [0.0, math.pi, 2 * math.pi])
    def test_lo_strength_grows_as_cutoff_shrinks(self, u):
        # logarithmic growth: strictly increasing but slow
        assert obs(u, 1e-5).i_norm > obs(u, 1e-2).i_norm

    @pytest.mark.parametrize("u", [0.0, math.pi, 2 * math.pi])
    def test_variance_grows_dramatically(self, u):
        # ~1/k_cut growth of the variance integral
        assert obs(u, 1e-5).v_bar > 10 * obs(u, 1e-2).v_bar

    def test_curve_ordering_matches_cutoff_ordering(self):
        # lower cutoff -> larger strength and variance at the packet center
        i = [obs(0.0, k).i_norm for k in (1e-5, 1e-3, 0.1)]
        assert i[0] > i[1] > i[2]
        v = [obs(0.0, k).v_bar for k in (0.01, 0.05, 0.1)]
        assert v[0] > v[1] > v[2]


class TestSignalExpectation:
    def test_zero_amplitude(self):
        p = ChannelParams(u=0, delta=10, alpha=0.0, phi=0.7)
        assert signal_expectation(p, 1.0) == 0.0

    def test_coherent_quadrature_mean(self):
        p = ChannelParams(u=0, delta=10, alpha=1.0, phi=0.0)
        assert signal_expectation(p, 1.0) == pytest.approx(2.0, rel=1e-15)

    def test_orthogonal_quadrature(self):
        p = ChannelParams(u=0, delta=10, alpha=1.0, phi=math.pi / 2)
        assert signal_expectation(p, 1.0) == pytest.approx(0.0, abs=1e-15)

    @given(phi=st.floats(-10, 10), re=st.floats(-3, 3), im=st.floats(-3, 3),
           i_norm=st.floats(0, 10))
    def test_phase_flip_negates(self, phi, re, im, i_norm):
        a = complex(re, im)
        x1 = signal_expectation(ChannelParams(u=0, delta=10, alpha=a, phi=phi), i_norm)
        x2 = signal_expectation(
            ChannelParams(u=0, delta=10, alpha=a, phi=phi + math.pi), i_norm)
        assert x2 == pytest.approx(-x1, rel=1e-9, abs=1e-9)

    @given(phi=st.floats(-5, 5), theta=st.floats(-5, 5), re=st.floats(-3, 3),
           im=st.floats(-3, 3))
    def test_joint_phase_rotation_invariance(self, phi, theta, re, im):
        a = complex(re, im)
        x1 = signal_expectation(ChannelParams(u=0, delta=10, alpha=a, phi=phi), 1.0)
        x2 = signal_expectation(
            ChannelParams(u=0, delta=10, alpha=a * np.exp(1j * theta),
                          phi=phi - theta), 1.0)
        assert x2 == pytest.approx(x1, rel=1e-9, abs=1e-9)

    def test_rejects_negative_strength(self):
        with pytest.raises(DomainError):
            signal_expectation(ChannelParams(u=0, delta=10), -1.0)


class TestSnrAndConditionalVariance:
    def test_snr_argmax_in_unruh_band(self):
        ks = np.geomspace(0.01, 1.0, 50)
        gains = [obs(math.pi, k).snr_gain for k in ks]
        k_peak = ks[int(np.argmax(gains))]
        assert 0.1 <= k_peak <= 0.2

    def test_trough_snr_plateau(self):
        g1 = obs(math.pi / 2, 1e-4).snr_gain
        g2 = obs(math.pi / 2, 1e-3).snr_gain
        assert abs(g1 - g2) / g2 < 0.02

    def test_snr_independent_of_alpha_and_phi(self):
        d = DetectorConfig(k_cut=0.1)
        g1 = snr_gain(ChannelParams(u=1.0, delta=10, alpha=1.0, phi=0.0), d)
        g2 = snr_gain(ChannelParams(u=1.0, delta=10, alpha=3.0 - 1.0j, phi=1.2), d)
        assert g1 == g2

    @pytest.mark.parametrize("u,k_cut", [(0.0, 0.1), (math.pi, 0.05), (-2.0, 0.3)])
    def test_conditional_variance_identity(self, u, k_cut):
        o = obs(u, k_cut)
        assert o.v_c == pytest.approx(o.v_bar - o.i_norm, abs=o.i_err + o.v_err + 1e-13)
        literal = conditional_variance_literal(ChannelParams(u=u, delta=10),
                                               DetectorConfig(k_cut=k_cut))
        assert literal == pytest.approx(o.v_c, rel=1e-12, abs=1e-12)

    def test_degenerate_channel_raises(self):
        with pytest.raises(DegenerateChannelError):
            variance_norm(ChannelParams(u=100.0, delta=10),
                          DetectorConfig(k_cut=0.5))


class TestAsymptotics:
    def test_far_value_is_unity(self):
        assert asymptotic_lo_strength(-100.0) == pytest.approx(1.0, abs=1e-12)
        assert asymptotic_variance(-100.0) == pytest.approx(1.0, abs=1e-12)

    def test_half_offset_values(self):
        e = math.exp(-math.pi)
        assert asymptotic_lo_strength(-0.5) == pytest.approx(1 / (1 - e), rel=1e-14)
        assert asymptotic_variance(-0.5) == pytest.approx((1 + e) / (1 - e), rel=1e-14)

    @pytest.mark.parametrize("u", [-20.0, -30.0])
    def test_numeric_matches_closed_form(self, u):
        # k_cut = 1e-2 keeps the cutoff-dependent 1/k^2 tail of the variance
        # below tolerance; the closed forms are the cutoff-independent limits
        o = obs(u, 1e-2)
        assert o.i_norm == pytest.approx(asymptotic_lo_strength(u), rel=1e-3)
        assert o.v_bar == pytest.approx(asymptotic_variance(u), rel=1e-3)

    @pytest.mark.parametrize("u", [0.0, 1.0])
    def test_rejects_post_horizon_offset(self, u):
        with pytest.raises(DomainError):
            asymptotic_lo_strength(u)
        with pytest.raises(DomainError):
            asymptotic_variance(u)


@settings(max_examples=40, deadline=None)
@given(
    offset_frac=st.floats(-3, 1),
    delta=st.floats(1, 50),
    k_lo=st.floats(1e-5, 0.05),
    factor=st.floats(1.5, 20),
)
def test_strength_nonincreasing_in_cutoff(offset_frac, delta, k_lo, factor):
    u = offset_frac * delta
    i_lo = obs(u, k_lo, delta).i_norm
    i_hi = obs(u, min(k_lo * factor, 1.0), delta).i_norm
    assert i_hi <= i_lo * (1 + 1e-9)


@settings(max_examples=40, deadline=None)
@given(
    offset_frac=st.floats(-3, 1),
    delta=st.floats(1, 50),
    k_cut=st.floats(1e-5, 0.9),
)
def test_unit_noise_floor_and_gain_bound(offset_frac, delta, k_cut):
    o = obs(offset_frac * delta, k_cut, delta)
    assert o.v_bar >= 1.0 - 1e-6
    assert o.snr_gain <= o.i_norm * (1 + 1e-12)


def test_detector_config_floor():
    with pytest.raises(DomainError):
        DetectorConfig(k_cut=1e-9)

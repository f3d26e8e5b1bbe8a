"""Tests for low-energy phase shifts and threshold-law fits."""

import logging
import math

import numpy as np
import pytest
from scipy import special
from scipy.interpolate import CubicSpline

from hyperadia.analysis import phaseshift
from hyperadia.analysis.asymptotics import coefficient_q, coefficients_log
from hyperadia.analysis.phaseshift import (
    ScaledPotential,
    channel_phase_shift,
    fit_inverse_log,
    fit_power_law,
    hard_disc_phase_shift,
    inverse_log_constant,
    mott_massey_criterion,
    phase_shift_sweep,
)
from hyperadia.core.exceptions import DomainError, NumericError, WrongClassError
from hyperadia.core.models import Channel, RadialProblem, StepPotential
from hyperadia.core.settings import PhaseSettings


class TestHardDisc:
    """Two-body reference tan d_L = J_L / Y_L."""

    def test_s_wave_inverse_log(self):
        k = 1e-6
        assert hard_disc_phase_shift(0, k) * math.log(k) == pytest.approx(math.pi / 2, rel=0.1)

    def test_s_wave_fit(self):
        k = np.geomspace(1e-8, 1e-5, 7)
        delta = [hard_disc_phase_shift(0, x) for x in k]
        assert all(d < 0 for d in delta)
        assert fit_inverse_log(k, delta) == pytest.approx(math.pi / 2, rel=0.1)

    @pytest.mark.parametrize("L", [1, 2, 3])
    def test_higher_waves_follow_power_law(self, L):
        k = np.geomspace(1e-4, 1e-2, 5)
        delta = [hard_disc_phase_shift(L, x) for x in k]
        assert fit_power_law(k, delta) == pytest.approx(2 * L, rel=0.05)

    @pytest.mark.parametrize("L,k", [(2, 1e-4), (3, 1e-3), (3, 1e-2), (3, 1e-6)])
    def test_tiny_shifts_keep_their_digits(self, L, k):
        delta = hard_disc_phase_shift(L, k)
        assert delta < 0
        assert delta == pytest.approx(special.jv(L, k) / special.yv(L, k), rel=1e-10)

    def test_zero_of_y_is_a_quarter_turn(self, monkeypatch):
        monkeypatch.setattr(phaseshift, "bessel_jy", lambda order, x: (0.3, 0.0))
        assert hard_disc_phase_shift(0, 0.9) == math.pi / 2

    def test_principal_branch(self):
        for k in (0.5, 3.0, 7.5):
            delta = hard_disc_phase_shift(1, k)
            assert -math.pi / 2 < delta <= math.pi / 2
            j, y = special.jv(1, k), special.yv(1, k)
            assert math.tan(delta) == pytest.approx(j / y, rel=1e-10)

    @pytest.mark.parametrize("k", [0.0, -1.0, 10.5])
    def test_domain(self, k):
        with pytest.raises(DomainError):
            hard_disc_phase_shift(0, k)


class TestFits:
    def test_inverse_log_on_synthetic_data(self):
        k = np.geomspace(1e-6, 1e-3, 7)
        assert fit_inverse_log(k, 1.7 / np.log(k)) == pytest.approx(1.7, rel=1e-12)

    def test_power_law_on_synthetic_data(self):
        k = np.geomspace(1e-4, 1e-2, 5)
        assert fit_power_law(k, -3.0 * k ** 2) == pytest.approx(2.0, rel=1e-12)

    def test_inverse_log_constant(self, ground_channel, paper_potential):
        # pi / (4 B) with B = 1 / (2 (N + 1))
        assert inverse_log_constant(coefficients_log(ground_channel, paper_potential)) == pytest.approx(
            math.pi / 2
        )
        with pytest.raises(WrongClassError):
            inverse_log_constant(coefficient_q(Channel(1, 0, 0), paper_potential))


class TestMottMassey:
    @pytest.mark.parametrize("label,s", [("1,0,0", 4), ("2,0,0", 6), ("-1,2,1", 4)])
    def test_criterion(self, label, s):
        channel = Channel.from_string(label)
        report = mott_massey_criterion(channel)
        assert report.s == s
        assert report.exponent == s - 2
        assert report.min_order == channel.abs_l1
        assert report.tail_dominant
        assert report.to_dict()["channel"] == label

    def test_wrong_class(self, ground_channel):
        with pytest.raises(WrongClassError):
            mott_massey_criterion(ground_channel)


class TestRadialIntegration:
    """Numerov march and two-point phase extraction."""

    def test_numerov_exponential(self):
        h = 1e-3
        s = h * np.arange(2001)
        u = phaseshift._numerov(np.ones_like(s), h, 1.0, math.exp(h))
        assert u[-1] == pytest.approx(math.exp(2.0), rel=1e-9)

    def test_numerov_rescales_growth(self):
        h = 0.01
        u = phaseshift._numerov(np.full(40001, 400.0), h, 1.0, math.exp(20.0 * h))
        assert np.all(np.isfinite(u))
        assert u[-1] / u[-2] == pytest.approx(math.exp(20.0 * h), rel=1e-6)

    @pytest.mark.parametrize("delta", [-1.2, -0.3, 0.0, 0.7, 1.5])
    def test_two_point_phase_recovers_shift(self, delta):
        order, k = 2, 0.1
        rho1, rho2 = 200.0, 220.0

        def wave(r):
            return math.cos(delta) * special.jv(order, k * r) - math.sin(delta) * special.yv(order, k * r)

        tangent = phaseshift._two_point_tangent(order, k, rho1, 3.0 * wave(rho1), rho2, 3.0 * wave(rho2))
        got = phaseshift._fold(*tangent)
        assert got == pytest.approx(delta, abs=1e-12)

    @pytest.mark.parametrize("free", [(0.0, 1.0), (0.0, -1.0), (-1e-300, -1.0)])
    def test_relative_phase_keeps_tiny_shift(self, free):
        # shifted wave is the free one turned by 1e-20 rad
        n0, d0 = free
        shifted = (n0 + 1e-20 * d0, d0)
        assert phaseshift._relative_phase(shifted, free) == pytest.approx(1e-20, rel=1e-12)

    def test_relative_phase_of_quarter_turn(self):
        assert phaseshift._relative_phase((1.0, 0.0), (0.0, 1.0)) == math.pi / 2
        assert phaseshift._relative_phase((0.0, 1.0), (1.0, 0.0)) == math.pi / 2

    def test_two_point_phase_degenerate(self):
        with pytest.raises(NumericError):
            phaseshift._two_point_tangent(0, 0.1, 10.0, 0.0, 12.0, 0.0)

    def test_scaled_potential_regions(self, ground_channel, paper_potential):
        tail = coefficients_log(ground_channel, paper_potential)
        spline = CubicSpline(np.log([0.7, 1.0, 5.0, 50.0]), [0.3, 0.2, 0.1, 0.05])
        scaled = ScaledPotential(paper_potential, spline, 50.0, tail)
        values = scaled(np.array([0.5, 2.0, 500.0]))
        assert values[0] == pytest.approx(paper_potential.v0bar * 0.25)
        assert values[1] == pytest.approx(float(spline(math.log(2.0))))
        denom = tail.A + tail.B * math.log(500.0)
        assert values[2] == pytest.approx(1.0 / denom + 1.0 / (4.0 * denom ** 2))


class TestChannelPhaseShift:
    """Single-channel phase shifts."""

    def test_free_channel_has_no_shift(self, ground_channel):
        problem = RadialProblem(ground_channel, StepPotential(0.0), 1e-3)
        assert channel_phase_shift(problem) == 0.0

    def test_tail_class_must_match(self, paper_potential):
        wrong = coefficients_log(Channel(0, 0, 0), paper_potential)
        problem = RadialProblem(Channel(1, 0, 0), paper_potential, 1e-3, tail_model=wrong)
        with pytest.raises(WrongClassError):
            channel_phase_shift(problem)

    def test_retries_then_fails(self, ground_channel, paper_potential, monkeypatch):
        calls = []

        def always_fails(problem, rho_max, settings, scaled):
            calls.append(rho_max)
            raise NumericError("phase matching ill-conditioned")

        monkeypatch.setattr(phaseshift, "tabulate_potential", lambda *args: None)
        monkeypatch.setattr(phaseshift, "_phase_at", always_fails)
        settings = PhaseSettings(max_retries=2)
        with pytest.raises(NumericError):
            channel_phase_shift(RadialProblem(ground_channel, paper_potential, 0.1), settings)
        assert len(calls) == 3
        assert calls[1] == pytest.approx(1.07 * calls[0])

    def test_inconsistent_radii_warn(self, ground_channel, paper_potential, monkeypatch, caplog):
        monkeypatch.setattr(phaseshift, "tabulate_potential", lambda *args: None)
        monkeypatch.setattr(phaseshift, "_phase_at", lambda *args: (-0.2, -0.1))
        with caplog.at_level(logging.WARNING, logger="hyperadia.analysis.phaseshift"):
            delta = channel_phase_shift(RadialProblem(ground_channel, paper_potential, 0.1))
        assert delta == -0.2
        assert "between matching radii" in caplog.text

    @pytest.mark.slow
    def test_switch_radius_is_immaterial(self, ground_channel, paper_potential):
        problem = RadialProblem(ground_channel, paper_potential, 1e-4)
        near = channel_phase_shift(problem, PhaseSettings(rho_switch=1000.0))
        far = channel_phase_shift(problem, PhaseSettings(rho_switch=2000.0))
        assert far == pytest.approx(near, rel=1e-2)

    @pytest.mark.slow
    def test_log_class_threshold_law(self, ground_channel, paper_potential):
        k = np.geomspace(1e-6, 1e-3, 4)
        pairs = phase_shift_sweep(ground_channel, paper_potential, k)
        deltas = [d for _, d in pairs]
        assert all(d < 0 for d in deltas)
        # |d| shrinks as k -> 0
        assert abs(deltas[0]) < abs(deltas[-1])
        expected = inverse_log_constant(coefficients_log(ground_channel, paper_potential))
        assert fit_inverse_log(k, deltas) == pytest.approx(expected, rel=0.15)

    @pytest.mark.slow
    def test_power_class_threshold_law(self, paper_potential):
        k = np.geomspace(1e-4, 1e-2, 4)
        pairs = phase_shift_sweep(Channel(1, 0, 0), paper_potential, k)
        deltas = [d for _, d in pairs]
        assert all(d < 0 for d in deltas)
        assert fit_power_law(k, deltas) == pytest.approx(2.0, rel=0.05)

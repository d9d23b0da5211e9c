"""Tests for nvdnp.types."""

from __future__ import annotations

import numpy as np
import pytest

from nvdnp.types import (
    EnsembleConfig,
    EnsembleError,
    GaussianSpec,
    InvalidPulseError,
    OptimizationProblem,
    PhysicalConstants,
    PropagationConfig,
    PulseEnvelope,
    PulseFamily,
    RotatingFrameParams,
    RunConfig,
    SlrSpec,
    SquareSpec,
)


class TestPhysicalConstants:
    def test_defaults(self):
        c = PhysicalConstants()
        assert c.D == 2870.0
        assert c.gamma_e == 2.8025
        assert c.A_par == -2.16
        assert c.hyperfine_gap == pytest.approx(2.16)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="Q"):
            PhysicalConstants(Q=float("nan"))

    def test_rejects_zero_hyperfine(self):
        with pytest.raises(ValueError, match="A_par"):
            PhysicalConstants(A_par=0.0)

    def test_frame_params_finite(self):
        with pytest.raises(ValueError):
            RotatingFrameParams(delta_m1=float("inf"))


class TestPulseEnvelope:
    def test_samples_read_only(self):
        env = PulseEnvelope.from_samples([1.0, 2.0, 3.0], 0.1)
        with pytest.raises(ValueError):
            env.samples[0] = 5.0

    def test_copies_input(self):
        raw = np.ones(4)
        env = PulseEnvelope.from_samples(raw, 0.25)
        raw[0] = 7.0
        assert env.samples[0] == 1.0

    def test_area_duration_peak(self):
        env = PulseEnvelope.from_samples([0.5, -2.0, 1.0, 0.5], 0.25)
        assert env.duration == pytest.approx(1.0)
        assert env.area == pytest.approx(0.0)
        assert env.peak == pytest.approx(2.0)
        np.testing.assert_allclose(env.times(), [0.0, 0.25, 0.5, 0.75])

    def test_with_detuning(self):
        env = PulseEnvelope.from_samples([1.0, 1.0], 0.5, detuning=0.1)
        moved = env.with_detuning(-0.3)
        assert moved.detuning == -0.3
        np.testing.assert_array_equal(moved.samples, env.samples)

    @pytest.mark.parametrize(
        "samples, dt",
        [([], 0.1), ([1.0, float("nan")], 0.1), ([1.0], 0.0), ([[1.0, 2.0]], 0.1)],
    )
    def test_invalid(self, samples, dt):
        with pytest.raises(InvalidPulseError):
            PulseEnvelope.from_samples(samples, dt)


class TestSpecs:
    def test_square_duration(self):
        spec = SquareSpec(rabi=1.25, duration_scale=1.0)
        assert spec.duration == pytest.approx(0.4)

    def test_square_from_percent(self):
        spec = SquareSpec.from_percent(1.0, 10.0, -0.2)
        assert spec.duration_scale == pytest.approx(1.1)
        assert spec.detuning == -0.2

    @pytest.mark.parametrize("rabi", [0.0, -1.0, float("inf")])
    def test_square_rejects_rabi(self, rabi):
        with pytest.raises(InvalidPulseError):
            SquareSpec(rabi=rabi)

    def test_gaussian_sigma(self):
        spec = GaussianSpec(peak_rabi=1.0)
        # peak * sigma * sqrt(2 pi) == 1/2
        assert spec.sigma * np.sqrt(2 * np.pi) == pytest.approx(0.5)
        assert spec.duration == pytest.approx(8 * spec.sigma)

    def test_gaussian_truncation_floor(self):
        with pytest.raises(InvalidPulseError):
            GaussianSpec(peak_rabi=1.0, truncation=2.0)

    def test_slr_defaults(self):
        spec = SlrSpec()
        assert spec.time_bandwidth == pytest.approx(16.0)
        assert spec.dt == pytest.approx(4.0 / 256)

    def test_slr_ripple_range(self):
        with pytest.raises(InvalidPulseError, match="in_band_ripple"):
            SlrSpec(in_band_ripple=1.5)


class TestConfigTypes:
    @pytest.mark.parametrize("n", [0, 2, 10])
    def test_ensemble_members_odd(self, n):
        with pytest.raises(EnsembleError):
            EnsembleConfig(fwhm=1.0, n_members=n)

    def test_ensemble_fwhm_positive(self):
        with pytest.raises(EnsembleError, match="fwhm"):
            EnsembleConfig(fwhm=0.0)

    def test_propagation_dt(self):
        with pytest.raises(ValueError):
            PropagationConfig(dt=0.0)

    def test_run_config_ensemble(self):
        run = RunConfig(constants=PhysicalConstants(B0=12.0), n_members=31)
        cfg = run.ensemble(0.5)
        assert cfg.B0 == 12.0
        assert cfg.n_members == 31
        assert cfg.fwhm == 0.5

    def test_problem_bounds(self):
        with pytest.raises(ValueError, match="bound"):
            OptimizationProblem(
                family=PulseFamily.SLR,
                linewidth=1.0,
                bounds=((1.0, 0.0),),
                ensemble=EnsembleConfig(fwhm=1.0),
            )

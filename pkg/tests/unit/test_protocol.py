"""Tests for nvdnp.protocol: ensemble grid, weights and the DNP cycle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from nvdnp.physics.dynamics import evolve
from nvdnp.physics.hamiltonian import build_rotating_h0
from nvdnp.physics.operators import basis_index, initial_state
from nvdnp.protocol.dnp import (
    evaluate_ensemble,
    evaluate_limit,
    limit_member,
    limit_members,
    run_dnp_member,
    run_dnp_members,
)
from nvdnp.protocol.ensemble import (
    cauchy_weights,
    ensemble_average,
    ensemble_grid,
    limit_average_closed_form,
    zeeman_offsets,
)
from nvdnp.pulses.profile import generalized_rabi_inversion
from nvdnp.pulses.shapes import gaussian_envelope, square_envelope
from nvdnp.types.config import EnsembleConfig, EnsembleError
from nvdnp.types.physics import RotatingFrameParams
from nvdnp.types.pulses import GaussianSpec, PulsePair, SquareSpec


def _square_pair(rabi_m1, rabi_p1, delta_m1=0.0, delta_p1=0.0, scale_m1=1.0, scale_p1=1.0):
    return PulsePair(
        square_envelope(SquareSpec(rabi_m1, scale_m1, delta_m1)),
        square_envelope(SquareSpec(rabi_p1, scale_p1, delta_p1)),
    )


def _two_level_oracle(constants, pair, z):
    """P(m_I=0) from independent two-level transfers on each nuclear sub-manifold."""
    a_par = constants.A_par
    m1, p1 = pair.env_m1, pair.env_p1
    rabi_m1, rabi_p1 = m1.samples[0], p1.samples[0]
    a = {
        m: float(generalized_rabi_inversion(
            rabi_m1, m1.duration, -a_par * m - (m1.detuning + z + a_par)))
        for m in (1, 0, -1)
    }
    b = {
        m: float(generalized_rabi_inversion(
            rabi_p1, p1.duration, a_par * m - (p1.detuning - z + a_par)))
        for m in (1, 0, -1)
    }
    return ((1 - a[0]) * (1 - b[0]) + (1 - a[1]) * b[1] + a[-1]) / 3


class TestGrid:
    def test_grid_symmetric_with_center(self):
        cfg = EnsembleConfig(fwhm=0.64, n_members=11)
        grid = ensemble_grid(cfg)
        assert len(grid) == 11
        assert grid[5] == cfg.B0
        np.testing.assert_allclose(grid - cfg.B0, -(grid - cfg.B0)[::-1], atol=1e-12)
        spacing = grid[1] - grid[0]
        assert spacing * 10 == pytest.approx(2 * cfg.span_factor * cfg.fwhm / cfg.gamma_e)

    def test_offsets_span(self):
        cfg = EnsembleConfig(fwhm=0.5, n_members=5)
        offsets = zeeman_offsets(ensemble_grid(cfg), cfg)
        assert offsets[0] == pytest.approx(-3.0)
        assert offsets[-1] == pytest.approx(3.0)
        assert offsets[2] == 0.0

    def test_weights_half_at_half_width(self, constants):
        cfg = EnsembleConfig(fwhm=1.0, n_members=3)
        gamma_b = cfg.fwhm / constants.gamma_e
        w = cauchy_weights([cfg.B0, cfg.B0 + gamma_b / 2, cfg.B0 - gamma_b / 2], cfg, constants)
        assert w[1] == pytest.approx(w[0] / 2)
        assert w[2] == pytest.approx(w[1], rel=1e-14)

    def test_average(self):
        assert ensemble_average([1.0, 0.0, 0.5], [1.0, 1.0, 2.0]) == pytest.approx(0.5)

    @pytest.mark.parametrize(
        "values, weights",
        [([1.0, 2.0], [1.0]), ([1.0], [-1.0]), ([1.0, 2.0], [0.0, 0.0]), ([1.0], [math.inf])],
    )
    def test_average_errors(self, values, weights):
        with pytest.raises(EnsembleError):
            ensemble_average(values, weights)

    @pytest.mark.parametrize("factor", [1e-6, 0.37, 12.0, 4.5e5])
    def test_average_invariant_under_weight_scaling(self, constants, factor):
        cfg = EnsembleConfig(fwhm=0.64, n_members=21)
        grid = ensemble_grid(cfg)
        weights = cauchy_weights(grid, cfg, constants)
        values = limit_members(constants, zeeman_offsets(grid, cfg))
        assert ensemble_average(values, factor * weights) == pytest.approx(
            ensemble_average(values, weights), rel=1e-12
        )

    def test_half_grid_average_for_even_response(self, constants):
        cfg = EnsembleConfig(fwhm=1.48, n_members=41)
        grid = ensemble_grid(cfg)
        weights = cauchy_weights(grid, cfg, constants)
        values = limit_members(constants, np.abs(zeeman_offsets(grid, cfg)))
        center = cfg.n_members // 2
        half_weights = 2 * weights[center:]
        half_weights[0] = weights[center]
        full = ensemble_average(values, weights)
        assert ensemble_average(values[center:], half_weights) == pytest.approx(full, rel=1e-12)

    def test_closed_form_narrow_line(self, constants):
        assert limit_average_closed_form(EnsembleConfig(fwhm=0.01), constants) == 1.0

    def test_closed_form_broad_line(self, constants):
        expected = 1 / 3 + 2 / 3 * math.atan(2.16 / 2.0) / math.atan(12.0)
        value = limit_average_closed_form(EnsembleConfig(fwhm=2.0), constants)
        assert value == pytest.approx(expected)
        assert value == pytest.approx(0.70, abs=0.01)


class TestDnpMember:
    @pytest.mark.parametrize("z", [0.0, 0.4, -0.7, 1.5])
    def test_square_pulses_match_two_level_oracle(self, constants, crosstalk_rabi, z):
        pair = _square_pair(crosstalk_rabi, crosstalk_rabi * 1.1, -0.1, 0.05, 1.05)
        assert run_dnp_member(constants, pair, z) == pytest.approx(
            _two_level_oracle(constants, pair, z), abs=1e-9
        )

    def test_ideal_pulses_polarize(self, constants):
        # weak pulses leave the 2|A_par|-detuned neighbour untouched
        pair = _square_pair(0.2, 0.2)
        assert run_dnp_member(constants, pair, 0.0) > 0.99

    def test_off_resonant_transfer_fraction(self, constants, crosstalk_rabi):
        env = square_envelope(SquareSpec(crosstalk_rabi))
        h0 = build_rotating_h0(constants, RotatingFrameParams(zeeman_offset=crosstalk_rabi))
        rho = evolve(initial_state(), h0, env, "m1")
        k = basis_index(-1, -1)
        fraction = 3 * rho[k, k].real
        expected = 0.5 * math.sin(math.pi / math.sqrt(2)) ** 2
        assert fraction == pytest.approx(expected, abs=1e-9)
        assert fraction == pytest.approx(0.3161, abs=1e-3)

    def test_gaussian_mirror_symmetry(self, constants, crosstalk_rabi):
        env = gaussian_envelope(GaussianSpec(crosstalk_rabi, detuning=-0.2))
        pair = PulsePair(env, env)
        for z in (0.3, 0.8, 1.5):
            assert run_dnp_member(constants, pair, z) == pytest.approx(
                run_dnp_member(constants, pair, -z), abs=1e-4
            )

    def test_batch_matches_members(self, constants, crosstalk_rabi):
        pair = _square_pair(crosstalk_rabi, crosstalk_rabi)
        offsets = [-1.0, 0.0, 0.25]
        batch = run_dnp_members(constants, pair, offsets)
        for z, p in zip(offsets, batch, strict=True):
            assert p == pytest.approx(run_dnp_member(constants, pair, z), abs=1e-12)

    def test_populations_bounded(self, constants):
        pair = _square_pair(3.5, 0.3, 0.4, -1.2, 1.4, 0.8)
        pops = run_dnp_members(constants, pair, np.linspace(-5, 5, 21))
        assert np.all(pops >= 0.0) and np.all(pops <= 1.0)


class TestLimit:
    @pytest.mark.parametrize(
        "z, expected",
        [(0.0, 1.0), (0.5, 1.0), (-1.0, 1.0), (1.5, 1 / 3), (-1.5, 1 / 3), (4.0, 1 / 3),
         (1.08, 2 / 3), (-1.08, 2 / 3)],
    )
    def test_step_function(self, constants, z, expected):
        assert limit_member(constants, z) == pytest.approx(expected)

    def test_symmetric(self, constants):
        z = np.linspace(-3, 3, 61)
        np.testing.assert_allclose(limit_members(constants, z), limit_members(constants, -z))

    def test_discrete_close_to_closed_form(self, constants):
        cfg = EnsembleConfig(fwhm=2.0, n_members=2001)
        discrete = evaluate_limit(constants, cfg).p_avg
        assert discrete == pytest.approx(limit_average_closed_form(cfg, constants), abs=5e-3)


class TestEvaluateEnsemble:
    def test_outcome(self, constants, crosstalk_rabi, small_ensemble):
        pair = _square_pair(crosstalk_rabi, crosstalk_rabi)
        outcome = evaluate_ensemble(constants, pair, small_ensemble)
        assert outcome.n_members == 21
        assert outcome.fields.shape == outcome.weights.shape == (21,)
        expected = np.dot(outcome.populations, outcome.weights) / outcome.weights.sum()
        assert outcome.p_avg == pytest.approx(expected)
        assert 1 / 3 - 1e-9 <= outcome.p_avg <= 1.0

    def test_limit_bounds_square(self, constants, crosstalk_rabi, small_ensemble):
        pair = _square_pair(crosstalk_rabi, crosstalk_rabi)
        p = evaluate_ensemble(constants, pair, small_ensemble).p_avg
        assert p <= evaluate_limit(constants, small_ensemble).p_avg + 0.005

    def test_broader_line_polarizes_less(self, constants, crosstalk_rabi):
        pair = _square_pair(crosstalk_rabi, crosstalk_rabi)
        narrow = evaluate_ensemble(constants, pair, EnsembleConfig(fwhm=0.15, n_members=41))
        broad = evaluate_ensemble(constants, pair, EnsembleConfig(fwhm=1.5, n_members=41))
        assert broad.p_avg < narrow.p_avg

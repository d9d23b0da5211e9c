"""Reproduce the published polarization table from its own parameters and from scratch."""

from __future__ import annotations

from dataclasses import replace

import pytest

from nvdnp.optimize.families import build_pulse_pair
from nvdnp.optimize.optimizer import improvement_ratio, make_problem, optimize
from nvdnp.optimize.reference import (
    LINEWIDTHS,
    reference_limit,
    reference_params,
    reference_polarization,
)
from nvdnp.protocol.dnp import evaluate_ensemble, evaluate_limit
from nvdnp.types.config import PropagationConfig, PropagationMethod, RunConfig
from nvdnp.types.pulses import PulseFamily

RUN = RunConfig()


def _p_avg(family, linewidth, run=RUN):
    pair = build_pulse_pair(family, reference_params(family, linewidth), run.pulses)
    return evaluate_ensemble(run.constants, pair, run.ensemble(linewidth), run.propagation).p_avg


@pytest.fixture(scope="module")
def published():
    return {
        (family, lw): _p_avg(family, lw) for family in PulseFamily for lw in LINEWIDTHS
    }


class TestLimitRow:
    @pytest.mark.parametrize("linewidth", LINEWIDTHS)
    def test_matches_reference(self, linewidth):
        p = evaluate_limit(RUN.constants, RUN.ensemble(linewidth)).p_avg
        assert p == pytest.approx(reference_limit(linewidth), abs=0.01)

    def test_non_increasing(self):
        values = [evaluate_limit(RUN.constants, RUN.ensemble(lw)).p_avg for lw in LINEWIDTHS]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


@pytest.mark.slow
class TestPublishedParameters:
    @pytest.mark.parametrize("family", list(PulseFamily))
    def test_polarization_row(self, published, family):
        for lw in LINEWIDTHS:
            assert published[(family, lw)] == pytest.approx(
                reference_polarization(family, lw), abs=0.02
            ), f"{family.value} at {lw} MHz"

    def test_rows_fall_with_linewidth(self, published):
        for family in PulseFamily:
            row = [published[(family, lw)] for lw in LINEWIDTHS]
            assert all(b <= a + 0.005 for a, b in zip(row, row[1:])), family.value

    def test_family_ordering(self, published):
        for lw in LINEWIDTHS:
            limit = evaluate_limit(RUN.constants, RUN.ensemble(lw)).p_avg
            slr = published[(PulseFamily.SLR, lw)]
            assert slr >= published[(PulseFamily.GAUSSIAN, lw)] - 0.005
            assert limit >= slr - 0.005

    def test_slr_improves_on_square(self, published):
        ratio = published[(PulseFamily.SLR, 1.48)] / published[(PulseFamily.SQUARE, 1.48)]
        assert ratio >= 1.15
        narrow = published[(PulseFamily.SLR, 0.01)] / published[(PulseFamily.SQUARE, 0.01)]
        assert narrow == pytest.approx(1.0, abs=0.01)


@pytest.mark.slow
class TestOptimizedCells:
    def test_square_narrow_line(self):
        result = optimize(make_problem(PulseFamily.SQUARE, 0.01))
        assert result.p_avg >= 0.99
        assert result.params["rabi_p1"] == pytest.approx(1.24, rel=0.1)

    def test_slr_broad_line(self):
        result = optimize(make_problem(PulseFamily.SLR, 1.48))
        assert result.p_avg >= 0.73
        assert result.params["delta"] == pytest.approx(-0.95, abs=0.15)

    def test_improvement_at_moderate_linewidth(self):
        results = [optimize(make_problem(f, 0.64)) for f in (PulseFamily.SQUARE, PulseFamily.SLR)]
        assert improvement_ratio(0.64, results) == pytest.approx(1.11, abs=0.03)


@pytest.mark.slow
class TestConvergence:
    @pytest.mark.parametrize("family", [PulseFamily.SQUARE, PulseFamily.GAUSSIAN])
    def test_doubling_samples(self, family):
        finer = replace(RUN, pulses=replace(RUN.pulses, min_samples=2 * RUN.pulses.min_samples))
        assert _p_avg(family, 0.64, finer) == pytest.approx(_p_avg(family, 0.64, RUN), abs=1e-5)

    def test_halving_rk4_step(self):
        rk4 = PropagationConfig(method=PropagationMethod.RK4)
        coarse = replace(RUN, n_members=51, propagation=rk4)
        fine = replace(coarse, propagation=replace(rk4, dt=rk4.dt / 2))
        p_coarse = _p_avg(PulseFamily.GAUSSIAN, 0.64, coarse)
        assert _p_avg(PulseFamily.GAUSSIAN, 0.64, fine) == pytest.approx(p_coarse, abs=1e-5)

    @pytest.mark.parametrize("family", list(PulseFamily))
    @pytest.mark.parametrize("linewidth", [0.64, 1.48])
    def test_doubling_members(self, family, linewidth):
        denser = replace(RUN, n_members=401)
        assert _p_avg(family, linewidth, denser) == pytest.approx(
            _p_avg(family, linewidth, RUN), abs=0.002
        )

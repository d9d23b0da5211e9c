"""Multi-start Nelder-Mead maximization of the ensemble-averaged P(m_I=0)."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize

from nvdnp.optimize.families import SPACES, build_pulse_pair, seed_grid
from nvdnp.protocol.dnp import evaluate_ensemble
from nvdnp.types.config import EnsembleConfig, OptimizerSettings, PropagationConfig, PulseSettings
from nvdnp.types.physics import PhysicalConstants
from nvdnp.types.pulses import PulseFamily
from nvdnp.types.results import OptimizationProblem, OptimizationResult

logger = logging.getLogger(__name__)


def make_problem(
    family: PulseFamily,
    linewidth: float,
    *,
    constants: PhysicalConstants | None = None,
    n_members: int = 201,
    span_factor: float = 6.0,
    propagation: PropagationConfig | None = None,
    pulses: PulseSettings | None = None,
    settings: OptimizerSettings | None = None,
) -> OptimizationProblem:
    """Problem for one (family, linewidth) cell with the family's default bounds."""
    constants = constants or PhysicalConstants()
    return OptimizationProblem(
        family=family,
        linewidth=linewidth,
        bounds=SPACES[family].bounds,
        ensemble=EnsembleConfig(
            fwhm=linewidth,
            n_members=n_members,
            span_factor=span_factor,
            B0=constants.B0,
            gamma_e=constants.gamma_e,
        ),
        propagation=propagation or PropagationConfig(),
        constants=constants,
        pulses=pulses or PulseSettings(),
        settings=settings or OptimizerSettings(),
    )


def objective(problem: OptimizationProblem, params: Mapping[str, float]) -> float:
    """Ensemble-averaged P(m_I=0) of the family's pulse pair built from params.

    Raises ValueError when a parameter lies outside the family's bounds.
    """
    SPACES[problem.family].check(params)
    pair = build_pulse_pair(problem.family, params, problem.pulses)
    return evaluate_ensemble(
        problem.constants, pair, problem.ensemble, problem.propagation
    ).p_avg


@dataclass(slots=True)
class _Tracker:
    """Best point seen across all objective calls of one optimization."""

    best_value: float = -math.inf
    best_vector: NDArray[np.float64] | None = None
    best_restart: int = -1
    evaluations: int = 0
    restart_values: list[float] = field(default_factory=list)

    def record(self, restart: int, vector: NDArray[np.float64], value: float) -> None:
        self.evaluations += 1
        if value > self.best_value:
            self.best_value = value
            self.best_vector = vector.copy()
            self.best_restart = restart


def _initial_simplex(
    x0: NDArray[np.float64], lo: NDArray[np.float64], hi: NDArray[np.float64], step: float
) -> NDArray[np.float64]:
    simplex = np.tile(x0, (len(x0) + 1, 1))
    for i in range(len(x0)):
        simplex[i + 1, i] += step if x0[i] + step <= hi[i] else -step
    return np.clip(simplex, lo, hi)


def optimize(problem: OptimizationProblem) -> OptimizationResult:
    """Maximize the objective from every seed and keep the best point seen.

    Ties go to the earliest restart. converged reports whether the restart
    that produced the best point met its tolerances within the iteration cap.
    """
    space = SPACES[problem.family]
    scales = np.array(space.scales)
    lo = np.array([b[0] for b in problem.bounds]) / scales
    hi = np.array([b[1] for b in problem.bounds]) / scales
    settings = problem.settings
    tracker = _Tracker()
    successes: list[bool] = []

    seeds = seed_grid(problem.family, problem.linewidth, problem.constants, problem.pulses)
    for restart, seed in enumerate(seeds):

        def negative(y: NDArray[np.float64], restart: int = restart) -> float:
            x = space.clip(y * scales)
            value = objective(problem, space.to_params(x))
            tracker.record(restart, x, value)
            return -value

        x0 = np.clip(space.to_vector(seed) / scales, lo, hi)
        res = minimize(
            negative,
            x0,
            method="Nelder-Mead",
            bounds=list(zip(lo, hi, strict=True)),
            options={
                "maxiter": settings.max_iterations,
                "xatol": settings.xatol,
                "fatol": settings.fatol,
                "initial_simplex": _initial_simplex(x0, lo, hi, settings.initial_step),
            },
        )
        successes.append(bool(res.success))
        tracker.restart_values.append(float(-res.fun))
        logger.debug(
            "%s fwhm=%.3g restart %d: P=%.6f after %d evaluations (%s)",
            problem.family.value, problem.linewidth, restart, -res.fun, res.nfev, res.message,
        )

    if tracker.best_vector is None:
        raise RuntimeError(f"no seeds for {problem.family.value}")
    converged = successes[tracker.best_restart]
    if not converged:
        logger.warning(
            "%s fwhm=%.3g: best restart hit the iteration cap", problem.family.value,
            problem.linewidth,
        )
    logger.info(
        "%s fwhm=%.3g: P=%.6f (%d evaluations)", problem.family.value, problem.linewidth,
        tracker.best_value, tracker.evaluations,
    )
    return OptimizationResult(
        family=problem.family,
        linewidth=problem.linewidth,
        params=space.to_params(tracker.best_vector),
        p_avg=tracker.best_value,
        evaluations=tracker.evaluations,
        converged=converged,
        restart_values=tuple(tracker.restart_values),
    )


def improvement_ratio(linewidth: float, results: Iterable[OptimizationResult]) -> float:
    """p_avg(slr) / p_avg(square) at the given linewidth."""
    by_family: dict[PulseFamily, float] = {}
    for r in results:
        if math.isclose(r.linewidth, linewidth, rel_tol=1e-9, abs_tol=1e-12):
            by_family[r.family] = r.p_avg
    missing = [f.value for f in (PulseFamily.SLR, PulseFamily.SQUARE) if f not in by_family]
    if missing:
        raise ValueError(f"no {' or '.join(missing)} result at linewidth {linewidth}")
    return by_family[PulseFamily.SLR] / by_family[PulseFamily.SQUARE]

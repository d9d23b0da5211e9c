"""Pulse-parameter optimization and the reference optimal-parameter table."""

from nvdnp.optimize.families import SPACES, ParameterSpace, build_pulse_pair, seed_grid
from nvdnp.optimize.optimizer import improvement_ratio, make_problem, objective, optimize
from nvdnp.optimize.runner import run_cells, run_cells_sync

__all__ = [
    "SPACES",
    "ParameterSpace",
    "build_pulse_pair",
    "improvement_ratio",
    "make_problem",
    "objective",
    "optimize",
    "run_cells",
    "run_cells_sync",
    "seed_grid",
]

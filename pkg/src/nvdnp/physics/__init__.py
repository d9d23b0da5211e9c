"""Spin operators, Hamiltonians and density-matrix propagation."""

from nvdnp.physics.dynamics import GridMismatchError, evolve, propagate, rf_flip, rf_flip_operator
from nvdnp.physics.hamiltonian import (
    build_drive,
    build_h0,
    build_rotating_h0,
    rotating_h0_diagonals,
    transition_frequencies,
)
from nvdnp.physics.operators import (
    build_operator_set,
    density_matrix_defects,
    initial_state,
    nuclear_populations,
    population_mI0,
    trace_out_electron,
)

__all__ = [
    "GridMismatchError",
    "build_drive",
    "build_h0",
    "build_operator_set",
    "build_rotating_h0",
    "density_matrix_defects",
    "evolve",
    "initial_state",
    "nuclear_populations",
    "population_mI0",
    "propagate",
    "rf_flip",
    "rf_flip_operator",
    "rotating_h0_diagonals",
    "trace_out_electron",
    "transition_frequencies",
]

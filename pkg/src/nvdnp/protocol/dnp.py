"""One DNP cycle per ensemble member: two MW pulses, the RF flip, readout."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from nvdnp.physics.dynamics import propagate, rf_flip, rf_flip_operator
from nvdnp.physics.hamiltonian import rotating_h0_diagonals
from nvdnp.physics.operators import DIM, basis_index, initial_state, population_mI0
from nvdnp.protocol.ensemble import cauchy_weights, ensemble_average, ensemble_grid, zeeman_offsets
from nvdnp.types.config import EnsembleConfig, PropagationConfig
from nvdnp.types.physics import PhysicalConstants
from nvdnp.types.pulses import PulsePair
from nvdnp.types.results import DnpOutcome

logger = logging.getLogger(__name__)

_ZERO_BLOCK = slice(3, 6)
# m_s=-1 is driven first, then m_s=+1
_BRANCH_BLOCKS = (slice(6, 9), slice(0, 3))
_TARGET = [basis_index(m_s, 0) for m_s in (+1, 0, -1)]
_EDGE_TOL = 1e-9  # MHz


def run_dnp_members(
    constants: PhysicalConstants,
    pulses: PulsePair,
    offsets: ArrayLike,
    cfg: PropagationConfig | None = None,
) -> NDArray[np.float64]:
    """P(m_I=0) after one cycle for every offset, propagated as one batch."""
    diag = rotating_h0_diagonals(
        constants, pulses.env_m1.detuning, pulses.env_p1.detuning, offsets
    )
    h0 = np.zeros((len(diag), DIM, DIM), dtype=np.complex128)
    h0[:, np.arange(DIM), np.arange(DIM)] = diag
    rho = propagate(initial_state(), h0, pulses.env_m1, pulses.env_p1, cfg)
    return np.clip(np.atleast_1d(population_mI0(rf_flip(rho))), 0.0, 1.0)


def run_dnp_member(
    constants: PhysicalConstants,
    pulses: PulsePair,
    zeeman_offset: float,
    cfg: PropagationConfig | None = None,
) -> float:
    return float(run_dnp_members(constants, pulses, [zeeman_offset], cfg)[0])


def _step(detuning: NDArray[np.float64], edge: float) -> NDArray[np.float64]:
    """Inverted fraction: 1 below the band edge, 0 above it, 1/2 on it."""
    return np.where(
        detuning < edge - _EDGE_TOL, 1.0, np.where(detuning <= edge + _EDGE_TOL, 0.5, 0.0)
    )


def limit_members(constants: PhysicalConstants, offsets: ArrayLike) -> NDArray[np.float64]:
    """Step-function limit: full inversion iff a transition lies < |A_par|/2 above its carrier.

    Pure population bookkeeping with both carriers at zero detuning. A
    transition sitting exactly on the edge is inverted by half.
    """
    diag = rotating_h0_diagonals(constants, 0.0, 0.0, offsets)
    edge = constants.hyperfine_gap / 2
    pops = np.zeros_like(diag)
    pops[:, _ZERO_BLOCK] = 1 / 3
    for block in _BRANCH_BLOCKS:
        f = _step(diag[:, block], edge)
        ground, excited = pops[:, _ZERO_BLOCK].copy(), pops[:, block].copy()
        pops[:, _ZERO_BLOCK] = ground * (1 - f) + excited * f
        pops[:, block] = excited * (1 - f) + ground * f
    pops = pops @ (np.abs(rf_flip_operator()) ** 2).T
    return pops[:, _TARGET].sum(axis=1)


def limit_member(constants: PhysicalConstants, zeeman_offset: float) -> float:
    return float(limit_members(constants, [zeeman_offset])[0])


def _outcome(
    cfg: EnsembleConfig, constants: PhysicalConstants, populations: NDArray[np.float64]
) -> DnpOutcome:
    grid = ensemble_grid(cfg)
    weights = cauchy_weights(grid, cfg, constants)
    return DnpOutcome(
        fields=grid,
        offsets=zeeman_offsets(grid, cfg),
        weights=weights,
        populations=populations,
        p_avg=ensemble_average(populations, weights),
    )


def evaluate_ensemble(
    constants: PhysicalConstants,
    pulses: PulsePair,
    ensemble: EnsembleConfig,
    cfg: PropagationConfig | None = None,
) -> DnpOutcome:
    """Simulate every grid member and Cauchy-average P(m_I=0)."""
    offsets = zeeman_offsets(ensemble_grid(ensemble), ensemble)
    populations = run_dnp_members(constants, pulses, offsets, cfg)
    outcome = _outcome(ensemble, constants, populations)
    logger.debug("fwhm=%.3g MHz: P_avg=%.6f over %d members", ensemble.fwhm, outcome.p_avg,
                 outcome.n_members)
    return outcome


def evaluate_limit(constants: PhysicalConstants, ensemble: EnsembleConfig) -> DnpOutcome:
    """Step-function limit on the same grid and weights as evaluate_ensemble."""
    offsets = zeeman_offsets(ensemble_grid(ensemble), ensemble)
    return _outcome(ensemble, constants, limit_members(constants, offsets))

"""Result types for ensemble simulations and optimizations."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from nvdnp.types.config import EnsembleConfig, OptimizerSettings, PropagationConfig, PulseSettings
from nvdnp.types.physics import PhysicalConstants
from nvdnp.types.pulses import PulseFamily


@dataclass(frozen=True, slots=True, eq=False)
class DnpOutcome:
    """Per-member and ensemble-averaged P(m_I=0) for one pulse pair."""

    fields: NDArray[np.float64]
    offsets: NDArray[np.float64]
    weights: NDArray[np.float64]
    populations: NDArray[np.float64]
    p_avg: float

    @property
    def n_members(self) -> int:
        return len(self.populations)


@dataclass(frozen=True, slots=True)
class OptimizationProblem:
    """One (family, linewidth) cell of the optimal-parameter table."""

    family: PulseFamily
    linewidth: float
    bounds: tuple[tuple[float, float], ...]
    ensemble: EnsembleConfig
    propagation: PropagationConfig = field(default_factory=PropagationConfig)
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    pulses: PulseSettings = field(default_factory=PulseSettings)
    settings: OptimizerSettings = field(default_factory=OptimizerSettings)

    def __post_init__(self) -> None:
        if not self.bounds:
            raise ValueError("bounds must not be empty")
        for lo, hi in self.bounds:
            if not (np.isfinite(lo) and np.isfinite(hi) and lo <= hi):
                raise ValueError(f"invalid bound interval ({lo}, {hi})")


@dataclass(frozen=True, slots=True)
class OptimizationResult:
    """Best parameters found for one problem."""

    family: PulseFamily
    linewidth: float
    params: dict[str, float]
    p_avg: float
    evaluations: int
    converged: bool
    restart_values: tuple[float, ...] = ()

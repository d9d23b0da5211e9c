"""nvdnp -- 14N polarization pulses for NV- ensembles.

Usage:
    import nvdnp

    run = nvdnp.RunConfig()
    pair = nvdnp.build_pulse_pair(nvdnp.PulseFamily.SLR, {"delta": -0.95})
    outcome = nvdnp.evaluate_ensemble(run.constants, pair, run.ensemble(1.48))
    print(outcome.p_avg)
"""

from nvdnp.optimize import build_pulse_pair, improvement_ratio, make_problem, optimize
from nvdnp.protocol import evaluate_ensemble, evaluate_limit
from nvdnp.types import (
    DnpOutcome,
    EnsembleConfig,
    OptimizationProblem,
    OptimizationResult,
    PhysicalConstants,
    PropagationConfig,
    PulseEnvelope,
    PulseFamily,
    PulsePair,
    RunConfig,
)

__version__ = "0.1.0"

__all__ = [
    # Simulation
    "build_pulse_pair",
    "evaluate_ensemble",
    "evaluate_limit",
    # Optimization
    "improvement_ratio",
    "make_problem",
    "optimize",
    # Types
    "DnpOutcome",
    "EnsembleConfig",
    "OptimizationProblem",
    "OptimizationResult",
    "PhysicalConstants",
    "PropagationConfig",
    "PulseEnvelope",
    "PulseFamily",
    "PulsePair",
    "RunConfig",
]

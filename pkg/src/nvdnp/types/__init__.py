"""Type definitions for nvdnp."""

from nvdnp.types.config import (
    EnsembleConfig,
    EnsembleError,
    OptimizerSettings,
    PropagationConfig,
    PropagationMethod,
    PulseSettings,
    RunConfig,
)
from nvdnp.types.physics import (
    DensityMatrix,
    OperatorSet,
    PhysicalConstants,
    RotatingFrameParams,
)
from nvdnp.types.pulses import (
    GaussianSpec,
    InvalidPulseError,
    PulseEnvelope,
    PulseFamily,
    PulsePair,
    SlrSpec,
    SquareSpec,
)
from nvdnp.types.results import DnpOutcome, OptimizationProblem, OptimizationResult

__all__ = [
    "DensityMatrix",
    "DnpOutcome",
    "EnsembleConfig",
    "EnsembleError",
    "GaussianSpec",
    "InvalidPulseError",
    "OperatorSet",
    "OptimizationProblem",
    "OptimizationResult",
    "OptimizerSettings",
    "PhysicalConstants",
    "PropagationConfig",
    "PropagationMethod",
    "PulseEnvelope",
    "PulseFamily",
    "PulsePair",
    "PulseSettings",
    "RotatingFrameParams",
    "RunConfig",
    "SlrSpec",
    "SquareSpec",
]

"""Configuration types for simulations and optimization runs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from nvdnp.types.physics import PhysicalConstants
from nvdnp.types.pulses import SlrSpec


class EnsembleError(ValueError):
    """Raised for invalid ensemble grids, weights or settings."""


class PropagationMethod(Enum):
    """How the von Neumann equation is integrated."""

    EXPONENTIAL = "exponential"  # exact exp(-i 2pi H dt) per piecewise-constant step
    RK4 = "rk4"  # fourth-order Runge-Kutta on rho


@dataclass(frozen=True, slots=True)
class EnsembleConfig:
    """Inhomogeneous-broadening grid: n_members fields spanning B0 +- span_factor*fwhm/gamma_e."""

    fwhm: float
    n_members: int = 201
    span_factor: float = 6.0
    B0: float = 10.0
    gamma_e: float = 2.8025

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma_e) and self.gamma_e > 0):
            raise EnsembleError(f"gamma_e must be positive, got {self.gamma_e!r}")
        if not (math.isfinite(self.fwhm) and self.fwhm > 0):
            raise EnsembleError(f"fwhm must be positive, got {self.fwhm!r}")
        if self.n_members < 3 or self.n_members % 2 == 0:
            raise EnsembleError(f"n_members must be odd and >= 3, got {self.n_members}")
        if not (math.isfinite(self.span_factor) and self.span_factor > 0):
            raise EnsembleError(f"span_factor must be positive, got {self.span_factor!r}")
        if not math.isfinite(self.B0):
            raise EnsembleError("B0 must be finite")


@dataclass(frozen=True, slots=True)
class PropagationConfig:
    """Integration settings. dt (us) is the largest step the integrator may take."""

    dt: float = 0.002
    method: PropagationMethod = PropagationMethod.EXPONENTIAL

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"propagation dt must be positive, got {self.dt!r}")


@dataclass(frozen=True, slots=True)
class PulseSettings:
    """How envelopes are sampled and which SLR template is used."""

    min_samples: int = 500
    gaussian_truncation: float = 4.0
    slr: SlrSpec = field(default_factory=SlrSpec)

    def __post_init__(self) -> None:
        if self.min_samples < 100:
            raise ValueError(f"min_samples must be >= 100, got {self.min_samples}")


@dataclass(frozen=True, slots=True)
class OptimizerSettings:
    """Simplex search settings shared by all families."""

    max_iterations: int = 400
    xatol: float = 1e-4
    fatol: float = 1e-5
    initial_step: float = 0.1
    workers: int = 1

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Fully resolved settings for one CLI invocation."""

    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    n_members: int = 201
    span_factor: float = 6.0
    propagation: PropagationConfig = field(default_factory=PropagationConfig)
    pulses: PulseSettings = field(default_factory=PulseSettings)
    optimizer: OptimizerSettings = field(default_factory=OptimizerSettings)
    output: Path | None = None

    def ensemble(self, fwhm: float) -> EnsembleConfig:
        return EnsembleConfig(
            fwhm=fwhm,
            n_members=self.n_members,
            span_factor=self.span_factor,
            B0=self.constants.B0,
            gamma_e=self.constants.gamma_e,
        )

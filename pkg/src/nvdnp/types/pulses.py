"""Pulse envelope and pulse-shape specification types."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray


class InvalidPulseError(ValueError):
    """Raised when a pulse specification or envelope violates its invariants."""


class PulseFamily(Enum):
    """The three envelope families studied."""

    SQUARE = "square"
    GAUSSIAN = "gaussian"
    SLR = "slr"


@dataclass(frozen=True, slots=True, eq=False)
class PulseEnvelope:
    """Sampled Rabi-frequency waveform (MHz) on a uniform grid of spacing dt (us).

    Samples are real: the carrier is amplitude modulated only. The sample
    array is made read-only on construction.
    """

    samples: NDArray[np.float64]
    dt: float
    detuning: float = 0.0

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=np.float64, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidPulseError("envelope samples must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise InvalidPulseError("envelope samples must be finite")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidPulseError(f"dt must be positive, got {self.dt!r}")
        if not math.isfinite(self.detuning):
            raise InvalidPulseError("detuning must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @classmethod
    def from_samples(cls, samples: ArrayLike, dt: float, detuning: float = 0.0) -> PulseEnvelope:
        return cls(np.asarray(samples, dtype=np.float64), float(dt), float(detuning))

    @property
    def duration(self) -> float:
        return len(self.samples) * self.dt

    @property
    def area(self) -> float:
        """Integral of the Rabi frequency over the pulse (1/2 for a pi pulse)."""
        return float(np.sum(self.samples) * self.dt)

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def times(self) -> NDArray[np.float64]:
        """Sample start times in us."""
        return np.arange(len(self.samples)) * self.dt

    def with_detuning(self, detuning: float) -> PulseEnvelope:
        return PulseEnvelope(self.samples, self.dt, detuning)


@dataclass(frozen=True, slots=True)
class SquareSpec:
    """Square pulse: constant Rabi frequency for duration_scale / (2 * rabi)."""

    rabi: float
    duration_scale: float = 1.0
    detuning: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rabi) and self.rabi > 0):
            raise InvalidPulseError(f"rabi must be positive, got {self.rabi!r}")
        if not (math.isfinite(self.duration_scale) and self.duration_scale > 0):
            raise InvalidPulseError(
                f"duration_scale must be positive, got {self.duration_scale!r}"
            )
        if not math.isfinite(self.detuning):
            raise InvalidPulseError("detuning must be finite")

    @property
    def duration(self) -> float:
        return self.duration_scale / (2.0 * self.rabi)

    @classmethod
    def from_percent(cls, rabi: float, delta_t_percent: float, detuning: float) -> SquareSpec:
        """Build from a duration deviation given in percent of the pi duration."""
        return cls(rabi=rabi, duration_scale=1.0 + delta_t_percent / 100.0, detuning=detuning)


@dataclass(frozen=True, slots=True)
class GaussianSpec:
    """Gaussian pi pulse with the given peak Rabi frequency."""

    peak_rabi: float
    detuning: float = 0.0
    truncation: float = 4.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.peak_rabi) and self.peak_rabi > 0):
            raise InvalidPulseError(f"peak_rabi must be positive, got {self.peak_rabi!r}")
        if not (math.isfinite(self.truncation) and self.truncation >= 3):
            raise InvalidPulseError(f"truncation must be >= 3 sigma, got {self.truncation!r}")
        if not math.isfinite(self.detuning):
            raise InvalidPulseError("detuning must be finite")

    @property
    def sigma(self) -> float:
        """Standard deviation (us) giving an untruncated area of 1/2."""
        return 1.0 / (2.0 * self.peak_rabi * math.sqrt(2.0 * math.pi))

    @property
    def duration(self) -> float:
        return 2.0 * self.truncation * self.sigma


@dataclass(frozen=True, slots=True)
class SlrSpec:
    """Band-selective inversion pulse designed with the Shinnar-Le Roux transform."""

    length: float = 4.0
    bandwidth: float = 4.0
    n_samples: int = 256
    in_band_ripple: float = 0.01
    out_band_ripple: float = 0.01
    detuning: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.length) and self.length > 0):
            raise InvalidPulseError(f"length must be positive, got {self.length!r}")
        if not (math.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise InvalidPulseError(f"bandwidth must be positive, got {self.bandwidth!r}")
        if self.n_samples < 64:
            raise InvalidPulseError(f"n_samples must be >= 64, got {self.n_samples}")
        for name in ("in_band_ripple", "out_band_ripple"):
            value = getattr(self, name)
            if not (0 < value < 1):
                raise InvalidPulseError(f"{name} must lie in (0, 1), got {value!r}")
        if not math.isfinite(self.detuning):
            raise InvalidPulseError("detuning must be finite")

    @property
    def time_bandwidth(self) -> float:
        return self.length * self.bandwidth

    @property
    def dt(self) -> float:
        return self.length / self.n_samples


@dataclass(frozen=True, slots=True, eq=False)
class PulsePair:
    """The two MW pulses of one DNP cycle: near f_-1 first, then near f_+1."""

    env_m1: PulseEnvelope
    env_p1: PulseEnvelope

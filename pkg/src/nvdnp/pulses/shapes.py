"""Square and Gaussian envelopes and the cross-talk-free Rabi condition."""

from __future__ import annotations

import math

import numpy as np

from nvdnp.types.pulses import GaussianSpec, InvalidPulseError, PulseEnvelope, SquareSpec

DEFAULT_SAMPLES = 500
MIN_SAMPLES = 100


def _sample_count(duration: float, dt: float | None, n_samples: int) -> int:
    if dt is None:
        n = n_samples
    else:
        if not (math.isfinite(dt) and dt > 0):
            raise InvalidPulseError(f"dt must be positive, got {dt!r}")
        n = round(duration / dt)
    if n < MIN_SAMPLES:
        raise InvalidPulseError(
            f"pulse of {duration:.4g} us needs at least {MIN_SAMPLES} samples, got {n}"
        )
    return n


def square_envelope(
    spec: SquareSpec, dt: float | None = None, *, n_samples: int = DEFAULT_SAMPLES
) -> PulseEnvelope:
    """Constant Rabi frequency for spec.duration.

    With dt given, the sample count is the nearest integer to duration/dt and
    the spacing is adjusted so the duration stays exact.
    """
    n = _sample_count(spec.duration, dt, n_samples)
    return PulseEnvelope(np.full(n, spec.rabi), spec.duration / n, spec.detuning)


def gaussian_envelope(
    spec: GaussianSpec, dt: float | None = None, *, n_samples: int = DEFAULT_SAMPLES
) -> PulseEnvelope:
    """Gaussian cut at +-truncation sigma and rescaled to a pulse area of exactly 1/2."""
    n = _sample_count(spec.duration, dt, n_samples)
    step = spec.duration / n
    t = (np.arange(n) + 0.5) * step - spec.duration / 2
    samples = spec.peak_rabi * np.exp(-(t**2) / (2 * spec.sigma**2))
    samples *= 0.5 / (np.sum(samples) * step)
    return PulseEnvelope(samples, step, spec.detuning)


def crosstalk_free_rabi(delta_omega: float) -> float:
    """Rabi frequency whose pi pulse is a full 2pi rotation at detuning delta_omega."""
    if not (math.isfinite(delta_omega) and delta_omega >= 0):
        raise InvalidPulseError(f"delta_omega must be >= 0, got {delta_omega!r}")
    return delta_omega / math.sqrt(3.0)

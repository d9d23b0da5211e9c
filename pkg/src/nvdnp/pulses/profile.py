"""Two-level excitation profiles of sampled envelopes."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from nvdnp.physics.propagators import driven_propagator, run_lengths
from nvdnp.types.pulses import PulseEnvelope

_SIGMA_X_HALF = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=np.complex128)


def excitation_profile(env: PulseEnvelope, detunings: ArrayLike) -> NDArray[np.float64]:
    """Excited-state population after env, starting from the ground state.

    Each grid point adds to the envelope's own carrier detuning.
    """
    grid = np.atleast_1d(np.asarray(detunings, dtype=np.float64))
    if not np.all(np.isfinite(grid)):
        raise ValueError("detuning grid must be finite")
    h_static = np.zeros((len(grid), 2, 2), dtype=np.complex128)
    h_static[:, 1, 1] = env.detuning + grid
    values, counts = run_lengths(env.samples)
    u = driven_propagator(h_static, _SIGMA_X_HALF, values, counts * env.dt)
    return np.abs(u[:, 1, 0]) ** 2


def generalized_rabi_inversion(
    rabi: float, duration: float, detunings: ArrayLike
) -> NDArray[np.float64]:
    """Closed-form square-pulse inversion: W^2 sin^2(pi sqrt(W^2 + d^2) T) / (W^2 + d^2)."""
    d = np.asarray(detunings, dtype=np.float64)
    w2 = rabi**2 + d**2
    return rabi**2 / w2 * np.sin(np.pi * np.sqrt(w2) * duration) ** 2


def sidelobe_maxima(
    detunings: ArrayLike, profile: ArrayLike, floor: float = 0.0
) -> NDArray[np.float64]:
    """Detunings (>= 0) of local profile maxima above floor, past the first minimum."""
    d = np.asarray(detunings, dtype=np.float64)
    p = np.asarray(profile, dtype=np.float64)
    order = np.argsort(d)
    d, p = d[order], p[order]
    pos = d >= 0
    d, p = d[pos], p[pos]
    if len(p) < 3:
        return np.empty(0)
    rising = np.flatnonzero(np.diff(p) > 0)
    if len(rising) == 0:
        return np.empty(0)
    interior = np.arange(max(int(rising[0]), 1), len(p) - 1)
    peaks = interior[
        (p[interior] > p[interior - 1]) & (p[interior] >= p[interior + 1]) & (p[interior] > floor)
    ]
    return d[peaks]

"""Density-matrix evolution through the two MW pulses and the ideal RF flip."""

from __future__ import annotations

import functools
import math

import numpy as np

from nvdnp.physics.hamiltonian import build_drive
from nvdnp.physics.operators import DIM, basis_index, build_operator_set
from nvdnp.physics.propagators import TWO_PI, driven_propagator, run_lengths
from nvdnp.types.config import PropagationConfig, PropagationMethod
from nvdnp.types.physics import ComplexMatrix, DensityMatrix
from nvdnp.types.pulses import PulseEnvelope

BRANCHES = ("m1", "p1")


class GridMismatchError(ValueError):
    """Raised when states, Hamiltonians and envelopes cannot be stepped together."""


def substeps(sample_dt: float, max_dt: float) -> int:
    """Number of equal integration steps per envelope sample."""
    return max(1, math.ceil(sample_dt / max_dt - 1e-9))


def _coupling(branch: str) -> ComplexMatrix:
    ops = build_operator_set()
    if branch == "m1":
        return build_drive(1.0, 0.0, ops)
    if branch == "p1":
        return build_drive(0.0, 1.0, ops)
    raise ValueError(f"unknown branch {branch!r}; expected one of {BRANCHES}")


def _check_shapes(rho: DensityMatrix, h0_rot: ComplexMatrix) -> None:
    if np.shape(rho)[-2:] != (DIM, DIM) or np.shape(h0_rot)[-2:] != (DIM, DIM):
        raise GridMismatchError(
            f"expected (..., {DIM}, {DIM}) arrays, got rho {np.shape(rho)} "
            f"and h0 {np.shape(h0_rot)}"
        )
    try:
        np.broadcast_shapes(np.shape(rho)[:-2], np.shape(h0_rot)[:-2])
    except ValueError as exc:
        raise GridMismatchError(
            f"batch shapes {np.shape(rho)[:-2]} and {np.shape(h0_rot)[:-2]} do not broadcast"
        ) from exc


def _rhs(h: ComplexMatrix, rho: DensityMatrix) -> DensityMatrix:
    return -1j * TWO_PI * (h @ rho - rho @ h)


def _evolve_rk4(
    rho: DensityMatrix,
    h_static: ComplexMatrix,
    coupling: ComplexMatrix,
    env: PulseEnvelope,
    cfg: PropagationConfig,
) -> DensityMatrix:
    n_sub = substeps(env.dt, cfg.dt)
    tau = env.dt / n_sub
    for amp in env.samples:
        h = h_static + amp * coupling
        for _ in range(n_sub):
            k1 = _rhs(h, rho)
            k2 = _rhs(h, rho + 0.5 * tau * k1)
            k3 = _rhs(h, rho + 0.5 * tau * k2)
            k4 = _rhs(h, rho + tau * k3)
            rho = rho + tau / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return rho


def evolve(
    rho: DensityMatrix,
    h0_rot: ComplexMatrix,
    env: PulseEnvelope,
    branch: str,
    cfg: PropagationConfig | None = None,
) -> DensityMatrix:
    """Apply one pulse on the given branch ("m1" or "p1") to rho.

    rho and h0_rot may be stacks of shape (..., 9, 9) that broadcast
    against each other. h0_rot already carries the carrier detunings, so
    env.detuning is not read here.
    """
    cfg = cfg or PropagationConfig()
    _check_shapes(rho, h0_rot)
    coupling = _coupling(branch)
    h0_rot = np.asarray(h0_rot, dtype=np.complex128)
    rho = np.asarray(rho, dtype=np.complex128)

    if cfg.method is PropagationMethod.RK4:
        h_static = np.broadcast_to(h0_rot, np.broadcast_shapes(rho.shape, h0_rot.shape))
        return _evolve_rk4(rho, h_static, coupling, env, cfg)

    values, counts = run_lengths(env.samples)
    u = driven_propagator(h0_rot, coupling, values, counts * env.dt)
    return u @ rho @ np.conj(np.swapaxes(u, -1, -2))


def propagate(
    rho: DensityMatrix,
    h0_rot: ComplexMatrix,
    env_m1: PulseEnvelope,
    env_p1: PulseEnvelope,
    cfg: PropagationConfig | None = None,
) -> DensityMatrix:
    """rho after the pulse near f_-1 followed by the pulse near f_+1."""
    rho = evolve(rho, h0_rot, env_m1, "m1", cfg)
    return evolve(rho, h0_rot, env_p1, "p1", cfg)


@functools.cache
def _rf_flip_operator() -> ComplexMatrix:
    u = np.zeros((DIM, DIM), dtype=np.complex128)
    for m_i in (+1, 0, -1):
        k = basis_index(0, m_i)
        u[k, k] = 1.0
    for m_s, swapped, kept in ((+1, +1, -1), (-1, -1, +1)):
        a, b = basis_index(m_s, swapped), basis_index(m_s, 0)
        u[a, b] = u[b, a] = 1j
        k = basis_index(m_s, kept)
        u[k, k] = 1.0
    u.setflags(write=False)
    return u


def rf_flip_operator() -> ComplexMatrix:
    """Ideal RF pulse: m_I +1 <-> 0 in m_s=+1 and m_I -1 <-> 0 in m_s=-1, each with factor i."""
    return _rf_flip_operator()


def rf_flip(rho: DensityMatrix) -> DensityMatrix:
    u = rf_flip_operator()
    return u @ rho @ u.conj().T

"""Unitary kernels for piecewise-constant Hermitian generators.

All exponentials are exp(-i 2pi H tau) with H in MHz and tau in us.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from nvdnp.types.physics import ComplexMatrix

TWO_PI = 2.0 * np.pi


def expm_hermitian(h: ArrayLike, tau: ArrayLike) -> ComplexMatrix:
    """exp(-i 2pi h tau) for Hermitian h of shape (..., n, n) via eigendecomposition."""
    w, v = np.linalg.eigh(np.asarray(h, dtype=np.complex128))
    phase = np.exp(-1j * TWO_PI * w * np.asarray(tau, dtype=np.float64)[..., None])
    return (v * phase[..., None, :]) @ np.conj(np.swapaxes(v, -1, -2))


def _expm_2x2(h: ComplexMatrix, tau: NDArray[np.float64]) -> ComplexMatrix:
    a = h[..., 0, 0].real
    d = h[..., 1, 1].real
    c = h[..., 0, 1]
    mean = (a + d) / 2
    half = (a - d) / 2
    r = np.sqrt(half**2 + np.abs(c) ** 2)
    phi = TWO_PI * tau
    cos = np.cos(phi * r)
    s = phi * np.sinc(phi * r / np.pi)  # sin(phi r) / r, finite at r = 0
    pre = np.exp(-1j * phi * mean)
    u = np.empty(h.shape, dtype=np.complex128)
    u[..., 0, 0] = pre * (cos - 1j * s * half)
    u[..., 1, 1] = pre * (cos + 1j * s * half)
    u[..., 0, 1] = pre * (-1j * s * c)
    u[..., 1, 0] = pre * (-1j * s * np.conj(c))
    return u


def expm_block(h: ComplexMatrix, tau: ArrayLike) -> ComplexMatrix:
    """exp(-i 2pi h tau), with closed forms for 1x1 and 2x2 generators."""
    tau = np.asarray(tau, dtype=np.float64)
    n = h.shape[-1]
    if n == 1:
        return np.exp(-1j * TWO_PI * h.real * tau[..., None, None]).astype(np.complex128)
    if n == 2:
        return _expm_2x2(h, np.broadcast_to(tau, h.shape[:-2]))
    return expm_hermitian(h, tau)


def block_partition(pattern: NDArray[np.bool_]) -> list[NDArray[np.intp]]:
    """Index sets of the connected blocks of a square coupling pattern."""
    pattern = np.asarray(pattern, dtype=bool)
    n_blocks, labels = connected_components(
        csr_matrix(pattern | pattern.T), directed=False
    )
    return [np.flatnonzero(labels == k) for k in range(n_blocks)]


def ordered_product(us: ComplexMatrix) -> ComplexMatrix:
    """U_{G-1} ... U_1 U_0 for step unitaries stacked on axis -3."""
    n = us.shape[-1]
    while us.shape[-3] > 1:
        if us.shape[-3] % 2:
            eye = np.broadcast_to(np.eye(n, dtype=np.complex128), (*us.shape[:-3], 1, n, n))
            us = np.concatenate([us, eye], axis=-3)
        us = us[..., 1::2, :, :] @ us[..., 0::2, :, :]
    return us[..., 0, :, :]


def run_lengths(samples: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.intp]]:
    """Collapse runs of equal consecutive samples into (values, counts)."""
    samples = np.asarray(samples, dtype=np.float64)
    starts = np.concatenate([[0], np.flatnonzero(np.diff(samples) != 0) + 1])
    counts = np.diff(np.concatenate([starts, [len(samples)]]))
    return samples[starts], counts


def driven_propagator(
    h_static: ComplexMatrix,
    coupling: ComplexMatrix,
    amplitudes: ArrayLike,
    durations: ArrayLike,
) -> ComplexMatrix:
    """Propagator of H(t) = h_static + a_k * coupling held for durations[k], k in order.

    h_static may carry leading batch dimensions; the result has shape
    (*batch, n, n). The generator is split into the blocks left connected
    by h_static and coupling, and each block is exponentiated separately.
    """
    h_static = np.asarray(h_static, dtype=np.complex128)
    coupling = np.asarray(coupling, dtype=np.complex128)
    amps = np.asarray(amplitudes, dtype=np.float64)
    taus = np.asarray(durations, dtype=np.float64)
    n = h_static.shape[-1]
    batch = h_static.shape[:-2]

    static_pattern = np.any(np.abs(h_static.reshape(-1, n, n)) > 0, axis=0)
    pattern = static_pattern | (np.abs(coupling) > 0)
    u = np.zeros((*batch, n, n), dtype=np.complex128)
    for idx in block_partition(pattern):
        rows, cols = idx[:, None], idx[None, :]
        hb = h_static[..., rows, cols][..., None, :, :] + amps[:, None, None] * coupling[rows, cols]
        u[..., rows, cols] = ordered_product(expm_block(hb, taus))
    return u

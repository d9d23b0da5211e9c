"""Shinnar-Le Roux design of real, band-selective inversion pulses.

The beta polynomial is a least-squares linear-phase FIR filter; alpha is its
minimum-phase complement and the inverse SLR recursion turns the pair into
per-sample rotation angles.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from numpy.typing import NDArray
from scipy import signal

from nvdnp.types.pulses import PulseEnvelope, SlrSpec

logger = logging.getLogger(__name__)

PAD_FACTOR = 16


class SlrDesignError(ValueError):
    """Raised when the beta filter overshoots |B| = 1 beyond the ripple budget."""


def dinf(d1: float, d2: float) -> float:
    """Transition-width factor D_inf of a linear-phase filter with ripples d1, d2."""
    a1, a2, a3 = 5.309e-3, 7.114e-2, -4.761e-1
    a4, a5, a6 = -2.66e-3, -5.941e-1, -4.278e-1
    l1, l2 = math.log10(d1), math.log10(d2)
    return (a1 * l1**2 + a2 * l1 + a3) * l2 + (a4 * l1**2 + a5 * l1 + a6)


def inversion_ripples(in_band: float, out_band: float) -> tuple[float, float]:
    """Map inversion-profile ripples onto beta-polynomial ripples."""
    return in_band / 8.0, math.sqrt(out_band / 2.0)


def beta_filter(n: int, tb: float, d1: float, d2: float) -> NDArray[np.float64]:
    """n-tap least-squares filter with pass band |f| < tb/2 cycles per pulse."""
    w = dinf(d1, d2) / tb
    edges = np.array([0.0, (1 - w) * tb / 2, (1 + w) * tb / 2, n / 2]) / (n / 2)
    if not (0 < edges[1] < edges[2] < 1):
        raise SlrDesignError(
            f"time-bandwidth {tb:.4g} does not fit in {n} samples with ripples ({d1}, {d2})"
        )
    h = signal.firls(n + 1, edges, [1, 1, 0, 0], weight=[1, d1 / d2])
    # half-sample shift so the n-tap result stays symmetric
    k = np.concatenate([np.arange(0, n / 2 + 1), np.arange(-n / 2, 0)])
    shift = np.exp(1j * 2 * np.pi / (2 * (n + 1)) * k)
    return np.real(np.fft.ifft(np.fft.fft(h) * shift))[:n]


def min_phase(magnitude: NDArray[np.float64]) -> NDArray[np.complex128]:
    """Minimum-phase spectrum with the given magnitude (folded cepstrum)."""
    n = len(magnitude)
    cep = np.fft.fft(np.log(np.abs(magnitude)))
    folded = cep.copy()
    folded[1 : n // 2] = 2 * cep[1 : n // 2]
    folded[n // 2 + 1 :] = 0
    return np.exp(np.fft.ifft(folded))


def alpha_from_beta(b: NDArray[np.float64], overshoot_limit: float) -> NDArray[np.complex128]:
    """Minimum-phase alpha with |A|^2 + |B|^2 = 1 on the unit circle."""
    n = len(b)
    npad = n * PAD_FACTOR
    bf = np.fft.fft(np.concatenate([b, np.zeros(npad - n)]).astype(np.complex128))
    peak = float(np.max(np.abs(bf)))
    if peak > overshoot_limit:
        raise SlrDesignError(f"|B| peaks at {peak:.6f}, above the allowed {overshoot_limit:.6f}")
    if peak >= 1:
        logger.debug("beta overshoot %.6f renormalized below 1", peak)
        bf = bf / (1e-7 + peak)
    a = np.fft.fft(min_phase(np.sqrt(1 - np.abs(bf) ** 2))) / npad
    return a[:n][::-1]


def ab_to_angles(a: NDArray[np.complex128], b: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Inverse SLR recursion: complex rotation angle (rad) of every hard pulse."""
    n = len(a)
    rf = np.zeros(n, dtype=np.complex128)
    a = a.astype(np.complex128)
    b = b.astype(np.complex128)
    for j in range(n - 1, -1, -1):
        cj = np.sqrt(1 / (1 + np.abs(b[j] / a[j]) ** 2))
        sj = np.conj(cj * b[j] / a[j])
        rf[j] = 2 * np.arctan2(np.abs(sj), cj) * np.exp(1j * np.angle(sj))
        if j > 0:
            at = cj * a + sj * b
            bt = -np.conj(sj) * a + cj * b
            a, b = at[1 : j + 1], bt[:j]
    return rf


def slr_design(spec: SlrSpec) -> PulseEnvelope:
    """Real inversion pulse of spec.length us selecting a band of spec.bandwidth MHz."""
    n = spec.n_samples
    d1, d2 = inversion_ripples(spec.in_band_ripple, spec.out_band_ripple)
    b = beta_filter(n, spec.time_bandwidth, d1, d2)
    a = alpha_from_beta(b, overshoot_limit=1 + spec.in_band_ripple)
    angles = ab_to_angles(a, b.astype(np.complex128))

    imag = float(np.max(np.abs(angles.imag)))
    logger.debug(
        "slr design: n=%d tb=%.3g peak angle %.4f rad, max imaginary part %.2e",
        n, spec.time_bandwidth, float(np.max(np.abs(angles))), imag,
    )
    rabi = angles.real / (2 * np.pi * spec.dt)
    return PulseEnvelope(rabi, spec.dt, spec.detuning)

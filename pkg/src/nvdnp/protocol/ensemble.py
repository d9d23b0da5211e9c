"""Inhomogeneous-broadening grid and Cauchy-weighted averaging."""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from nvdnp.types.config import EnsembleConfig, EnsembleError
from nvdnp.types.physics import PhysicalConstants


def ensemble_grid(cfg: EnsembleConfig) -> NDArray[np.float64]:
    """n_members equally spaced fields (G) on B0 +- span_factor * fwhm / gamma_e."""
    half = cfg.span_factor * cfg.fwhm / cfg.gamma_e
    grid = np.linspace(cfg.B0 - half, cfg.B0 + half, cfg.n_members)
    grid[cfg.n_members // 2] = cfg.B0
    return grid


def zeeman_offsets(grid: ArrayLike, cfg: EnsembleConfig) -> NDArray[np.float64]:
    """Transition shift gamma_e * (B - B0) of every member, in MHz."""
    return cfg.gamma_e * (np.asarray(grid, dtype=np.float64) - cfg.B0)


def cauchy_weights(
    grid: ArrayLike, cfg: EnsembleConfig, constants: PhysicalConstants
) -> NDArray[np.float64]:
    """Unnormalized Lorentzian weights 1 / ((B - B0)^2 + gamma_B^2 / 4).

    gamma_B = fwhm / gamma_e is the linewidth in field units.
    """
    gamma_b = cfg.fwhm / constants.gamma_e
    b = np.asarray(grid, dtype=np.float64)
    return 1.0 / ((b - cfg.B0) ** 2 + gamma_b**2 / 4)


def ensemble_average(values: ArrayLike, weights: ArrayLike) -> float:
    """Weighted mean, accumulated in index order."""
    v = np.asarray(values, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    if v.shape != w.shape or v.ndim != 1:
        raise EnsembleError(f"values {v.shape} and weights {w.shape} must be equal-length 1-D")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise EnsembleError("weights must be finite and non-negative")
    total = float(np.sum(w))
    if total == 0:
        raise EnsembleError("weights are all zero")
    return float(np.dot(v, w)) / total


def limit_average_closed_form(cfg: EnsembleConfig, constants: PhysicalConstants) -> float:
    """Continuum version of the averaged step-function limit on the grid span.

    Members within |A_par|/2 of resonance end in m_I=0, all others keep 1/3.
    """
    inside = math.atan(constants.hyperfine_gap / cfg.fwhm)
    total = math.atan(2 * cfg.span_factor)
    return 1 / 3 + 2 / 3 * min(1.0, inside / total)

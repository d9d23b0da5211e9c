"""Parameter spaces of the three pulse families and their pulse-pair builders."""

from __future__ import annotations

import functools
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

from nvdnp.pulses.shapes import gaussian_envelope, square_envelope
from nvdnp.pulses.slr import slr_design
from nvdnp.types.config import PulseSettings
from nvdnp.types.physics import PhysicalConstants
from nvdnp.types.pulses import (
    GaussianSpec,
    InvalidPulseError,
    PulseEnvelope,
    PulseFamily,
    PulsePair,
    SlrSpec,
    SquareSpec,
)

RABI_BOUNDS = (0.2, 4.0)
DELTA_BOUNDS = (-1.5, 0.5)
DURATION_BOUNDS = (-20.0, 20.0)

IDLE_DURATION = 1.0  # us, stands in for a zero-amplitude pulse


@dataclass(frozen=True, slots=True)
class ParameterSpace:
    """Named, bounded and scaled parameters of one pulse family."""

    family: PulseFamily
    names: tuple[str, ...]
    bounds: tuple[tuple[float, float], ...]
    scales: tuple[float, ...]

    @property
    def size(self) -> int:
        return len(self.names)

    def to_vector(self, params: Mapping[str, float]) -> NDArray[np.float64]:
        missing = [n for n in self.names if n not in params]
        if missing:
            raise ValueError(f"{self.family.value} parameters missing: {', '.join(missing)}")
        return np.array([float(params[n]) for n in self.names], dtype=np.float64)

    def to_params(self, vector: Sequence[float] | NDArray[np.float64]) -> dict[str, float]:
        return {n: float(v) for n, v in zip(self.names, vector, strict=True)}

    def clip(self, vector: NDArray[np.float64]) -> NDArray[np.float64]:
        lo, hi = np.array(self.bounds).T
        return np.clip(vector, lo, hi)

    def check(self, params: Mapping[str, float]) -> None:
        vector = self.to_vector(params)
        for name, value, (lo, hi) in zip(self.names, vector, self.bounds, strict=True):
            if not (lo <= value <= hi):
                raise ValueError(f"{name}={value} outside [{lo}, {hi}]")


SPACES: dict[PulseFamily, ParameterSpace] = {
    PulseFamily.SQUARE: ParameterSpace(
        PulseFamily.SQUARE,
        ("rabi_m1", "rabi_p1", "delta_m1", "delta_p1", "dT_m1", "dT_p1"),
        (RABI_BOUNDS, RABI_BOUNDS, DELTA_BOUNDS, DELTA_BOUNDS, DURATION_BOUNDS, DURATION_BOUNDS),
        (1.0, 1.0, 1.0, 1.0, 10.0, 10.0),
    ),
    PulseFamily.GAUSSIAN: ParameterSpace(
        PulseFamily.GAUSSIAN, ("rabi", "delta"), (RABI_BOUNDS, DELTA_BOUNDS), (1.0, 1.0)
    ),
    PulseFamily.SLR: ParameterSpace(PulseFamily.SLR, ("delta",), (DELTA_BOUNDS,), (1.0,)),
}


@functools.lru_cache(maxsize=16)
def _slr_template(spec: SlrSpec) -> PulseEnvelope:
    return slr_design(replace(spec, detuning=0.0))


def idle_envelope(n_samples: int, detuning: float = 0.0) -> PulseEnvelope:
    return PulseEnvelope(np.zeros(n_samples), IDLE_DURATION / n_samples, detuning)


def _square(rabi: float, delta_t: float, delta: float, n: int) -> PulseEnvelope:
    if rabi == 0:
        return idle_envelope(n, delta)
    return square_envelope(SquareSpec.from_percent(rabi, delta_t, delta), n_samples=n)


def build_pulse_pair(
    family: PulseFamily, params: Mapping[str, float], settings: PulseSettings | None = None
) -> PulsePair:
    """Envelopes for one DNP cycle from a family's named parameters.

    A square Rabi frequency of exactly 0 yields an idle (all-zero) pulse.
    """
    settings = settings or PulseSettings()
    n = settings.min_samples
    p = SPACES[family].to_params(SPACES[family].to_vector(params))
    if family is PulseFamily.SQUARE:
        return PulsePair(
            _square(p["rabi_m1"], p["dT_m1"], p["delta_m1"], n),
            _square(p["rabi_p1"], p["dT_p1"], p["delta_p1"], n),
        )
    if family is PulseFamily.GAUSSIAN:
        if p["rabi"] == 0:
            idle = idle_envelope(n, p["delta"])
            return PulsePair(idle, idle)
        env = gaussian_envelope(
            GaussianSpec(p["rabi"], p["delta"], settings.gaussian_truncation), n_samples=n
        )
        return PulsePair(env, env)
    env = _slr_template(settings.slr).with_detuning(p["delta"])
    return PulsePair(env, env)


def analytic_guess(
    family: PulseFamily, constants: PhysicalConstants, settings: PulseSettings | None = None
) -> dict[str, float]:
    """Starting point: Rabi |A_par|/sqrt(3) on resonance, or the SLR band edge at |A_par|/2."""
    settings = settings or PulseSettings()
    rabi = constants.hyperfine_gap / math.sqrt(3.0)
    if family is PulseFamily.SQUARE:
        return {"rabi_m1": rabi, "rabi_p1": rabi, "delta_m1": 0.0, "delta_p1": 0.0,
                "dT_m1": 0.0, "dT_p1": 0.0}
    if family is PulseFamily.GAUSSIAN:
        return {"rabi": rabi, "delta": 0.0}
    return {"delta": constants.hyperfine_gap / 2 - settings.slr.bandwidth / 2}


SEED_PERTURBATIONS = ((1.0, 0.0), (1.2, 0.0), (0.8, 0.0), (1.0, -0.5), (1.2, -0.5))


def seed_grid(
    family: PulseFamily,
    linewidth: float,
    constants: PhysicalConstants,
    settings: PulseSettings | None = None,
) -> list[dict[str, float]]:
    """Deterministic restart points: Rabi x (1, 1.2, 0.8) and detuning shifted by -linewidth/2.

    Seeds are clipped into bounds and duplicates dropped, keeping first occurrence.
    """
    space = SPACES[family]
    base = analytic_guess(family, constants, settings)
    seeds: list[dict[str, float]] = []
    seen: set[tuple[float, ...]] = set()
    for rabi_factor, shift in SEED_PERTURBATIONS:
        p = dict(base)
        for name in space.names:
            if name.startswith("rabi"):
                p[name] *= rabi_factor
            elif name.startswith("delta"):
                p[name] += shift * linewidth
        vector = space.clip(space.to_vector(p))
        key = tuple(np.round(vector, 12))
        if key not in seen:
            seen.add(key)
            seeds.append(space.to_params(vector))
    return seeds

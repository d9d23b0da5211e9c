"""Shared fixtures: default constants, small ensembles and quick run settings."""

from __future__ import annotations

import math

import pytest

from nvdnp.types.config import (
    EnsembleConfig,
    OptimizerSettings,
    PropagationConfig,
    PulseSettings,
    RunConfig,
)
from nvdnp.types.physics import PhysicalConstants
from nvdnp.types.pulses import PulseFamily

SQRT3 = math.sqrt(3.0)


@pytest.fixture
def constants() -> PhysicalConstants:
    return PhysicalConstants()


@pytest.fixture
def crosstalk_rabi(constants: PhysicalConstants) -> float:
    """|A_par| / sqrt(3), about 1.247 MHz."""
    return constants.hyperfine_gap / SQRT3


@pytest.fixture
def small_ensemble() -> EnsembleConfig:
    """A coarse 21-member grid at 0.64 MHz FWHM, enough for shape checks."""
    return EnsembleConfig(fwhm=0.64, n_members=21)


@pytest.fixture
def propagation() -> PropagationConfig:
    return PropagationConfig()


@pytest.fixture
def quick_run() -> RunConfig:
    """Run settings small enough for CLI tests."""
    return RunConfig(
        n_members=11,
        pulses=PulseSettings(min_samples=100),
        optimizer=OptimizerSettings(max_iterations=8),
    )


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch: pytest.MonkeyPatch, tmp_path_factory: pytest.TempPathFactory) -> None:
    """Keep NVDNP_* variables and a stray ./.nvdnp/config.toml out of every test."""
    for var in ("NVDNP_CONFIG", "NVDNP_CONSTANTS", "NVDNP_MEMBERS", "NVDNP_SPAN",
                "NVDNP_DT_US", "NVDNP_WORKERS"):
        monkeypatch.delenv(var, raising=False)
    monkeypatch.chdir(tmp_path_factory.mktemp("cwd"))


ALL_FAMILIES = list(PulseFamily)

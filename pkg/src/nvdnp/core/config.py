"""Configuration loading (TOML, constants file, .env and env vars)."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import sys
from dataclasses import asdict, replace
from enum import Enum
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from dotenv import load_dotenv

from nvdnp.types.config import (
    OptimizerSettings,
    PropagationConfig,
    PropagationMethod,
    PulseSettings,
    RunConfig,
)
from nvdnp.types.physics import PhysicalConstants
from nvdnp.types.pulses import SlrSpec

logger = logging.getLogger(__name__)

# .env values never replace variables already set in the environment
load_dotenv()

CONFIG_ENV = "NVDNP_CONFIG"
CONSTANTS_ENV = "NVDNP_CONSTANTS"
DEFAULT_CONFIG = Path(".nvdnp") / "config.toml"

CONSTANT_KEYS: dict[str, str] = {
    "D_mhz": "D",
    "gamma_e_mhz_per_g": "gamma_e",
    "gamma_n_mhz_per_g": "gamma_n",
    "Q_mhz": "Q",
    "A_par_mhz": "A_par",
    "A_perp_mhz": "A_perp",
    "B0_g": "B0",
}

SECTION_KEYS: dict[str, set[str]] = {
    "constants": set(CONSTANT_KEYS),
    "ensemble": {"members", "span_factor"},
    "propagation": {"dt_us", "method"},
    "pulses": {
        "min_samples", "gaussian_truncation", "slr_length_us", "slr_bandwidth_mhz",
        "slr_samples", "slr_in_band_ripple", "slr_out_band_ripple",
    },
    "optimizer": {"max_iterations", "xatol", "fatol", "workers"},
}

ENV_OVERRIDES: dict[str, tuple[str, str, type]] = {
    "NVDNP_MEMBERS": ("ensemble", "members", int),
    "NVDNP_SPAN": ("ensemble", "span_factor", float),
    "NVDNP_DT_US": ("propagation", "dt_us", float),
    "NVDNP_WORKERS": ("optimizer", "workers", int),
}


class ConfigError(ValueError):
    """Raised for unreadable configuration files or invalid settings."""


def _read_toml(path: Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _check_sections(data: dict[str, Any], source: str) -> None:
    for section, values in data.items():
        if section not in SECTION_KEYS:
            raise ConfigError(f"{source}: unknown section [{section}]")
        if not isinstance(values, dict):
            raise ConfigError(f"{source}: [{section}] must be a table")
        unknown = set(values) - SECTION_KEYS[section]
        if unknown:
            keys = ", ".join(sorted(unknown))
            raise ConfigError(f"{source}: unknown keys in [{section}]: {keys}")


def load_toml_config(
    path: str | Path | None = None, cwd: str | Path | None = None
) -> dict[str, Any]:
    """Load the run configuration file.

    Looks at the explicit path, then $NVDNP_CONFIG, then .nvdnp/config.toml
    under cwd. An explicit or env-named file must exist.
    """
    if path is None and (env_path := os.environ.get(CONFIG_ENV)):
        path = env_path
    if path is not None:
        data = _read_toml(Path(path))
        source = str(path)
    else:
        default = Path(cwd or Path.cwd()) / DEFAULT_CONFIG
        if not default.exists():
            return {}
        data = _read_toml(default)
        source = str(default)
    _check_sections(data, source)
    logger.debug("loaded config from %s", source)
    return data


def load_constants_file(path: str | Path | None = None) -> dict[str, float]:
    """Read `key = value` constants (flat, or under a [constants] table)."""
    if path is None:
        path = os.environ.get(CONSTANTS_ENV)
        if not path:
            return {}
    data = _read_toml(Path(path))
    if "constants" in data and isinstance(data["constants"], dict):
        data = data["constants"]
    unknown = set(data) - set(CONSTANT_KEYS)
    if unknown:
        raise ConfigError(
            f"{path}: unknown constants {', '.join(sorted(unknown))} "
            f"(expected {', '.join(CONSTANT_KEYS)})"
        )
    out: dict[str, float] = {}
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path}: {key} must be a number, got {value!r}")
        out[key] = float(value)
    logger.debug("loaded %d constants from %s", len(out), path)
    return out


def load_env_config() -> dict[str, dict[str, Any]]:
    """Overrides from NVDNP_* environment variables, as config sections."""
    config: dict[str, dict[str, Any]] = {}
    for var, (section, key, kind) in ENV_OVERRIDES.items():
        raw = os.environ.get(var)
        if raw is None or raw == "":
            continue
        try:
            value = kind(raw)
        except ValueError as exc:
            raise ConfigError(f"{var}={raw!r} is not a valid {kind.__name__}") from exc
        config.setdefault(section, {})[key] = value
    return config


def merge_sections(*layers: dict[str, dict[str, Any]]) -> dict[str, dict[str, Any]]:
    """Later layers win key by key."""
    merged: dict[str, dict[str, Any]] = {}
    for layer in layers:
        for section, values in layer.items():
            merged.setdefault(section, {}).update(values)
    return merged


def build_run_config(sections: dict[str, dict[str, Any]]) -> RunConfig:
    """Turn merged config sections into validated settings."""
    s = {name: sections.get(name, {}) for name in SECTION_KEYS}
    try:
        constants = PhysicalConstants(
            **{CONSTANT_KEYS[k]: float(v) for k, v in s["constants"].items()}
        )
        propagation = PropagationConfig(
            dt=float(s["propagation"].get("dt_us", PropagationConfig().dt)),
            method=PropagationMethod(s["propagation"].get("method", "exponential")),
        )
        p = s["pulses"]
        defaults = SlrSpec()
        slr = SlrSpec(
            length=float(p.get("slr_length_us", defaults.length)),
            bandwidth=float(p.get("slr_bandwidth_mhz", defaults.bandwidth)),
            n_samples=int(p.get("slr_samples", defaults.n_samples)),
            in_band_ripple=float(p.get("slr_in_band_ripple", defaults.in_band_ripple)),
            out_band_ripple=float(p.get("slr_out_band_ripple", defaults.out_band_ripple)),
        )
        pulse_defaults = PulseSettings()
        pulses = PulseSettings(
            min_samples=int(p.get("min_samples", pulse_defaults.min_samples)),
            gaussian_truncation=float(
                p.get("gaussian_truncation", pulse_defaults.gaussian_truncation)
            ),
            slr=slr,
        )
        o = s["optimizer"]
        opt_defaults = OptimizerSettings()
        optimizer = OptimizerSettings(
            max_iterations=int(o.get("max_iterations", opt_defaults.max_iterations)),
            xatol=float(o.get("xatol", opt_defaults.xatol)),
            fatol=float(o.get("fatol", opt_defaults.fatol)),
            workers=int(o.get("workers", opt_defaults.workers)),
        )
        run = RunConfig(
            constants=constants,
            n_members=int(s["ensemble"].get("members", 201)),
            span_factor=float(s["ensemble"].get("span_factor", 6.0)),
            propagation=propagation,
            pulses=pulses,
            optimizer=optimizer,
        )
        run.ensemble(1.0)  # validates members and span
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return run


def resolve_run_config(
    config_path: str | Path | None = None,
    constants_path: str | Path | None = None,
    cli_overrides: dict[str, dict[str, Any]] | None = None,
    cwd: str | Path | None = None,
) -> RunConfig:
    """defaults < config TOML < constants file < env vars < CLI flags."""
    file_layer = load_toml_config(config_path, cwd)
    constants_layer = {"constants": load_constants_file(constants_path)}
    merged = merge_sections(file_layer, constants_layer, load_env_config(), cli_overrides or {})
    logger.debug("resolved config sections: %s", merged)
    return build_run_config(merged)


def _canonical(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    return value


def config_hash(run: RunConfig, extra: dict[str, Any] | None = None) -> str:
    """First 12 hex digits of SHA-256 over the canonical JSON of the settings."""
    payload = _canonical(asdict(replace(run, output=None)))
    if extra:
        payload["command"] = _canonical(extra)
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


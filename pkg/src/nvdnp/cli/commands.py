"""CLI subcommands: profiles, DNP runs, optimization and the reference table."""

from __future__ import annotations

import functools
import sys
from collections.abc import Callable, Sequence
from dataclasses import asdict, replace
from pathlib import Path
from typing import Any, TypeVar

import click
import numpy as np

from nvdnp.cli.output import write_csv
from nvdnp.cli.state import EXIT_INVALID, EXIT_NOT_CONVERGED, CliState
from nvdnp.observability.tracing import span
from nvdnp.types.config import RunConfig
from nvdnp.types.pulses import PulseEnvelope, PulseFamily
from nvdnp.types.results import OptimizationProblem, OptimizationResult

F = TypeVar("F", bound=Callable[..., Any])

FAMILIES = [f.value for f in PulseFamily]

pass_state = click.make_pass_decorator(CliState)


def handle_errors(fn: F) -> F:
    """Run the command inside a span; report ValueError as `Error: ...` and exit 2."""
    name = "cli." + fn.__name__.removesuffix("_cmd")

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            with span(name):
                return fn(*args, **kwargs)
        except ValueError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_INVALID)

    return wrapper  # type: ignore[return-value]


def _families(values: Sequence[str]) -> list[PulseFamily]:
    if not values or "all" in values:
        return list(PulseFamily)
    return [PulseFamily(v) for v in dict.fromkeys(values)]


def _linewidths(values: Sequence[float], default: Sequence[float] | None = None) -> list[float]:
    lws = list(values) or list(default or [])
    if not lws:
        raise click.UsageError("at least one --linewidth is required")
    for lw in lws:
        if not lw > 0:
            raise click.BadParameter(
                f"linewidth must be positive, got {lw}", param_hint="--linewidth"
            )
    return lws


def _parse_params(items: Sequence[str]) -> dict[str, float]:
    params: dict[str, float] = {}
    for item in items:
        name, sep, raw = item.partition("=")
        if not sep or not name.strip():
            raise ValueError(f"--param expects name=value, got {item!r}")
        try:
            params[name.strip()] = float(raw)
        except ValueError:
            raise ValueError(f"--param {name.strip()}: {raw!r} is not a number") from None
    return params


def _problem(run: RunConfig, family: PulseFamily, linewidth: float) -> OptimizationProblem:
    from nvdnp.optimize.optimizer import make_problem

    return make_problem(
        family,
        linewidth,
        constants=run.constants,
        n_members=run.n_members,
        span_factor=run.span_factor,
        propagation=run.propagation,
        pulses=run.pulses,
        settings=run.optimizer,
    )


def _run_optimizations(
    state: CliState, families: Sequence[PulseFamily], linewidths: Sequence[float]
) -> list[OptimizationResult]:
    from nvdnp.optimize.runner import run_cells_sync

    problems = [_problem(state.run, f, lw) for f in families for lw in linewidths]
    return run_cells_sync(problems, state.run.optimizer.workers, state.printer.print_progress)


def _hash(run: RunConfig, command: str, **args: Any) -> str:
    from nvdnp.core.config import config_hash

    return config_hash(run, {"name": command, **args})


def _write_envelope(env: PulseEnvelope, out: str | Path | None, digest: str) -> None:
    """Full-precision envelope CSV to out, or to stdout when out is None."""
    from nvdnp.pulses.io import render_envelope_csv, write_envelope_csv

    comment = f"config_hash={digest}"
    if out is None:
        click.echo(render_envelope_csv(env, comment), nl=False)
    else:
        write_envelope_csv(env, out, comment)


# --- profile ---


@click.command("profile")
@click.option("--family", type=click.Choice(FAMILIES), default="square", show_default=True)
@click.option("--rabi", type=float, default=None,
              help="Rabi or peak Rabi, MHz (default |A_par|/sqrt(3))")
@click.option("--duration-scale", type=float, default=1.0, show_default=True)
@click.option("--detuning", type=float, default=0.0, show_default=True,
              help="Carrier detuning, MHz")
@click.option("--envelope", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Profile an envelope CSV (time_us, rabi_mhz) instead of a family")
@click.option("--grid-min", type=float, default=-6.0, show_default=True)
@click.option("--grid-max", type=float, default=6.0, show_default=True)
@click.option("--points", type=int, default=601, show_default=True)
@click.option("--out", "-o", default=None, help="Output CSV (default: stdout)")
@pass_state
@handle_errors
def profile_cmd(
    state: CliState,
    family: str,
    rabi: float | None,
    duration_scale: float,
    detuning: float,
    envelope: str | None,
    grid_min: float,
    grid_max: float,
    points: int,
    out: str | None,
) -> None:
    """Inversion vs. detuning of a single pulse on an isolated transition."""
    from nvdnp.pulses.io import read_envelope_csv
    from nvdnp.pulses.profile import excitation_profile
    from nvdnp.pulses.shapes import crosstalk_free_rabi, gaussian_envelope, square_envelope
    from nvdnp.pulses.slr import slr_design
    from nvdnp.types.pulses import GaussianSpec, SquareSpec

    run = state.run
    if points < 2 or not grid_max > grid_min:
        raise ValueError("need --points >= 2 and --grid-max > --grid-min")
    if rabi is None:
        rabi = crosstalk_free_rabi(run.constants.hyperfine_gap)

    if envelope is not None:
        env = read_envelope_csv(envelope, detuning)
    elif family == "square":
        env = square_envelope(
            SquareSpec(rabi, duration_scale, detuning), n_samples=run.pulses.min_samples
        )
    elif family == "gaussian":
        env = gaussian_envelope(
            GaussianSpec(rabi, detuning, run.pulses.gaussian_truncation),
            n_samples=run.pulses.min_samples,
        )
    else:
        env = slr_design(replace(run.pulses.slr, detuning=detuning))

    grid = np.linspace(grid_min, grid_max, points)
    inversion = excitation_profile(env, grid)
    digest = _hash(run, "profile", family=family, rabi=rabi, duration_scale=duration_scale,
                   detuning=detuning, envelope=envelope, grid=[grid_min, grid_max, points])
    write_csv(out, ["detuning_mhz", "inversion"], zip(grid, inversion, strict=True), digest)


# --- dnp ---


@click.command("dnp")
@click.option("--family", type=click.Choice(FAMILIES), required=True)
@click.option("--linewidth", type=float, required=True, help="ODMR FWHM, MHz")
@click.option("--param", "params", multiple=True, help="name=value, repeatable")
@click.option("--from-table", is_flag=True,
              help="Start from the published optimum at this linewidth")
@click.option("--out", "-o", default=None, help="Output CSV (default: stdout)")
@pass_state
@handle_errors
def dnp_cmd(
    state: CliState,
    family: str,
    linewidth: float,
    params: tuple[str, ...],
    from_table: bool,
    out: str | None,
) -> None:
    """Simulate one DNP cycle over the ensemble and print P_avg."""
    from nvdnp.optimize.families import analytic_guess, build_pulse_pair
    from nvdnp.optimize.reference import reference_params
    from nvdnp.protocol.dnp import evaluate_ensemble

    run = state.run
    fam = PulseFamily(family)
    values = analytic_guess(fam, run.constants, run.pulses)
    if from_table:
        values.update(reference_params(fam, linewidth))
    values.update(_parse_params(params))

    pair = build_pulse_pair(fam, values, run.pulses)
    outcome = evaluate_ensemble(run.constants, pair, run.ensemble(linewidth), run.propagation)
    digest = _hash(run, "dnp", family=family, linewidth=linewidth, params=values)
    rows = zip(outcome.fields, outcome.offsets, outcome.weights, outcome.populations, strict=True)
    write_csv(
        out,
        ["field_g", "offset_mhz", "weight", "p_mI0"],
        rows,
        digest,
        trailer=[f"p_avg={outcome.p_avg:.6g}"],
    )
    click.echo(f"P_avg={outcome.p_avg:.6g}", err=out is None)


# --- optimize ---


@click.command("optimize")
@click.option("--family", "families", multiple=True, type=click.Choice([*FAMILIES, "all"]),
              help="Family to optimize, repeatable (default: all)")
@click.option("--linewidth", "linewidths", multiple=True, type=float, help="FWHM, MHz, repeatable")
@click.option("--out", "-o", default=None, help="Output CSV (default: stdout)")
@pass_state
@handle_errors
def optimize_cmd(
    state: CliState, families: tuple[str, ...], linewidths: tuple[float, ...], out: str | None
) -> None:
    """Optimal pulse parameters per family and linewidth."""
    from nvdnp.optimize.reference import compare, layout_rows

    lws = _linewidths(linewidths)
    fams = _families(families)
    results = _run_optimizations(state, fams, lws)
    rows = layout_rows(lws, results)
    digest = _hash(state.run, "optimize", families=[f.value for f in fams], linewidths=lws)
    write_csv(out, [str(c) for c in rows[0]], rows[1:], digest)
    state.printer.print_comparison(compare((r.family, r.linewidth, r.p_avg) for r in results))
    if not all(r.converged for r in results):
        click.echo("Error: some optimizations did not converge", err=True)
        sys.exit(EXIT_NOT_CONVERGED)


# --- limit ---


@click.command("limit")
@click.option("--linewidth", "linewidths", multiple=True, type=float,
              help="FWHM, MHz, repeatable (default: the reference linewidths)")
@click.option("--closed-form", is_flag=True, help="Add the continuum closed-form column")
@click.option("--out", "-o", default=None, help="Output CSV (default: stdout)")
@pass_state
@handle_errors
def limit_cmd(
    state: CliState, linewidths: tuple[float, ...], closed_form: bool, out: str | None
) -> None:
    """Step-function polarization limit per linewidth."""
    from nvdnp.optimize.reference import LINEWIDTHS
    from nvdnp.protocol.dnp import evaluate_limit
    from nvdnp.protocol.ensemble import limit_average_closed_form

    run = state.run
    lws = _linewidths(linewidths, LINEWIDTHS)
    header = ["linewidth_mhz", "p_limit"]
    if closed_form:
        header.append("closed_form")
    rows: list[list[float]] = []
    for lw in lws:
        row = [lw, evaluate_limit(run.constants, run.ensemble(lw)).p_avg]
        if closed_form:
            row.append(limit_average_closed_form(run.ensemble(lw), run.constants))
        rows.append(row)
    write_csv(out, header, rows, _hash(run, "limit", linewidths=lws))


# --- table1 ---


@click.command("table1")
@click.option("--linewidth", "linewidths", multiple=True, type=float,
              help="FWHM, MHz, repeatable (default: the reference linewidths)")
@click.option("--family", "families", multiple=True, type=click.Choice([*FAMILIES, "all"]),
              help="Family, repeatable (default: all)")
@click.option("--out", "-o", default=None, help="Output CSV (default: stdout)")
@pass_state
@handle_errors
def table1_cmd(
    state: CliState, linewidths: tuple[float, ...], families: tuple[str, ...], out: str | None
) -> None:
    """Optimize every family at every linewidth and emit the full parameter table."""
    from nvdnp.optimize.optimizer import improvement_ratio
    from nvdnp.optimize.reference import LINEWIDTHS, compare, layout_rows
    from nvdnp.protocol.dnp import evaluate_limit

    run = state.run
    lws = _linewidths(linewidths, LINEWIDTHS)
    fams = _families(families)
    with span("cli.table1.optimize", {"cells": len(lws) * len(fams)}):
        results = _run_optimizations(state, fams, lws)
    limits = {lw: evaluate_limit(run.constants, run.ensemble(lw)).p_avg for lw in lws}
    improvement: dict[float, float] | None = None
    if PulseFamily.SLR in fams and PulseFamily.SQUARE in fams:
        improvement = {lw: improvement_ratio(lw, results) for lw in lws}

    rows = layout_rows(lws, results, limits, improvement)
    digest = _hash(run, "table1", families=[f.value for f in fams], linewidths=lws)
    write_csv(out, [str(c) for c in rows[0]], rows[1:], digest)
    state.printer.print_comparison(compare((r.family, r.linewidth, r.p_avg) for r in results))
    if not all(r.converged for r in results):
        click.echo("Error: some optimizations did not converge", err=True)
        sys.exit(EXIT_NOT_CONVERGED)


# --- reproduce ---


@click.command("reproduce")
@click.option("--linewidth", "linewidths", multiple=True, type=float,
              help="Reference linewidth, MHz, repeatable (default: all)")
@click.option("--family", "families", multiple=True, type=click.Choice([*FAMILIES, "all"]),
              help="Family, repeatable (default: all)")
@click.option("--out", "-o", default=None, help="Output CSV (default: stdout)")
@pass_state
@handle_errors
def reproduce_cmd(
    state: CliState, linewidths: tuple[float, ...], families: tuple[str, ...], out: str | None
) -> None:
    """Simulate the published optimal parameters and compare polarizations."""
    from nvdnp.optimize.families import build_pulse_pair
    from nvdnp.optimize.reference import (
        LINEWIDTHS,
        compare,
        reference_limit,
        reference_params,
        reference_polarization,
    )
    from nvdnp.protocol.dnp import evaluate_ensemble, evaluate_limit

    run = state.run
    lws = _linewidths(linewidths, LINEWIDTHS)
    fams = _families(families)
    rows: list[list[str | float]] = []
    cells: list[tuple[PulseFamily, float, float]] = []
    for fam in fams:
        for lw in lws:
            pair = build_pulse_pair(fam, reference_params(fam, lw), run.pulses)
            p = evaluate_ensemble(run.constants, pair, run.ensemble(lw), run.propagation).p_avg
            ref = reference_polarization(fam, lw)
            rows.append([fam.value, lw, p, ref, p - ref])
            cells.append((fam, lw, p))
    for lw in lws:
        p = evaluate_limit(run.constants, run.ensemble(lw)).p_avg
        ref = reference_limit(lw)
        rows.append(["limit", lw, p, ref, p - ref])

    digest = _hash(run, "reproduce", families=[f.value for f in fams], linewidths=lws)
    write_csv(out, ["family", "linewidth_mhz", "p_avg", "reference", "deviation"], rows, digest)
    state.printer.print_comparison(compare(cells), title="Published parameters")


# --- slr-design ---


@click.command("slr-design")
@click.option("--length", type=float, default=None, help="Pulse length, us")
@click.option("--bandwidth", type=float, default=None, help="Inversion bandwidth, MHz")
@click.option("--samples", type=int, default=None, help="Number of hard pulses")
@click.option("--in-band-ripple", type=float, default=None)
@click.option("--out-band-ripple", type=float, default=None)
@click.option("--out", "-o", default=None, help="Output CSV (default: stdout)")
@pass_state
@handle_errors
def slr_design_cmd(
    state: CliState,
    length: float | None,
    bandwidth: float | None,
    samples: int | None,
    in_band_ripple: float | None,
    out_band_ripple: float | None,
    out: str | None,
) -> None:
    """Design the band-selective inversion pulse and dump its waveform."""
    from nvdnp.pulses.slr import slr_design

    spec = state.run.pulses.slr
    changes = {
        "length": length,
        "bandwidth": bandwidth,
        "n_samples": samples,
        "in_band_ripple": in_band_ripple,
        "out_band_ripple": out_band_ripple,
    }
    spec = replace(spec, **{k: v for k, v in changes.items() if v is not None})
    env = slr_design(spec)
    _write_envelope(env, out, _hash(state.run, "slr-design", spec=asdict(spec)))
    state.printer.print_summary("SLR pulse", [
        ("length", f"{env.duration:g} us"),
        ("samples", str(len(env.samples))),
        ("peak Rabi", f"{env.peak:.4f} MHz"),
        ("area", f"{env.area:.4f}"),
    ])


# --- shapes ---


@click.command("shapes")
@click.option("--linewidth", type=float, default=0.5, show_default=True, help="FWHM, MHz")
@click.option("--optimize/--from-table", "run_optimizer", default=False,
              help="Optimize at the linewidth instead of interpolating the published optimum")
@click.option("--out", "-o", "out_dir", default=".", show_default=True, help="Output directory")
@pass_state
@handle_errors
def shapes_cmd(state: CliState, linewidth: float, run_optimizer: bool, out_dir: str) -> None:
    """Write the first-pulse envelope of every family as <family>.csv."""
    from nvdnp.optimize.families import build_pulse_pair
    from nvdnp.optimize.reference import interpolated_params

    run = state.run
    if run_optimizer:
        results = _run_optimizations(state, list(PulseFamily), [linewidth])
        params = {r.family: r.params for r in results}
    else:
        params = {f: interpolated_params(f, linewidth) for f in PulseFamily}
    target = Path(out_dir)
    for fam in PulseFamily:
        env = build_pulse_pair(fam, params[fam], run.pulses).env_m1
        digest = _hash(run, "shapes", family=fam.value, linewidth=linewidth, params=params[fam])
        _write_envelope(env, target / f"{fam.value}.csv", digest)
    click.echo(f"Wrote {len(params)} envelopes to {target}")


# --- config ---


@click.group("config")
def config_cmd() -> None:
    """Inspect the resolved configuration."""


@config_cmd.command("show")
@pass_state
def config_show(state: CliState) -> None:
    """Print every resolved setting and the config hash."""
    from nvdnp.core.config import config_hash

    def emit(prefix: str, value: Any) -> None:
        if isinstance(value, dict):
            for k, v in value.items():
                emit(f"{prefix}.{k}" if prefix else str(k), v)
        else:
            click.echo(f"{prefix} = {getattr(value, 'value', value)}")

    emit("", asdict(replace(state.run, output=None)))
    click.echo(f"config_hash = {config_hash(state.run)}")

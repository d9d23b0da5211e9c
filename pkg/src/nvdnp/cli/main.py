"""CLI entry point for nvdnp."""

from __future__ import annotations

import logging
import sys
from typing import Any

import click

from nvdnp.cli.output import PlainPrinter
from nvdnp.cli.state import EXIT_INVALID, CliState
from nvdnp.ui.terminal import RichPrinter


def configure_logging(verbose: bool, use_rich: bool) -> None:
    handler: logging.Handler
    if use_rich:
        from rich.console import Console
        from rich.logging import RichHandler

        handler = RichHandler(console=Console(stderr=True), show_path=False)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        handlers=[handler],
        force=True,
    )


def _cli_overrides(
    members: int | None, span: float | None, dt: float | None, method: str | None,
    workers: int | None, samples: int | None,
) -> dict[str, dict[str, Any]]:
    overrides: dict[str, dict[str, Any]] = {}
    pairs = (
        ("ensemble", "members", members),
        ("ensemble", "span_factor", span),
        ("propagation", "dt_us", dt),
        ("propagation", "method", method),
        ("optimizer", "workers", workers),
        ("pulses", "min_samples", samples),
    )
    for section, key, value in pairs:
        if value is not None:
            overrides.setdefault(section, {})[key] = value
    return overrides


@click.group()
@click.option("--config", "config_path", default=None, help="Run configuration TOML")
@click.option("--constants", "constants_path", default=None, help="Physical constants file")
@click.option("--members", type=int, default=None, help="Ensemble members (odd)")
@click.option("--span", type=float, default=None, help="Grid half-width in FWHM units")
@click.option("--dt", type=float, default=None,
              help="Largest rk4 step, us (the exponential method is exact per sample)")
@click.option("--samples", type=int, default=None,
              help="Samples per square or Gaussian pulse (sets exponential accuracy)")
@click.option(
    "--method",
    type=click.Choice(["exponential", "rk4"]),
    default=None,
    help="Propagation method",
)
@click.option("--workers", type=int, default=None, help="Worker processes for optimization")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output")
@click.option("--rich/--no-rich", default=None, help="Rich terminal output (default: auto)")
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: str | None,
    constants_path: str | None,
    members: int | None,
    span: float | None,
    dt: float | None,
    samples: int | None,
    method: str | None,
    workers: int | None,
    verbose: bool,
    rich: bool | None,
) -> None:
    """nvdnp -- 14N polarization pulses for NV ensembles.

    \b
    Usage:
      nvdnp profile --family square --rabi 1.247
      nvdnp dnp --family slr --linewidth 1.48 --from-table
      nvdnp optimize --family all --linewidth 0.64
      nvdnp limit
      nvdnp table1 --out table.csv
    """
    from nvdnp.core.config import resolve_run_config

    # Determine rich mode: explicit flag > TTY auto-detection
    use_rich = rich if rich is not None else sys.stderr.isatty()
    configure_logging(verbose, use_rich)

    try:
        overrides = _cli_overrides(members, span, dt, method, workers, samples)
        run = resolve_run_config(config_path, constants_path, overrides)
    except ValueError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_INVALID)
    ctx.obj = CliState(run=run, printer=RichPrinter() if use_rich else PlainPrinter())


def _register_subcommands() -> None:
    """Register CLI subcommands."""
    from nvdnp.cli.commands import (
        config_cmd,
        dnp_cmd,
        limit_cmd,
        optimize_cmd,
        profile_cmd,
        reproduce_cmd,
        shapes_cmd,
        slr_design_cmd,
        table1_cmd,
    )

    cli.add_command(profile_cmd, "profile")
    cli.add_command(dnp_cmd, "dnp")
    cli.add_command(optimize_cmd, "optimize")
    cli.add_command(limit_cmd, "limit")
    cli.add_command(table1_cmd, "table1")
    cli.add_command(reproduce_cmd, "reproduce")
    cli.add_command(slr_design_cmd, "slr-design")
    cli.add_command(shapes_cmd, "shapes")
    cli.add_command(config_cmd, "config")


_register_subcommands()


def main() -> None:
    """Entry point."""
    cli()


if __name__ == "__main__":
    main()

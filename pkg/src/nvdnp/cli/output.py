"""CSV emission and plain-text summaries for non-rich mode."""

from __future__ import annotations

import csv
import io
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

import click

from nvdnp.optimize.reference import CellComparison
from nvdnp.types.results import OptimizationResult

Cell = str | float | int


def format_value(value: Cell) -> str:
    """Six significant digits for numbers; strings pass through."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, float)):
        return f"{value:.6g}"
    return value


def render_csv(
    header: Sequence[str] | None,
    rows: Iterable[Sequence[Cell]],
    config_hash: str,
    trailer: Sequence[str] = (),
) -> str:
    buf = io.StringIO()
    buf.write(f"# config_hash={config_hash}\n")
    writer = csv.writer(buf, lineterminator="\n")
    if header is not None:
        writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    for line in trailer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def write_csv(
    out: str | Path | None,
    header: Sequence[str] | None,
    rows: Iterable[Sequence[Cell]],
    config_hash: str,
    trailer: Sequence[str] = (),
) -> None:
    """Write to out, or to stdout when out is None."""
    text = render_csv(header, rows, config_hash, trailer)
    if out is None:
        click.echo(text, nl=False)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


class PlainPrinter:
    """Same surface as the rich printer, as plain lines on stderr."""

    def print_progress(self, done: int, total: int, result: OptimizationResult) -> None:
        flag = "" if result.converged else " (not converged)"
        print(
            f"[{done}/{total}] {result.family.value} fwhm={result.linewidth:g} "
            f"P={result.p_avg:.4f}{flag}",
            file=sys.stderr,
        )

    def print_comparison(self, rows: Iterable[CellComparison], title: str = "Polarization") -> None:
        print(title, file=sys.stderr)
        for row in rows:
            ref = "-" if row.reference is None else f"{row.reference:.3f}"
            delta = "-" if row.delta is None else f"{row.delta:+.3f}"
            print(
                f"  {row.family.value:<9} {row.linewidth:>5g}  P={row.p_avg:.4f}  "
                f"published={ref}  delta={delta}",
                file=sys.stderr,
            )

    def print_summary(self, title: str, items: Sequence[tuple[str, str]]) -> None:
        print(title, file=sys.stderr)
        for label, value in items:
            print(f"  {label}: {value}", file=sys.stderr)

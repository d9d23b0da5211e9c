"""Rich-powered summaries on stderr."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from nvdnp.optimize.reference import CellComparison
from nvdnp.types.results import OptimizationResult

# ── Palette ──────────────────────────────────────────────────────────────────

STYLE_LABEL = "bold #94a3b8"      # slate
STYLE_VALUE = "#e2e8f0"           # light
STYLE_FAMILY = "bold #a78bfa"     # violet
STYLE_GOOD = "#34d399"            # green
STYLE_BAD = "#f87171"             # red
STYLE_DIM = "dim #7c7c8a"

TOLERANCE = 0.02


class RichPrinter:
    """Tables and progress lines for the CLI."""

    def __init__(self, console: Console | None = None) -> None:
        self._console = console or Console(stderr=True)

    def print_progress(self, done: int, total: int, result: OptimizationResult) -> None:
        line = Text()
        line.append(f"  [{done}/{total}] ", style=STYLE_DIM)
        line.append(result.family.value, style=STYLE_FAMILY)
        line.append(f"  fwhm={result.linewidth:g} MHz  ", style=STYLE_VALUE)
        line.append(f"P={result.p_avg:.4f}", style=STYLE_GOOD if result.converged else STYLE_BAD)
        if not result.converged:
            line.append("  (not converged)", style=STYLE_BAD)
        self._console.print(line)

    def print_comparison(self, rows: Iterable[CellComparison], title: str = "Polarization") -> None:
        """Achieved vs. published P(m_I=0), deltas beyond the tolerance in red."""
        tbl = Table(title=title, show_edge=False, padding=(0, 1))
        tbl.add_column("family", style=STYLE_FAMILY, no_wrap=True)
        tbl.add_column("fwhm, MHz", justify="right")
        tbl.add_column("P_avg", justify="right", style=STYLE_VALUE)
        tbl.add_column("published", justify="right")
        tbl.add_column("delta", justify="right")
        for row in rows:
            if row.reference is None or row.delta is None:
                ref, delta = Text("-", style=STYLE_DIM), Text("-", style=STYLE_DIM)
            else:
                ref = Text(f"{row.reference:.3f}")
                style = STYLE_GOOD if abs(row.delta) <= TOLERANCE else STYLE_BAD
                delta = Text(f"{row.delta:+.3f}", style=style)
            tbl.add_row(row.family.value, f"{row.linewidth:g}", f"{row.p_avg:.4f}", ref, delta)
        self._console.print(tbl)

    def print_summary(self, title: str, items: Sequence[tuple[str, str]]) -> None:
        tbl = Table(show_header=False, show_edge=False, show_lines=False, padding=(0, 1))
        tbl.add_column(style=STYLE_LABEL, justify="right", no_wrap=True)
        tbl.add_column(style=STYLE_VALUE, no_wrap=True)
        for label, value in items:
            tbl.add_row(label, value)
        self._console.print(Panel(tbl, title=title, border_style="#3f3f50", expand=False))

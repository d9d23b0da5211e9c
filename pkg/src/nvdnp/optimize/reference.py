"""Published optimal parameters and polarizations, and the table layout they use.

Rows are keyed by family and parameter name; every row has one value per
entry of LINEWIDTHS (MHz).
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from nvdnp.types.pulses import PulseFamily
from nvdnp.types.results import OptimizationResult

LINEWIDTHS: tuple[float, ...] = (0.01, 0.15, 0.32, 0.43, 0.64, 0.95, 1.27, 1.48, 1.79, 2.00)

PARAMETERS: dict[PulseFamily, dict[str, tuple[float, ...]]] = {
    PulseFamily.SQUARE: {
        "rabi_m1": (1.13, 1.14, 1.16, 1.18, 1.20, 1.25, 1.32, 1.37, 1.48, 1.61),
        "rabi_p1": (1.24, 1.27, 1.34, 1.38, 1.44, 1.57, 1.70, 1.80, 1.96, 2.07),
        "delta_m1": (0.03, 0.01, -0.04, -0.06, -0.10, -0.18, -0.27, -0.34, -0.46, -0.57),
        "delta_p1": (0.00, -0.03, -0.09, -0.13, -0.19, -0.30, -0.44, -0.53, -0.69, -0.80),
        "dT_m1": (1.1, 1.4, 1.9, 2.2, 2.5, 3.0, 3.5, 3.8, 4.3, 4.6),
        "dT_p1": (0.0, 0.0, 0.1, 0.1, 0.1, 0.0, 0.0, -0.1, -0.1, -0.2),
    },
    PulseFamily.GAUSSIAN: {
        "rabi": (1.00, 1.27, 1.42, 1.48, 1.58, 1.74, 1.93, 2.06, 2.28, 2.45),
        "delta": (0.00, -0.02, -0.06, -0.09, -0.14, -0.24, -0.36, -0.44, -0.59, -0.69),
    },
    PulseFamily.SLR: {
        "delta": (-0.84, -0.87, -0.89, -0.89, -0.95, -0.94, -0.94, -0.95, -0.96, -0.96),
    },
}

POLARIZATION: dict[PulseFamily, tuple[float, ...]] = {
    PulseFamily.SQUARE: (0.997, 0.97, 0.91, 0.87, 0.81, 0.73, 0.68, 0.64, 0.61, 0.58),
    PulseFamily.GAUSSIAN: (1.00, 0.97, 0.91, 0.87, 0.81, 0.73, 0.68, 0.65, 0.61, 0.59),
    PulseFamily.SLR: (1.00, 1.00, 0.97, 0.94, 0.90, 0.83, 0.77, 0.74, 0.69, 0.67),
}

LIMIT: tuple[float, ...] = (1.0, 1.0, 0.97, 0.95, 0.91, 0.85, 0.80, 0.77, 0.73, 0.70)


def column(linewidth: float) -> int:
    """Index of linewidth in LINEWIDTHS; ValueError when it is not listed."""
    for i, lw in enumerate(LINEWIDTHS):
        if math.isclose(lw, linewidth, abs_tol=1e-9):
            return i
    listed = ", ".join(f"{lw:g}" for lw in LINEWIDTHS)
    raise ValueError(f"linewidth {linewidth:g} is not a reference column ({listed})")


def reference_params(family: PulseFamily, linewidth: float) -> dict[str, float]:
    i = column(linewidth)
    return {name: row[i] for name, row in PARAMETERS[family].items()}


def interpolated_params(family: PulseFamily, linewidth: float) -> dict[str, float]:
    """Published parameters linearly interpolated between neighbouring linewidth columns."""
    if not LINEWIDTHS[0] <= linewidth <= LINEWIDTHS[-1]:
        raise ValueError(
            f"linewidth {linewidth:g} outside the published range "
            f"{LINEWIDTHS[0]:g}..{LINEWIDTHS[-1]:g} MHz"
        )
    return {
        name: float(np.interp(linewidth, LINEWIDTHS, row))
        for name, row in PARAMETERS[family].items()
    }


def reference_polarization(family: PulseFamily, linewidth: float) -> float:
    return POLARIZATION[family][column(linewidth)]


def reference_limit(linewidth: float) -> float:
    return LIMIT[column(linewidth)]


@dataclass(frozen=True, slots=True)
class CellComparison:
    """Achieved vs. published polarization for one (family, linewidth) cell."""

    family: PulseFamily
    linewidth: float
    p_avg: float
    reference: float | None

    @property
    def delta(self) -> float | None:
        return None if self.reference is None else self.p_avg - self.reference


def compare(values: Iterable[tuple[PulseFamily, float, float]]) -> list[CellComparison]:
    """Pair (family, linewidth, p_avg) triples with the published value where one exists."""
    out: list[CellComparison] = []
    for family, linewidth, p_avg in values:
        try:
            ref: float | None = reference_polarization(family, linewidth)
        except ValueError:
            ref = None
        out.append(CellComparison(family, linewidth, p_avg, ref))
    return out


def layout_rows(
    linewidths: Iterable[float],
    results: Iterable[OptimizationResult],
    limits: Mapping[float, float] | None = None,
    improvement: Mapping[float, float] | None = None,
) -> list[list[str | float]]:
    """Rows of the optimal-parameter table: one per (section, item), one column per linewidth.

    The first row is the header. Missing cells are left empty.
    """
    lws = list(linewidths)
    cells: dict[tuple[PulseFamily, float], OptimizationResult] = {}
    for r in results:
        cells[(r.family, r.linewidth)] = r

    def lookup(family: PulseFamily, lw: float) -> OptimizationResult | None:
        for (f, w), r in cells.items():
            if f is family and math.isclose(w, lw, abs_tol=1e-9):
                return r
        return None

    rows: list[list[str | float]] = [["section", "item", *[f"{lw:g}" for lw in lws]]]
    families = [f for f in PulseFamily if any(lookup(f, lw) for lw in lws)]
    for family in families:
        for name in PARAMETERS[family]:
            row: list[str | float] = [family.value, name]
            for lw in lws:
                r = lookup(family, lw)
                row.append(r.params[name] if r else "")
            rows.append(row)
    for family in families:
        prow: list[str | float] = ["polarization", family.value]
        for lw in lws:
            r = lookup(family, lw)
            prow.append(r.p_avg if r else "")
        rows.append(prow)
    if limits is not None:
        rows.append(["polarization", "limit", *[limits.get(lw, "") for lw in lws]])
    if improvement is not None:
        rows.append(["ratio", "slr/square", *[improvement.get(lw, "") for lw in lws]])
    return rows

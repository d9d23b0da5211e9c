"""Envelope CSV export and import (columns time_us, rabi_mhz)."""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from nvdnp.types.pulses import InvalidPulseError, PulseEnvelope

COLUMNS = ("time_us", "rabi_mhz")

# grid tolerance, relative to the largest time stamp
_GRID_RTOL = 1e-6


def render_envelope_csv(env: PulseEnvelope, comment: str | None = None) -> str:
    """CSV text of env with full float precision, optionally led by a '# comment' line."""
    buf = io.StringIO()
    if comment:
        buf.write(f"# {comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for t, rabi in zip(env.times(), env.samples, strict=True):
        writer.writerow([f"{t:.17g}", f"{rabi:.17g}"])
    return buf.getvalue()


def write_envelope_csv(env: PulseEnvelope, path: str | Path, comment: str | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_envelope_csv(env, comment))
    return path


def read_envelope_csv(path: str | Path, detuning: float = 0.0) -> PulseEnvelope:
    """Read an envelope written by write_envelope_csv (or any uniform grid).

    Lines starting with '#' are skipped; the header row is mandatory. Time
    stamps only need to sit on a uniform grid to within their printed
    precision.
    """
    path = Path(path)
    with open(path, newline="") as f:
        rows = [row for row in csv.reader(f) if row and not row[0].startswith("#")]
    if not rows or tuple(c.strip() for c in rows[0]) != COLUMNS:
        raise InvalidPulseError(f"{path}: expected header {','.join(COLUMNS)}")
    try:
        data = np.array([[float(c) for c in row] for row in rows[1:]], dtype=np.float64)
    except ValueError as exc:
        raise InvalidPulseError(f"{path}: non-numeric value ({exc})") from exc
    if data.ndim != 2 or data.shape[0] < 2 or data.shape[1] != 2:
        raise InvalidPulseError(f"{path}: need at least two rows of two columns")
    t = data[:, 0]
    dt = float(t[-1] - t[0]) / (len(t) - 1)
    grid = t[0] + dt * np.arange(len(t))
    tol = _GRID_RTOL * max(abs(float(t[-1])), dt)
    if not dt > 0 or not np.allclose(t, grid, rtol=0.0, atol=tol):
        raise InvalidPulseError(f"{path}: time_us must be uniformly increasing")
    return PulseEnvelope(data[:, 1], dt, detuning)

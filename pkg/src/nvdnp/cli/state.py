"""State shared between the command group and its subcommands."""

from __future__ import annotations

from dataclasses import dataclass

from nvdnp.cli.output import PlainPrinter
from nvdnp.types.config import RunConfig
from nvdnp.ui.terminal import RichPrinter

EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3


@dataclass(slots=True)
class CliState:
    """Resolved settings and the printer every subcommand uses."""

    run: RunConfig
    printer: RichPrinter | PlainPrinter

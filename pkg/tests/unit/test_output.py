"""Tests for CSV output, printers and tracing."""

from __future__ import annotations

import io
import logging

from rich.console import Console

from nvdnp.cli.output import PlainPrinter, format_value, render_csv, write_csv
from nvdnp.observability.tracing import _NoOpSpan, span
from nvdnp.optimize.reference import compare
from nvdnp.types.pulses import PulseFamily
from nvdnp.types.results import OptimizationResult
from nvdnp.ui.terminal import RichPrinter


def _result(converged=True):
    return OptimizationResult(
        family=PulseFamily.GAUSSIAN,
        linewidth=0.64,
        params={"rabi": 1.58, "delta": -0.14},
        p_avg=0.8123456,
        evaluations=40,
        converged=converged,
    )


class TestCsv:
    def test_format_value(self):
        assert format_value(0.123456789) == "0.123457"
        assert format_value(3) == "3"
        assert format_value(True) == "true"
        assert format_value("slr") == "slr"

    def test_render(self):
        text = render_csv(["a", "b"], [[1.0, "x"], [0.5, "y"]], "0123456789ab", ["p_avg=0.5"])
        assert text.splitlines() == [
            "# config_hash=0123456789ab",
            "a,b",
            "1,x",
            "0.5,y",
            "# p_avg=0.5",
        ]

    def test_write_creates_directories(self, tmp_path):
        out = tmp_path / "deep" / "table.csv"
        write_csv(out, ["x"], [[1.25]], "abc")
        assert out.read_text() == "# config_hash=abc\nx\n1.25\n"


class TestPrinters:
    def test_plain_progress(self, capsys):
        PlainPrinter().print_progress(2, 5, _result(converged=False))
        err = capsys.readouterr().err
        assert "[2/5] gaussian" in err
        assert "not converged" in err

    def test_plain_comparison(self, capsys):
        PlainPrinter().print_comparison(compare([(PulseFamily.SQUARE, 0.64, 0.8)]))
        err = capsys.readouterr().err
        assert "published=0.810" in err
        assert "delta=-0.010" in err

    def test_rich_comparison(self):
        buf = io.StringIO()
        printer = RichPrinter(Console(file=buf, width=120, color_system=None))
        printer.print_comparison(compare([(PulseFamily.SLR, 1.48, 0.75)]), title="Check")
        printer.print_progress(1, 1, _result())
        printer.print_summary("SLR pulse", [("samples", "256")])
        text = buf.getvalue()
        assert "Check" in text
        assert "0.740" in text
        assert "gaussian" in text
        assert "256" in text


class TestTracing:
    def test_span_yields_object(self):
        with span("unit", {"k": 1}) as s:
            s.set_attribute("other", 2)

    def test_noop_span(self):
        s = _NoOpSpan()
        s.set_attribute("k", "v")
        s.record_exception(ValueError("x"))

    def test_span_logs_duration(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="nvdnp.observability.tracing"):
            with span("timed"):
                pass
        assert "timed" in caplog.text
        assert "took" in caplog.text

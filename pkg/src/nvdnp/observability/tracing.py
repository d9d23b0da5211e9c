"""Spans around commands and optimization cells, no-op without OpenTelemetry."""

from __future__ import annotations

import logging
import time
from collections.abc import Generator
from contextlib import contextmanager
from typing import Any

try:
    from opentelemetry import trace

    _HAS_OTEL = True
except ImportError:
    _HAS_OTEL = False

logger = logging.getLogger(__name__)

TRACER_NAME = "nvdnp"


class _NoOpSpan:
    """Stand-in span when OTel is not installed."""

    def set_attribute(self, key: str, value: Any) -> None:
        pass

    def record_exception(self, exception: BaseException) -> None:
        pass


@contextmanager
def span(name: str, attributes: dict[str, Any] | None = None) -> Generator[Any, None, None]:
    """Open a span named name; its wall time is logged at debug level on exit."""
    start = time.perf_counter()
    try:
        if _HAS_OTEL:
            tracer = trace.get_tracer(TRACER_NAME)
            with tracer.start_as_current_span(name, attributes=attributes) as s:
                yield s
        else:
            yield _NoOpSpan()
    finally:
        logger.debug("%s %s took %.2fs", name, attributes or {}, time.perf_counter() - start)

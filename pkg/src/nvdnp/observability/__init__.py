"""Tracing helpers."""

from nvdnp.observability.tracing import span

__all__ = ["span"]

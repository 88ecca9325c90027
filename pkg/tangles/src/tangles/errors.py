"""
tangles.errors
Exception hierarchy for invalid inputs and contradictory results.

Non-fatal findings (tangencies, unresolved lifts, formula discrepancies) are
collected as diagnostics instead; see tangles.diagnostics.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any


class TangleError(Exception):
    """Base error for the tangles package."""

    def __init__(self, message: str, context: Mapping[str, Any] | None = None):
        self.message = message
        self.context = dict(context or {})
        detail = ", ".join(f"{key}={value!r}" for key, value in self.context.items())
        super().__init__(f"{message}" + (f" ({detail})" if detail else ""))


class DomainError(TangleError):
    """An argument lies outside the domain of a polynomial or holonomy map."""


class InconsistencyError(TangleError):
    """Two computations that must agree do not."""


class TangleParameterError(TangleError):
    """Invalid tangle or branched-cover data."""


class ConfigError(TangleError):
    """Invalid run configuration or tolerance override."""


__all__ = [
    "ConfigError",
    "DomainError",
    "InconsistencyError",
    "TangleError",
    "TangleParameterError",
]

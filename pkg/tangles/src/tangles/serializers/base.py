"""
tangles.serializers.base
Abstract serializer interface for analysis output.

Serializers turn an AnalysisResult into text (JSON report, CSV samples, SVG
figure). Output must be deterministic for a fixed result.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any

from tangles.defaults import SIGNIFICANT_DIGITS

if TYPE_CHECKING:
    from tangles.pipeline import AnalysisResult


class SerializationError(Exception):
    """Error during serialization process."""

    def __init__(self, message: str, component_id: int | None = None):
        self.message = message
        self.component_id = component_id
        suffix = f" (component {component_id})" if component_id is not None else ""
        super().__init__(f"{message}{suffix}")


def significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round to ``digits`` significant digits; non-finite values pass through."""
    if not math.isfinite(value) or value == 0.0:
        return value
    return float(f"{value:.{digits}g}")


class Serializer(ABC):
    """Abstract base class for format-specific serializers."""

    def __init__(self, pretty: bool = True, strict: bool = False):
        """
        Initialize serializer.

        Args:
            pretty: Enable pretty-printing/formatting
            strict: Refuse results that carry error diagnostics
        """
        self.pretty = pretty
        self.strict = strict

    @abstractmethod
    def serialize(self, result: AnalysisResult) -> str:
        """
        Serialize an analysis result.

        Args:
            result: Pipeline output

        Returns:
            Formatted output string

        Raises:
            SerializationError: If serialization fails
        """

    @abstractmethod
    def format_value(self, value: Any) -> str:
        """Format one value for this output format."""

    def _check(self, result: AnalysisResult) -> None:
        if self.strict and result.has_errors:
            raise SerializationError("result carries error diagnostics")

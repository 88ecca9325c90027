"""
tangles.diagnostics
Structured, non-fatal findings collected while tracing and counting.

Provides error, warning and info diagnostics with a stable code and a free-form
data payload. Reports carry them in their ``notes`` array; the CLI exit status
depends on whether any error-severity diagnostic was collected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

logger = logging.getLogger(__name__)


class DiagnosticSeverity(Enum):
    """Severity levels, ordered from most to least severe."""

    ERROR = 1
    WARNING = 2
    INFORMATION = 3
    HINT = 4

    @property
    def label(self) -> str:
        return {
            DiagnosticSeverity.ERROR: "error",
            DiagnosticSeverity.WARNING: "warning",
            DiagnosticSeverity.INFORMATION: "info",
            DiagnosticSeverity.HINT: "hint",
        }[self]


class DiagnosticCode:
    """Stable diagnostic codes used in reports."""

    TANGENCY = "tangency"
    CORNER_CONTACT = "corner-contact"
    UNRESOLVED_LIFT = "unresolved-lift"
    DEGENERATE_FIBER = "degenerate-fiber"
    SHORT_COMPONENT = "short-component"
    UNPOLISHED_VERTEX = "unpolished-vertex"
    COARSE_STEP = "coarse-step"
    BD_ARC_RULE = "bd-arc-rule"
    FORMULA_DISCREPANCY = "formula-discrepancy"
    INVARIANT_VIOLATION = "invariant-violation"
    LOCUS_MISMATCH = "locus-mismatch"


@dataclass(frozen=True)
class Diagnostic:
    """A single finding with severity, code and payload."""

    message: str
    severity: DiagnosticSeverity = DiagnosticSeverity.WARNING
    code: str | None = None
    source: str = "tangles"
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Convert to the report ``notes`` entry format."""
        note: dict[str, Any] = {
            "severity": self.severity.label,
            "message": self.message,
            "source": self.source,
        }
        if self.code:
            note["code"] = self.code
        if self.data:
            note["data"] = dict(self.data)
        return note

    def to_string(self) -> str:
        code_str = f"[{self.code}] " if self.code else ""
        return f"{self.severity.label}: {code_str}{self.message} ({self.source})"


class DiagnosticCollector:
    """Collector for diagnostics emitted across pipeline stages.

    Warnings and errors are mirrored to the module logger as they arrive so a
    verbose CLI run shows them in order.
    """

    def __init__(self, source: str = "tangles"):
        self.source = source
        self._diagnostics: list[Diagnostic] = []

    def add(self, diagnostic: Diagnostic) -> None:
        """Add a diagnostic.

        Args:
            diagnostic: The diagnostic to add
        """
        self._diagnostics.append(diagnostic)
        if diagnostic.severity is DiagnosticSeverity.ERROR:
            logger.error(diagnostic.to_string())
        elif diagnostic.severity is DiagnosticSeverity.WARNING:
            logger.warning(diagnostic.to_string())

    def add_error(self, message: str, code: str | None = None, **data: Any) -> None:
        self.add(
            Diagnostic(
                message=message,
                severity=DiagnosticSeverity.ERROR,
                code=code,
                source=self.source,
                data=data,
            )
        )

    def add_warning(self, message: str, code: str | None = None, **data: Any) -> None:
        self.add(
            Diagnostic(
                message=message,
                severity=DiagnosticSeverity.WARNING,
                code=code,
                source=self.source,
                data=data,
            )
        )

    def add_info(self, message: str, code: str | None = None, **data: Any) -> None:
        self.add(
            Diagnostic(
                message=message,
                severity=DiagnosticSeverity.INFORMATION,
                code=code,
                source=self.source,
                data=data,
            )
        )

    def extend(self, diagnostics: tuple[Diagnostic, ...] | list[Diagnostic]) -> None:
        for diagnostic in diagnostics:
            self.add(diagnostic)

    def has_errors(self) -> bool:
        """Check if any errors were collected."""
        return any(d.severity is DiagnosticSeverity.ERROR for d in self._diagnostics)

    def count(self, code: str) -> int:
        return sum(1 for d in self._diagnostics if d.code == code)

    @property
    def diagnostics(self) -> tuple[Diagnostic, ...]:
        """All diagnostics as an immutable tuple."""
        return tuple(self._diagnostics)

    def clear(self) -> None:
        self._diagnostics.clear()

    def serialize(self) -> list[dict[str, Any]]:
        """Serialize all diagnostics to report note dicts."""
        return [d.to_dict() for d in self._diagnostics]


__all__ = [
    "Diagnostic",
    "DiagnosticCode",
    "DiagnosticCollector",
    "DiagnosticSeverity",
]

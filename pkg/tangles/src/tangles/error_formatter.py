"""
tangles.error_formatter
Terminal rendering of diagnostics.

Groups findings by severity, shows their codes and payloads, and ends with a
one-line summary.
"""

from __future__ import annotations

import re
from collections.abc import Sequence

from .diagnostics import Diagnostic, DiagnosticSeverity

_ANSI = re.compile(r"\033\[[0-9;]*m")


class ErrorFormatter:
    """Formats diagnostics as human-readable messages."""

    # ANSI color codes for terminal output
    COLORS = {
        "error": "\033[91m",  # Red
        "warning": "\033[93m",  # Yellow
        "info": "\033[94m",  # Blue
        "hint": "\033[92m",  # Green
        "reset": "\033[0m",
        "bold": "\033[1m",
        "dim": "\033[2m",
    }

    def __init__(self, use_colors: bool = True):
        """Initialize formatter.

        Args:
            use_colors: Whether to use ANSI colors in output
        """
        self.use_colors = use_colors

    def format_diagnostic(self, diagnostic: Diagnostic, include_data: bool = True) -> str:
        """Format a single diagnostic.

        Args:
            diagnostic: Diagnostic to format
            include_data: Whether to list the payload entries

        Returns:
            Formatted message
        """
        label = diagnostic.severity.label
        header = f"{diagnostic.source}: {self._colorize(label, label)}: {diagnostic.message}"
        lines = [header]
        if diagnostic.code:
            lines.append(self._colorize(f"  code: {diagnostic.code}", "dim"))
        if include_data:
            for key in sorted(diagnostic.data):
                lines.append(self._colorize(f"  {key}: {diagnostic.data[key]}", "dim"))
        return "\n".join(lines)

    def format_diagnostics(self, diagnostics: Sequence[Diagnostic]) -> str:
        """Format diagnostics as a report grouped by severity.

        Returns:
            Formatted report string
        """
        if not diagnostics:
            return "No diagnostics"

        lines: list[str] = []
        for severity in DiagnosticSeverity:
            group = [d for d in diagnostics if d.severity is severity]
            if not group:
                continue
            name = severity.name.lower()
            header = f"{len(group)} {name}{'s' if len(group) != 1 else ''}:"
            lines.append(self._colorize(header, severity.label))
            for diag in group:
                lines.extend(f"  {line}" for line in self.format_diagnostic(diag).split("\n"))
            lines.append("")
        lines.append(self.format_summary(diagnostics))
        return "\n".join(lines)

    def format_summary(self, diagnostics: Sequence[Diagnostic]) -> str:
        errors = sum(1 for d in diagnostics if d.severity is DiagnosticSeverity.ERROR)
        warnings = sum(1 for d in diagnostics if d.severity is DiagnosticSeverity.WARNING)
        text = f"{errors} error(s), {warnings} warning(s)"
        return self._colorize(text, "bold")

    def _colorize(self, text: str, color_name: str) -> str:
        if not self.use_colors or color_name not in self.COLORS:
            return text
        return f"{self.COLORS[color_name]}{text}{self.COLORS['reset']}"

    @staticmethod
    def strip_colors(text: str) -> str:
        """Remove ANSI color codes from text."""
        return _ANSI.sub("", text)


__all__ = ["ErrorFormatter"]

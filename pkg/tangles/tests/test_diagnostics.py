"""
Tests for diagnostics collection.
"""

import logging

from tangles.diagnostics import (
    Diagnostic,
    DiagnosticCode,
    DiagnosticCollector,
    DiagnosticSeverity,
)


class TestDiagnostic:
    """Test single diagnostics."""

    def test_to_dict_minimal(self):
        assert Diagnostic("plain", DiagnosticSeverity.INFORMATION).to_dict() == {
            "severity": "info",
            "message": "plain",
            "source": "tangles",
        }

    def test_to_dict_full(self):
        diag = Diagnostic("touch", code=DiagnosticCode.TANGENCY, source="census", data={"param": 1.5})
        assert diag.to_dict() == {
            "severity": "warning",
            "message": "touch",
            "source": "census",
            "code": "tangency",
            "data": {"param": 1.5},
        }

    def test_to_string(self):
        diag = Diagnostic("bad", DiagnosticSeverity.ERROR, "invariant-violation", "torus")
        assert diag.to_string() == "error: [invariant-violation] bad (torus)"


class TestDiagnosticCollector:
    """Test the collector."""

    def test_collects_by_severity(self):
        collector = DiagnosticCollector(source="torus")
        collector.add_info("note", DiagnosticCode.BD_ARC_RULE)
        collector.add_warning("touch", DiagnosticCode.TANGENCY, param=0.5)
        assert not collector.has_errors()
        collector.add_error("broken", DiagnosticCode.INVARIANT_VIOLATION)
        assert collector.has_errors()
        assert collector.count(DiagnosticCode.TANGENCY) == 1
        assert [d.source for d in collector.diagnostics] == ["torus"] * 3
        assert collector.diagnostics[1].data == {"param": 0.5}

    def test_extend_and_clear(self):
        first = DiagnosticCollector()
        first.add_warning("a")
        second = DiagnosticCollector()
        second.extend(first.diagnostics)
        assert len(second.serialize()) == 1
        second.clear()
        assert second.diagnostics == ()

    def test_mirrors_to_log(self, caplog):
        collector = DiagnosticCollector()
        with caplog.at_level(logging.INFO, logger="tangles.diagnostics"):
            collector.add_warning("coarse", DiagnosticCode.COARSE_STEP)
            collector.add_info("quiet")
        assert [r.levelno for r in caplog.records] == [logging.WARNING]
        assert "coarse-step" in caplog.text

"""
Tests for the end-to-end analyses.
"""

import math

import pytest

from tangles.census import count_generators, involuted
from tangles.diagnostics import DiagnosticCode
from tangles.dihedral import BranchedCoverData
from tangles.errors import TangleParameterError
from tangles.pipeline import BinaryDihedralPipeline, PretzelPipeline
from tangles.torus import ComponentKind


class TestBinaryDihedralPipeline:
    """Test branched-cover analyses."""

    def test_single_arc(self, bd_result):
        assert bd_result.census.totals.total == 5
        assert bd_result.topology.shape == "arc"
        assert bd_result.checks == {"slope": "-3/5"}
        assert bd_result.parameters["aminus"] == 1
        assert not bd_result.has_errors

    def test_arc_with_circle(self):
        data = BranchedCoverData(1, -1, 3, ((0.7, 1.1),))
        result = BinaryDihedralPipeline(samples=1024).run(data)
        assert [rec.label for rec in result.images] == ["arc", "circle"]
        assert result.images[1].closed
        assert result.census.totals.bd == 3
        assert result.topology.circles == 1
        assert result.topology.shape == "arc+disjoint-circles"
        assert result.parameters["offsets"] == [[0.7, 1.1]]

    def test_infinite_slope(self):
        result = BinaryDihedralPipeline().run(BranchedCoverData(1, 0))
        assert result.checks["slope"] == "inf"


class TestPretzelPipeline:
    """Test pretzel analyses."""

    def test_counts(self, pretzel_result):
        totals = pretzel_result.census.totals
        assert (totals.bd, totals.nonbd, totals.total) == (1, 8, 9)
        assert len(pretzel_result.images) == 3
        assert pretzel_result.topology.shape == "phi"

    def test_fiber_check(self, pretzel_result):
        assert pretzel_result.checks["fiber_max_imaginary"] < 1e-9
        assert not pretzel_result.has_errors

    def test_symmetry(self, pretzel_result):
        checks = pretzel_result.checks
        assert checks["involution_defect"] <= 2 * checks["sampling_step"]
        assert checks["semicircle_swap_defect"] < 1e-9
        assert not any(n.code == DiagnosticCode.INVARIANT_VIOLATION for n in pretzel_result.notes)

    def test_involuted_totals(self, pretzel_result):
        census = count_generators(involuted([rec.as_census_input() for rec in pretzel_result.images]))
        assert census.totals == pretzel_result.census.totals
        assert census.breakdown == pretzel_result.census.breakdown == (1, 4, 4)

    def test_formula_notes(self, pretzel_result):
        codes = [n.code for n in pretzel_result.notes]
        assert codes.count(DiagnosticCode.FORMULA_DISCREPANCY) == 2

    def test_rejects_even_n(self):
        with pytest.raises(TangleParameterError):
            PretzelPipeline().run(8)


class TestTorusPipeline:
    """Test the (4,5) torus tangle on a coarse grid."""

    def test_counts(self, torus_45_coarse):
        totals = torus_45_coarse.census.totals
        assert totals.bd == 5
        assert totals.nonbd == 4
        assert totals.total == 9

    def test_topology(self, torus_45_coarse):
        topo = torus_45_coarse.topology
        assert (topo.arcs, topo.circles, topo.incidences) == (1, 1, 2)
        assert topo.shape == "phi"

    def test_images(self, torus_45_coarse):
        kinds = [rec.kind for rec in torus_45_coarse.images]
        assert kinds == [ComponentKind.BINARY_DIHEDRAL, ComponentKind.NON_BINARY_DIHEDRAL]
        for rec in torus_45_coarse.images:
            assert rec.coords is not None
            assert len(rec.coords) == len(rec.path)

    def test_checks(self, torus_45_coarse):
        checks = torus_45_coarse.checks
        assert checks["max_residual"] < 1e-8
        assert checks["max_trace"] < 1e-8
        assert checks["max_cos_error"] < 1e-8
        assert checks["max_relation_defect"] < 1e-9
        assert checks["oracle_points"] >= 200
        assert checks["bd_shift"] == 0.0
        assert (checks["h_ba"], checks["h_bc"]) == (-3, 5)
        assert checks["involution_defect"] <= 2 * checks["sampling_step"]
        assert not torus_45_coarse.has_errors

    def test_character_check(self, torus_45_coarse):
        checks = torus_45_coarse.checks
        assert checks["character_defect"] < 1e-8
        assert checks["character_residual"] < 1e-8

    def test_breakdown(self, torus_45_coarse):
        assert torus_45_coarse.census.breakdown == (5, 4)

    def test_involuted_totals(self, torus_45_coarse):
        census = count_generators(involuted([rec.as_census_input() for rec in torus_45_coarse.images]))
        assert census.totals == torus_45_coarse.census.totals

    def test_report_dict(self, torus_45_coarse):
        data = torus_45_coarse.to_dict()
        assert data["parameters"] == {
            "p": 4,
            "q": 5,
            "r": 4,
            "s": -3,
            "grid": 256,
            "samples": 2048,
            "tolerance": 1e-8,
        }
        assert [c["label"] for c in data["components"]] == ["arc", "circle"]
        assert math.isfinite(data["checks"]["half_turn_defect"])

"""
Tests for pillowcase geometry and diagonal crossing counts.
"""

import math

import numpy as np
import pytest

from tangles.diagnostics import DiagnosticCode, DiagnosticCollector
from tangles.errors import InconsistencyError, TangleParameterError
from tangles.pillowcase import (
    TWO_PI,
    LiftedPath,
    PillowPoint,
    angles_from_cosines,
    angles_from_cosines_array,
    bd_line_distance,
    diagonal_crossings,
    diagonal_function,
    half_turn,
    involution,
    is_corner,
    lift_path,
    nearest_lift,
    on_bd_line,
    quotient_distance,
    reduce,
    reduce_array,
)


class TestReduce:
    """Test canonical reduction."""

    def test_interior_point_unchanged(self):
        assert reduce(1.0, 2.0) == PillowPoint(1.0, 2.0)

    def test_sign_flip(self):
        p = reduce(-1.0, -2.0)
        assert p.gamma == pytest.approx(1.0)
        assert p.theta == pytest.approx(2.0)

    def test_lattice_translation(self):
        p = reduce(1.0 + TWO_PI, 2.0 - 2 * TWO_PI)
        assert p.gamma == pytest.approx(1.0)
        assert p.theta == pytest.approx(2.0)

    def test_fold_edge_normalized(self):
        p = reduce(0.0, 5.0)
        assert p.gamma == 0.0
        assert p.theta == pytest.approx(TWO_PI - 5.0)

    def test_wrap_edge(self):
        assert reduce(1.0, TWO_PI).theta == 0.0

    def test_idempotent(self):
        rng = np.random.default_rng(3)
        gamma, theta = rng.uniform(-20.0, 20.0, size=(2, 10_000))
        once = reduce_array(gamma, theta)
        twice = reduce_array(*once)
        np.testing.assert_allclose(twice[0], once[0], atol=1e-12)
        np.testing.assert_allclose(twice[1], once[1], atol=1e-12)

    @pytest.mark.parametrize("m", range(-3, 4))
    @pytest.mark.parametrize("n", range(-3, 4))
    def test_equivalent_lifts_reduce_identically(self, m, n):
        rng = np.random.default_rng(100 + 7 * m + n)
        gamma, theta = rng.uniform(-20.0, 20.0, size=(2, 1000))
        g0, t0 = reduce_array(gamma, theta)
        g1, t1 = reduce_array(-gamma + TWO_PI * m, -theta + TWO_PI * n)
        np.testing.assert_allclose(g1, g0, atol=1e-9)
        # theta is compared on the circle so 0 and 2π agree
        assert np.max(np.abs(np.sin((t1 - t0) / 2.0))) < 1e-9

    def test_corner(self):
        p = reduce(-3 * math.pi, -8 * math.pi)
        assert is_corner(p)
        assert p.gamma == pytest.approx(math.pi)


class TestAnglesFromCosines:
    """Test angle recovery."""

    def test_picks_theta_branch(self):
        gamma, theta = 1.0, 4.0
        p = angles_from_cosines(math.cos(gamma), math.cos(theta), math.cos(theta - gamma))
        assert p.gamma == pytest.approx(gamma)
        assert p.theta == pytest.approx(theta)

    def test_inconsistent_triple(self):
        with pytest.raises(InconsistencyError):
            angles_from_cosines(0.0, 0.0, 0.5)

    def test_round_trip_on_random_angles(self):
        rng = np.random.default_rng(11)
        gamma = rng.uniform(0.01, math.pi - 0.01, 10_000)
        theta = rng.uniform(0.01, TWO_PI - 0.01, 10_000)
        g, t, mismatch = angles_from_cosines_array(
            np.cos(gamma), np.cos(theta), np.cos(theta - gamma)
        )
        np.testing.assert_allclose(g, gamma, atol=1e-6)
        np.testing.assert_allclose(t, theta, atol=1e-6)
        assert np.max(mismatch) < 1e-8


class TestSymmetries:
    """Test involution, half turn and distances."""

    def test_involution_is_an_involution(self):
        p = PillowPoint(0.8, 1.9)
        assert quotient_distance(involution(involution(p)), p) < 1e-12

    def test_half_turn_twice_is_identity(self):
        p = PillowPoint(0.8, 1.9)
        assert quotient_distance(half_turn(half_turn(p)), p) < 1e-12

    def test_quotient_distance_uses_nearest_lift(self):
        assert quotient_distance(PillowPoint(0.1, 0.05), PillowPoint(0.1, TWO_PI - 0.05)) < 0.21
        assert quotient_distance(PillowPoint(1.0, 2.0), reduce(-1.0, -2.0)) < 1e-12

    def test_nearest_lift(self):
        g, t = nearest_lift((0.1, 6.2), 0.1, 0.05)
        assert g == pytest.approx(0.1)
        assert t == pytest.approx(0.05 + TWO_PI)


class TestLiftPath:
    """Test continuous lifting."""

    def test_wrap_is_unrolled(self):
        theta = np.linspace(0.0, 3 * math.pi, 200)
        gamma = np.full_like(theta, 1.0)
        reduced = np.column_stack(
            [np.vectorize(lambda g, t: reduce(g, t).gamma)(gamma, theta),
             np.vectorize(lambda g, t: reduce(g, t).theta)(gamma, theta)]
        )
        path = lift_path(reduced)
        assert path.max_step() < 0.1
        assert path.theta[-1] - path.theta[0] == pytest.approx(3 * math.pi)

    def test_params_must_match(self):
        with pytest.raises(ValueError):
            LiftedPath(np.zeros((3, 2)), params=np.zeros(2))


class TestDiagonalCrossings:
    """Test transverse crossing counts."""

    def test_bd_line_of_torus_45(self):
        t = np.linspace(0.0, math.pi, 2048)
        path = LiftedPath(np.column_stack([-3 * t, -8 * t]), params=t)
        result = diagonal_crossings(path)
        assert result.count == 2
        np.testing.assert_allclose(sorted(result.locations), [2 * math.pi / 5, 4 * math.pi / 5], atol=1e-3)

    @pytest.mark.parametrize("m", range(-3, 4))
    @pytest.mark.parametrize("n", range(-3, 4))
    def test_criterion_is_lift_invariant(self, m, n):
        """Negating and re-lifting flips the diagonal function at most globally."""
        t = np.linspace(0.0, math.pi, 2048)
        path = LiftedPath(np.column_stack([-3 * t, -8 * t]), params=t)
        relifted = path.transformed(-1.0, -1.0, (TWO_PI * m, TWO_PI * n))
        before = diagonal_function(path.points)
        after = diagonal_function(relifted.points)
        keep = np.abs(before) > 1e-9
        signs = np.sign(after[keep]) * np.sign(before[keep])
        assert np.all(signs == signs[0])
        assert diagonal_crossings(relifted).count == diagonal_crossings(path).count == 2

    def test_tangency_not_counted(self):
        s = 1.0 + np.arange(-100, 101) * 0.01
        path = LiftedPath(np.column_stack([s, s + (s - 1.0) ** 2]))
        collector = DiagnosticCollector()
        result = diagonal_crossings(path, collector=collector)
        assert result.count == 0
        assert len(result.tangencies) == 1
        assert collector.count(DiagnosticCode.TANGENCY) == 1

    def test_exact_zero_sample_with_sign_change(self):
        s = 1.0 + np.arange(-100, 101) * 0.01
        path = LiftedPath(np.column_stack([np.full_like(s, 1.0), s]))
        assert diagonal_crossings(path).count == 1

    def test_corner_contact_excluded(self):
        s = np.arange(-100, 101) * 0.01
        path = LiftedPath(np.column_stack([s, -s]))
        collector = DiagnosticCollector()
        result = diagonal_crossings(path, collector=collector)
        assert result.count == 0
        assert len(result.corner_hits) == 1
        assert collector.count(DiagnosticCode.CORNER_CONTACT) == 1

    def test_endpoint_on_diagonal(self):
        s = np.linspace(0.5, 1.5, 101)
        path = LiftedPath(np.column_stack([np.full_like(s, 0.5), s]))
        assert diagonal_crossings(path).count == 0
        assert diagonal_crossings(path, exclude_endpoints=False).count == 1

    def test_coarse_path_warns(self):
        path = LiftedPath(np.array([[0.1, 0.5], [1.0, 2.5], [1.5, 0.3]]))
        collector = DiagnosticCollector()
        diagonal_crossings(path, collector=collector)
        assert collector.count(DiagnosticCode.COARSE_STEP) == 1


class TestBDLines:
    """Test lattice-line membership."""

    def test_points_on_line(self):
        t = np.linspace(0.0, math.pi, 9)
        assert np.all(bd_line_distance(-3 * t, -8 * t, -3, 5) < 1e-12)

    def test_translated_line(self):
        assert on_bd_line(PillowPoint(0.3 + TWO_PI, 0.6), 1, -1, 1e-9)
        assert not on_bd_line(PillowPoint(0.3, 0.9), 1, -1, 1e-6)

    def test_zero_direction_rejected(self):
        with pytest.raises(TangleParameterError):
            bd_line_distance(0.0, 0.0, 0, 0)

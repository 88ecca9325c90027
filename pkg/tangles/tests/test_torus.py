"""
Tests for torus-knot tangle representation spaces.
"""

import math

import numpy as np
import pytest

from tangles.cheb import cheb_S
from tangles.diagnostics import DiagnosticCollector
from tangles.errors import TangleParameterError
from tangles.pillowcase import diagonal_crossings
from tangles.torus import (
    BDCase,
    ComponentKind,
    TorusTangle,
    WPoint,
    bd_arc,
    bd_image_shift,
    bd_locus,
    character_involution,
    character_involution_array,
    character_signs,
    component_image,
    compute_components,
    default_rs,
    p1,
    p2,
    p_deflated,
    p_xy,
    pillow_cosines,
    pillow_image,
    solve_tau,
    trace_z,
)
from tangles.zeroset import GridSpec

JUNCTION_Y = math.sqrt((5.0 - math.sqrt(13.0)) / 8.0)


class TestTorusTangle:
    """Test tangle construction."""

    @pytest.mark.parametrize(
        "p,q,expected",
        [(4, 5, (4, -3)), (3, 7, (5, -2)), (2, 3, (2, -1)), (6, 7, (6, -5)), (3, 10, (7, -2))],
    )
    def test_default_rs(self, p, q, expected):
        assert default_rs(p, q) == expected

    def test_from_pq_completes_s(self):
        t = TorusTangle.from_pq(4, 5, r=-1)
        assert t.s == 1
        assert 4 * t.r + 5 * t.s == 1

    def test_not_coprime(self):
        with pytest.raises(TangleParameterError):
            TorusTangle.from_pq(4, 6)

    def test_bad_bezout_pair(self):
        with pytest.raises(TangleParameterError):
            TorusTangle(4, 5, 1, 1)

    def test_no_integer_s(self):
        with pytest.raises(TangleParameterError):
            TorusTangle.from_pq(4, 5, r=2)

    @pytest.mark.parametrize(
        "p,q,case",
        [(4, 5, BDCase.P_EVEN), (3, 10, BDCase.Q_EVEN), (3, 7, BDCase.ODD_R_ODD), (3, 5, BDCase.ODD_R_EVEN)],
    )
    def test_bd_case(self, p, q, case):
        assert TorusTangle.from_pq(p, q).bd_case is case


class TestPolynomials:
    """Test the polynomial system against hand expansions."""

    def test_p1_for_45(self, tangle_45):
        x, y, tau = 0.3, 0.4, 0.5
        root = math.sqrt((1 - x * x) * (1 - y * y))
        assert p1(tangle_45, x, y, tau) == pytest.approx(x * y - root * tau, abs=1e-14)

    def test_p2_for_45(self, tangle_45):
        x, y, tau = 0.3, -0.6, 0.2
        root = math.sqrt((1 - x * x) * (1 - y * y))
        expected = (4 * x**3 - 3 * x) * (8 * y**4 - 8 * y**2 + 1) - root * (1 - 4 * x * x) * (
            -8 * y**3 + 4 * y
        ) * tau
        assert p2(tangle_45, x, y, tau) == pytest.approx(expected, abs=1e-13)

    def test_p_xy_for_45(self, tangle_45):
        rng = np.random.default_rng(1)
        x, y = rng.uniform(-1.0, 1.0, size=(2, 50))
        expected = x * (16 * y**4 - 20 * y**2 + 16 * x**2 * y**2 - 4 * x**2 + 3)
        np.testing.assert_allclose(p_xy(tangle_45, x, y), expected, atol=1e-12)

    def test_p_xy_for_37(self, tangle_37):
        rng = np.random.default_rng(2)
        x, y = rng.uniform(-1.0, 1.0, size=(2, 50))
        expected = 8 * x**2 * y**2 - 2 * x**2 + 32 * y**6 - 40 * y**4 + 10 * y**2
        np.testing.assert_allclose(p_xy(tangle_37, x, y), expected, atol=1e-12)

    @pytest.mark.parametrize("pq", [(4, 5), (3, 7), (3, 10), (5, 17)])
    def test_eliminant_identity(self, pq):
        t = TorusTangle.from_pq(*pq)
        rng = np.random.default_rng(3)
        x, y, tau = rng.uniform(-0.99, 0.99, size=(3, 40))
        combo = p1(t, x, y, tau) * cheb_S(t.s, x) * cheb_S(-t.r, y) - p2(t, x, y, tau) * cheb_S(
            t.s + t.p, x
        ) * cheb_S(t.q - t.r, y)
        np.testing.assert_allclose(p_xy(t, x, y), combo, atol=1e-9)

    def test_deflation(self, tangle_45):
        assert p_deflated(tangle_45, 0.3, 0.4) == pytest.approx(p_xy(tangle_45, 0.3, 0.4) / 0.3)
        y = 0.35
        assert p_deflated(tangle_45, 0.0, y) == pytest.approx(16 * y**4 - 20 * y**2 + 3)

    def test_odd_tangle_is_not_deflated(self, tangle_37):
        assert p_deflated(tangle_37, 0.2, 0.3) == pytest.approx(p_xy(tangle_37, 0.2, 0.3))


class TestLifting:
    """Test tau elimination."""

    def test_oval_point(self, tangle_45):
        x = math.sqrt(0.99 - 1.0 / 3.84)
        tau = solve_tau(tangle_45, x, 0.1)
        assert tau == pytest.approx(0.165086, abs=1e-6)
        w = WPoint(x, 0.1, tau)
        assert max(abs(r) for r in w.residuals(tangle_45)) < 1e-12

    def test_on_factor_line(self, tangle_45):
        assert solve_tau(tangle_45, 0.0, 0.3) == 0.0

    def test_off_zero_set(self, tangle_45):
        assert solve_tau(tangle_45, 0.5, 0.5) is None

    def test_tau_bound_matches_unit_disk(self, tangle_45):
        """On p1 = 0 for (4,5), |tau| <= 1 exactly when x^2 + y^2 <= 1."""
        rng = np.random.default_rng(21)
        x, y = rng.uniform(-0.99, 0.99, size=(2, 1000))
        keep = np.abs(x * x + y * y - 1.0) > 1e-6
        x, y = x[keep], y[keep]
        # p1 is affine in tau: p1 = constant - coefficient * tau
        constant = p1(tangle_45, x, y, 0.0)
        coefficient = constant - p1(tangle_45, x, y, 1.0)
        tau = constant / coefficient
        inside = np.abs(tau) <= 1.0
        assert np.max(np.abs(p1(tangle_45, x[inside], y[inside], tau[inside]))) < 1e-12
        np.testing.assert_array_equal(inside, x * x + y * y <= 1.0)

    def test_pillow_image_of_oval_point(self, tangle_45):
        x, y = math.sqrt(0.99 - 1.0 / 3.84), 0.1
        cg, ct, _ = pillow_image(tangle_45, WPoint(x, y, solve_tau(tangle_45, x, y)))
        assert cg == pytest.approx(4 * y**3 / (4 * y**2 - 1), abs=1e-9)
        expected_ct = (-1 + 12 * y**2 + 32 * y**6 - 32 * y**4) / (4 * y**2 - 1)
        assert ct == pytest.approx(expected_ct, abs=1e-9)


class TestBinaryDihedral:
    """Test the binary dihedral arc and locus."""

    def test_arc_for_45(self, tangle_45):
        path = bd_arc(tangle_45, 5)
        t = np.linspace(0.0, math.pi, 5)
        np.testing.assert_allclose(path.points, np.column_stack([-3 * t, -8 * t]))

    def test_arc_for_37(self, tangle_37):
        path = bd_arc(tangle_37, 5)
        t = np.linspace(0.0, math.pi, 5)
        np.testing.assert_allclose(path.points, np.column_stack([t, 2 * t]))

    def test_locus_lies_in_w(self, tangle_45):
        locus = bd_locus(tangle_45, 64)
        x, y, tau = locus.coords.T
        assert np.max(np.abs(p1(tangle_45, x, y, tau))) < 1e-12
        assert np.max(np.abs(p2(tangle_45, x, y, tau))) < 1e-12

    @pytest.mark.parametrize("pq,shift", [((4, 5), 0.0), ((3, 7), math.pi), ((6, 7), math.pi), ((3, 10), math.pi), ((3, 5), 0.0)])
    def test_image_shift(self, pq, shift):
        assert bd_image_shift(TorusTangle.from_pq(*pq)) == shift

    @pytest.mark.parametrize("pq", [(4, 5), (3, 7), (3, 10), (5, 12), (6, 7)])
    def test_arc_crossings_stable_under_refinement(self, pq):
        t = TorusTangle.from_pq(*pq)
        coarse = diagonal_crossings(bd_arc(t, 1024))
        fine = diagonal_crossings(bd_arc(t, 2048))
        assert coarse.count == fine.count
        np.testing.assert_allclose(sorted(coarse.locations), sorted(fine.locations), atol=1e-3)


class TestComponents:
    """Test tracing and assembly of components."""

    def test_trace_z_for_45(self, tangle_45):
        components = trace_z(tangle_45, GridSpec.square(128))
        assert components[0].kind == "bd-factor"
        traced = [c for c in components if c.kind == "traced"]
        assert sum(1 for c in traced if c.closed) == 1

    def test_oval_meets_locus_twice(self, tangle_45):
        components = compute_components(tangle_45, GridSpec.square(256), samples=512)
        assert len(components) == 2
        bd, oval = components
        assert bd.kind is ComponentKind.BINARY_DIHEDRAL
        assert oval.kind is ComponentKind.NON_BINARY_DIHEDRAL
        assert oval.closed
        assert len(oval.incidences) == 2
        assert len(bd.incidences) == 2
        ys = sorted(i.point.y for i in oval.incidences)
        assert ys == pytest.approx([-JUNCTION_Y, JUNCTION_Y], abs=1e-9)
        assert all(i.point.x == 0.0 and i.point.tau == 0.0 for i in oval.incidences)

    def test_oval_points_lie_in_w(self, tangle_45):
        components = compute_components(tangle_45, GridSpec.square(256), samples=512)
        x, y, tau = components[1].coords.T
        assert np.max(np.abs(p1(tangle_45, x, y, tau))) < 1e-8
        assert np.max(np.abs(p2(tangle_45, x, y, tau))) < 1e-8

    def test_component_image_is_continuous(self, tangle_45):
        collector = DiagnosticCollector()
        components = compute_components(tangle_45, GridSpec.square(256), samples=512)
        image = component_image(tangle_45, components[1], collector=collector)
        assert len(image.coords) == len(image.path)
        assert image.path.max_step() <= 0.1 + 1e-9
        assert not collector.has_errors()


CHARACTER_TANGLES = [(4, 5), (3, 7), (3, 10), (4, 7), (5, 12), (6, 7), (5, 17)]


class TestSignCharacter:
    """Test the twist by the character sending every meridian to -1."""

    @pytest.mark.parametrize(
        "pq,signs", [((4, 5), (-1, 1)), ((3, 7), (-1, -1)), ((3, 10), (1, -1)), ((6, 7), (-1, 1))]
    )
    def test_signs(self, pq, signs):
        assert character_signs(TorusTangle.from_pq(*pq)) == signs

    @pytest.mark.parametrize("pq", CHARACTER_TANGLES)
    def test_polynomials_change_sign(self, pq):
        t = TorusTangle.from_pq(*pq)
        coords = np.random.default_rng(5).uniform(-0.95, 0.95, size=(500, 3))
        x, y, tau = coords.T
        tx, ty, ttau = character_involution_array(t, coords).T
        np.testing.assert_allclose(p1(t, tx, ty, ttau), -p1(t, x, y, tau), atol=1e-10)
        np.testing.assert_allclose(p2(t, tx, ty, ttau), -p2(t, x, y, tau), atol=1e-10)

    @pytest.mark.parametrize("pq", CHARACTER_TANGLES)
    def test_image_unchanged(self, pq):
        t = TorusTangle.from_pq(*pq)
        coords = np.random.default_rng(6).uniform(-0.95, 0.95, size=(500, 3))
        before = np.column_stack(pillow_cosines(t, *coords.T))
        after = np.column_stack(pillow_cosines(t, *character_involution_array(t, coords).T))
        np.testing.assert_allclose(after, before, atol=1e-10)

    def test_oval_point(self, tangle_45):
        x, y = math.sqrt(0.99 - 1.0 / 3.84), 0.1
        w = WPoint(x, y, solve_tau(tangle_45, x, y))
        twisted = character_involution(tangle_45, w)
        assert twisted == WPoint(-w.x, w.y, -w.tau)
        assert max(abs(r) for r in twisted.residuals(tangle_45)) < 1e-12
        assert pillow_image(tangle_45, twisted) == pytest.approx(pillow_image(tangle_45, w), abs=1e-12)
        assert character_involution(tangle_45, twisted) == w

    def test_bd_locus_is_fixed(self, tangle_45):
        coords = bd_locus(tangle_45, 64).coords
        np.testing.assert_array_equal(character_involution_array(tangle_45, coords), coords)

"""
Full-resolution checks on the twelve torus tangles: generator counts and their
per-component breakdown, topology, stability under refinement, symmetries, the
quaternion oracle and the (4,5) geometry.
"""

import math

import pytest

from tangles.census import count_generators, involuted
from tangles.defaults import DEFAULT_SAMPLES
from tangles.pillowcase import angles_from_cosines
from tangles.torus import TorusTangle, WPoint, pillow_image, solve_tau

from .conftest import analysed_torus

pytestmark = pytest.mark.slow

# (p, q) -> (total generators, binary dihedral generators)
GENERATORS = {
    (4, 5): (9, 5),
    (3, 7): (9, 1),
    (3, 10): (15, 3),
    (4, 7): (15, 7),
    (4, 9): (17, 9),
    (4, 11): (23, 11),
    (4, 13): (25, 13),
    (5, 7): (17, 1),
    (5, 8): (21, 5),
    (5, 12): (29, 5),
    (5, 17): (41, 1),
    (6, 7): (19, 7),
}

# (p, q) -> (arcs, circles, incidences, disjoint circles)
TOPOLOGY = {
    (4, 5): (1, 1, 2, 0),
    (3, 7): (1, 2, 0, 2),
    (3, 10): (1, 3, 2, 2),
    (4, 7): (1, 2, 4, 0),
    (5, 17): (1, 3, 0, 3),
}

# (p, q) -> generators per component, binary dihedral first, then largest first
BREAKDOWNS = {
    (4, 5): (5, 4),
    (3, 7): (1, 4, 4),
    (4, 7): (7, 4, 4),
    (5, 8): (5, 16),
    (5, 12): (5, 12, 12),
    (6, 7): (7, 8, 4),
}

TANGLES = sorted(GENERATORS)
JUNCTION_Y = math.sqrt((5.0 - math.sqrt(13.0)) / 8.0)


@pytest.mark.parametrize("pq", TANGLES)
def test_generator_counts(pq):
    totals = analysed_torus(*pq).census.totals
    assert (totals.total, totals.bd) == GENERATORS[pq]


@pytest.mark.parametrize("pq", sorted(TOPOLOGY))
def test_topology(pq):
    topo = analysed_torus(*pq).topology
    assert (topo.arcs, topo.circles, topo.incidences, topo.disjoint_circles) == TOPOLOGY[pq]


@pytest.mark.parametrize("pq", [(4, 11), (4, 13)])
def test_three_circles(pq):
    topo = analysed_torus(*pq).topology
    assert (topo.arcs, topo.circles) == (1, 3)


@pytest.mark.parametrize("pq", TANGLES)
def test_stable_under_refinement(pq):
    fine = analysed_torus(*pq)
    coarse = analysed_torus(*pq, grid=512)
    assert coarse.census.totals.to_dict() == fine.census.totals.to_dict()
    assert (coarse.topology.arcs, coarse.topology.circles) == (fine.topology.arcs, fine.topology.circles)


@pytest.mark.parametrize("pq", TANGLES)
def test_involution_symmetry(pq):
    checks = analysed_torus(*pq).checks
    assert checks["involution_defect"] <= 2 * checks["sampling_step"]


@pytest.mark.parametrize("pq", sorted(BREAKDOWNS))
def test_component_breakdown(pq):
    assert analysed_torus(*pq).census.breakdown == BREAKDOWNS[pq]


@pytest.mark.parametrize("pq", TANGLES)
def test_totals_invariant_under_involution(pq):
    result = analysed_torus(*pq)
    census = count_generators(involuted([rec.as_census_input() for rec in result.images]))
    assert census.totals == result.census.totals


@pytest.mark.parametrize("pq", TANGLES)
def test_sign_character(pq):
    checks = analysed_torus(*pq).checks
    assert checks["character_defect"] < 1e-8
    assert checks["character_residual"] < 1e-8


@pytest.mark.parametrize("pq", [(4, 5), (3, 7), (5, 8), (6, 7)])
def test_crossings_stable_under_sampling_refinement(pq):
    coarse = analysed_torus(*pq, grid=512)
    fine = analysed_torus(*pq, grid=512, samples=2 * DEFAULT_SAMPLES)
    assert [c.diagonal_crossings for c in fine.census.components] == [
        c.diagonal_crossings for c in coarse.census.components
    ]


def test_quaternion_oracle():
    checked = 0
    for pq in TANGLES:
        checks = analysed_torus(*pq).checks
        assert checks["max_trace"] < 1e-8
        assert checks["max_cos_error"] < 1e-8
        checked += checks["oracle_points"]
    assert checked >= 10_000


class TestTorus45Geometry:
    """The (4,5) oval and its image near the junctions."""

    @staticmethod
    def image_at(y):
        t = TorusTangle.from_pq(4, 5)
        x_sq = (16 * y**4 - 20 * y**2 + 3) / (4 - 16 * y**2)
        tau = solve_tau(t, math.sqrt(max(x_sq, 0.0)), y)
        assert tau is not None
        return angles_from_cosines(*pillow_image(t, WPoint(math.sqrt(max(x_sq, 0.0)), y, tau)))

    def test_junctions(self):
        result = analysed_torus(4, 5)
        oval = result.images[1]
        assert oval.closed
        ys = sorted(float(row[1]) for row in oval.coords if abs(row[0]) < 1e-9)
        assert ys
        assert ys[0] == pytest.approx(-JUNCTION_Y, abs=1e-6)
        assert ys[-1] == pytest.approx(JUNCTION_Y, abs=1e-6)

    def test_junction_slope(self):
        h = 1e-6
        near = self.image_at(JUNCTION_Y - h)
        nearer = self.image_at(JUNCTION_Y - 2 * h)
        slope = (near.theta - nearer.theta) / (near.gamma - nearer.gamma)
        assert slope == pytest.approx(-1.09, abs=0.05)

    def test_vertical_tangent_at_equator(self):
        center = self.image_at(0.0)
        nearby = self.image_at(1e-2)
        assert abs(nearby.theta - center.theta) > 100 * abs(nearby.gamma - center.gamma)

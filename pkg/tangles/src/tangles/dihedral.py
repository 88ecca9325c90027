"""
tangles.dihedral
Binary dihedral components of a 2-stranded tangle from branched-cover data.

The binary dihedral part of the representation space consists of one arc and
(n - 1)/2 circles, where n is the order of the odd torsion subgroup A₋. Their
pillowcase maps are straight lines whose direction is fixed by the two cohomology
values h(ba) and h(bc⁻¹).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .defaults import BD_IMAGE_TOL, DEFAULT_SAMPLES
from .errors import TangleParameterError
from .pillowcase import LiftedPath, PillowPoint, on_bd_line

logger = logging.getLogger(__name__)


class BDCurveKind(str, Enum):
    ARC = "arc"
    CIRCLE = "circle"


@dataclass(frozen=True)
class BranchedCoverData:
    """Homological input: h(ba), h(bc⁻¹), |A₋| and one angle offset per circle."""

    h_ba: int
    h_bc: int
    a_minus_order: int = 1
    offsets: tuple[tuple[float, float], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "offsets", tuple((float(a), float(b)) for a, b in self.offsets)
        )
        if self.a_minus_order < 1 or self.a_minus_order % 2 == 0:
            raise TangleParameterError(
                "order of A- must be a positive odd integer", {"aminus": self.a_minus_order}
            )
        if self.h_ba == 0 and self.h_bc == 0:
            raise TangleParameterError("h(ba) and h(bc^-1) cannot both vanish")
        expected = (self.a_minus_order - 1) // 2
        if len(self.offsets) != expected:
            raise TangleParameterError(
                "one offset pair is needed per binary dihedral circle",
                {"expected": expected, "given": len(self.offsets)},
            )

    @property
    def circle_count(self) -> int:
        return (self.a_minus_order - 1) // 2

    @property
    def direction(self) -> tuple[int, int]:
        """Planar direction (h(ba), h(ba) - h(bc⁻¹)) of every component image."""
        return (self.h_ba, self.h_ba - self.h_bc)


@dataclass(frozen=True)
class BDComponentCurve:
    kind: BDCurveKind
    path: LiftedPath

    @property
    def closed(self) -> bool:
        return self.kind is BDCurveKind.CIRCLE


def bd_components(
    data: BranchedCoverData, samples: int = DEFAULT_SAMPLES
) -> list[BDComponentCurve]:
    """One arc over [0, π] and one circle over [0, 2π] per offset.

    The arc is t -> (h(ba) t, (h(ba) - h(bc⁻¹)) t); the circle for offset
    (l1, l2) is the same map shifted by (-l1, -l2). Circles are sampled on
    [0, 2π] so their last sample closes the loop.
    """
    if samples < 2:
        raise TangleParameterError("need at least two samples", {"samples": samples})
    v_gamma, v_theta = data.direction
    arc_t = np.linspace(0.0, math.pi, samples)
    curves = [
        BDComponentCurve(
            BDCurveKind.ARC,
            LiftedPath(np.column_stack([v_gamma * arc_t, v_theta * arc_t]), False, arc_t),
        )
    ]
    circle_t = np.linspace(0.0, 2.0 * math.pi, samples)
    for l1, l2 in data.offsets:
        pts = np.column_stack([v_gamma * circle_t - l1, v_theta * circle_t - l2])
        curves.append(BDComponentCurve(BDCurveKind.CIRCLE, LiftedPath(pts, True, circle_t)))
    logger.debug(
        "binary dihedral data %s: 1 arc, %d circles", data.direction, data.circle_count
    )
    return curves


def bd_slope(data: BranchedCoverData) -> Fraction | float:
    """h(ba)/h(bc⁻¹) as an exact fraction, or ``math.inf`` when h(bc⁻¹) = 0."""
    if data.h_bc == 0:
        return math.inf
    return Fraction(data.h_ba, data.h_bc)


def on_bd_image(
    point: PillowPoint, data: BranchedCoverData, shift: float = 0.0, tol: float = BD_IMAGE_TOL
) -> bool:
    """Whether a pillowcase point lies on the image of the binary dihedral arc.

    ``shift`` translates the arc image by (shift, 0).
    """
    return on_bd_line(PillowPoint(point.gamma - shift, point.theta), data.h_ba, data.h_bc, tol)


def torus_bd_data(p: int, q: int, r: int, s: int) -> tuple[int, int]:
    """(h(ba), h(bc⁻¹)) of the (p, q) torus tangle by parity class."""
    if p % 2 == 0:
        return (q - 2 * r, q)
    if q % 2 == 0:
        return (2 * s + p, -p)
    if r % 2:
        return (1, -1)
    return (1, 1)


__all__ = [
    "BDComponentCurve",
    "BranchedCoverData",
    "BDCurveKind",
    "bd_components",
    "bd_slope",
    "on_bd_image",
    "torus_bd_data",
]

"""
tangles.census
Generator counts and component topology from pillowcase images.

Each transverse crossing of a component image with the diagonal {gamma = theta}
contributes two generators of the reduced instanton chain complex; the binary
dihedral arc, running corner to corner, contributes one more. Corner contacts
never count.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
from scipy.spatial import cKDTree

from .defaults import CORNER_CONTACT_TOL
from .diagnostics import Diagnostic, DiagnosticCode, DiagnosticCollector
from .pillowcase import (
    TWO_PI,
    LiftedPath,
    diagonal_crossings,
    is_corner,
    reduce,
    reduce_array,
)
from .torus import ComponentKind

if TYPE_CHECKING:
    from .torus import RepComponent

logger = logging.getLogger(__name__)

BD_ARC_RULE_NOTE = (
    "the +1 for the binary dihedral arc is inferred from worked examples, not a theorem"
)


@dataclass(frozen=True)
class ImageComponent:
    """A component of the representation space as seen by the census."""

    id: int
    kind: ComponentKind
    closed: bool
    path: LiftedPath
    label: str = ""


@dataclass(frozen=True)
class ComponentCount:
    id: int
    kind: ComponentKind
    closed: bool
    diagonal_crossings: int
    generators: int
    crossing_params: tuple[float, ...] = ()
    label: str = ""

    def to_dict(self) -> dict[str, Any]:
        entry: dict[str, Any] = {
            "id": self.id,
            "kind": self.kind.value,
            "closed": self.closed,
            "diagonal_crossings": self.diagonal_crossings,
            "generators": self.generators,
            "crossing_params": list(self.crossing_params),
        }
        if self.label:
            entry["label"] = self.label
        return entry


@dataclass(frozen=True)
class GeneratorTotals:
    bd: int
    nonbd: int

    @property
    def total(self) -> int:
        return self.bd + self.nonbd

    def to_dict(self) -> dict[str, int]:
        return {"bd": self.bd, "nonbd": self.nonbd, "total": self.total}


@dataclass(frozen=True)
class GeneratorReport:
    components: tuple[ComponentCount, ...]
    totals: GeneratorTotals
    notes: tuple[Diagnostic, ...] = field(default=())

    @property
    def breakdown(self) -> tuple[int, ...]:
        """Generators per component: binary dihedral first, then the rest largest first."""
        bd = [c.generators for c in self.components if c.kind is ComponentKind.BINARY_DIHEDRAL]
        rest = sorted(
            (c.generators for c in self.components if c.kind is not ComponentKind.BINARY_DIHEDRAL),
            reverse=True,
        )
        return (*bd, *rest)

    def to_dict(self) -> dict[str, Any]:
        return {
            "components": [c.to_dict() for c in self.components],
            "totals": self.totals.to_dict(),
            "breakdown": list(self.breakdown),
            "notes": [n.to_dict() for n in self.notes],
        }


def count_generators(
    components: Sequence[ImageComponent],
    collector: DiagnosticCollector | None = None,
) -> GeneratorReport:
    """Count generators per component and in total.

    Circles and every non-binary-dihedral piece give 2·crossings; an open
    binary dihedral arc gives 2·crossings + 1 and must end at corners.
    """
    local = DiagnosticCollector(source="census")
    counts: list[ComponentCount] = []
    has_bd_arc = False
    for comp in components:
        result = diagonal_crossings(comp.path, exclude_endpoints=True, collector=local)
        crossings = result.count
        if comp.kind is ComponentKind.BINARY_DIHEDRAL and not comp.closed:
            has_bd_arc = True
            start = reduce(*comp.path.points[0])
            end = reduce(*comp.path.points[-1])
            if not (is_corner(start, CORNER_CONTACT_TOL) and is_corner(end, CORNER_CONTACT_TOL)):
                local.add_error(
                    "binary dihedral arc does not end at pillowcase corners",
                    DiagnosticCode.BD_ARC_RULE,
                    component=comp.id,
                    start=start.as_tuple(),
                    end=end.as_tuple(),
                )
            generators = 2 * crossings + 1
        else:
            generators = 2 * crossings
        counts.append(
            ComponentCount(
                id=comp.id,
                kind=comp.kind,
                closed=comp.closed,
                diagonal_crossings=crossings,
                generators=generators,
                crossing_params=result.locations,
                label=comp.label,
            )
        )
    if has_bd_arc:
        local.add_info(BD_ARC_RULE_NOTE, DiagnosticCode.BD_ARC_RULE)
    bd = sum(c.generators for c in counts if c.kind is ComponentKind.BINARY_DIHEDRAL)
    nonbd = sum(c.generators for c in counts if c.kind is not ComponentKind.BINARY_DIHEDRAL)
    if collector is not None:
        collector.extend(local.diagnostics)
    logger.debug("census: %d components, bd=%d nonbd=%d", len(counts), bd, nonbd)
    return GeneratorReport(tuple(counts), GeneratorTotals(bd, nonbd), local.diagnostics)


@dataclass(frozen=True)
class TopologyReport:
    arcs: int
    circles: int
    incidences: int
    incident_circles: int
    disjoint_circles: int
    shape: str | None
    bd_isolated: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "arcs": self.arcs,
            "circles": self.circles,
            "incidences": self.incidences,
            "incident_circles": self.incident_circles,
            "disjoint_circles": self.disjoint_circles,
            "shape": self.shape,
            "bd_isolated": self.bd_isolated,
        }


def topology_report(components: Sequence[RepComponent]) -> TopologyReport:
    """Counts of arcs, circles and junctions, with a shape tag where recognizable.

    Incidences are counted once per junction, from the non-binary-dihedral side.
    """
    arcs = sum(1 for c in components if not c.closed)
    circles = sum(1 for c in components if c.closed)
    nonbd = [c for c in components if not c.is_binary_dihedral]
    incidences = sum(len(c.incidences) for c in nonbd)
    incident_circles = sum(1 for c in nonbd if c.closed and c.incidences)
    disjoint_circles = circles - incident_circles
    bd_isolated = incidences == 0

    shape: str | None = None
    if arcs == 1 and circles == 0:
        shape = "arc"
    elif arcs == 1 and circles == 1 and incidences == 2:
        shape = "phi"
    elif arcs == 1 and bd_isolated:
        shape = "arc+disjoint-circles"
    return TopologyReport(
        arcs=arcs,
        circles=circles,
        incidences=incidences,
        incident_circles=incident_circles,
        disjoint_circles=disjoint_circles,
        shape=shape,
        bd_isolated=bd_isolated,
    )


def involution_transform(path: LiftedPath) -> LiftedPath:
    """(gamma, theta) -> (π - gamma, 2π - theta) on a lift."""
    return path.transformed(-1.0, -1.0, (math.pi, TWO_PI))


def involuted(components: Sequence[ImageComponent]) -> list[ImageComponent]:
    """Apply the involution to every lifted image."""
    return [
        ImageComponent(c.id, c.kind, c.closed, involution_transform(c.path), c.label)
        for c in components
    ]


def _reduced_cloud(paths: Sequence[LiftedPath]) -> np.ndarray:
    if not paths:
        return np.zeros((0, 2))
    pts = np.vstack([p.points for p in paths])
    gamma, theta = reduce_array(pts[:, 0], pts[:, 1])
    return np.column_stack([gamma, theta])


def _equivalent_copies(cloud: np.ndarray) -> np.ndarray:
    copies = []
    for sign in (1.0, -1.0):
        for m in (-1, 0, 1):
            for n in (-1, 0, 1):
                copies.append(sign * cloud + TWO_PI * np.array([m, n]))
    return np.vstack(copies)


def _directed_distance(source: np.ndarray, target: np.ndarray) -> float:
    if len(source) == 0 or len(target) == 0:
        return 0.0 if len(source) == len(target) else math.inf
    tree = cKDTree(_equivalent_copies(target))
    distances, _ = tree.query(source)
    return float(np.max(distances))


def image_distance(first: Sequence[LiftedPath], second: Sequence[LiftedPath]) -> float:
    """Hausdorff distance, in the pillowcase, between two sets of lifted paths."""
    a, b = _reduced_cloud(first), _reduced_cloud(second)
    return max(_directed_distance(a, b), _directed_distance(b, a))


def symmetry_defect(
    paths: Sequence[LiftedPath],
    transform: Callable[[LiftedPath], LiftedPath] | None = None,
) -> float:
    """Hausdorff distance, in the pillowcase, between an image and its transform.

    The default transform is the image-preserving involution.
    """
    mapper = transform or involution_transform
    return image_distance(paths, [mapper(p) for p in paths])


def half_turn_transform(path: LiftedPath) -> LiftedPath:
    """The half turn (gamma, theta) -> (π - gamma, theta + π) on a lift."""
    return path.transformed(-1.0, 1.0, (math.pi, math.pi))


__all__ = [
    "BD_ARC_RULE_NOTE",
    "ComponentCount",
    "GeneratorReport",
    "GeneratorTotals",
    "ImageComponent",
    "TopologyReport",
    "count_generators",
    "half_turn_transform",
    "image_distance",
    "involuted",
    "involution_transform",
    "symmetry_defect",
    "topology_report",
]

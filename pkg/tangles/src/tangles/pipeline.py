"""
tangles.pipeline
End-to-end analyses consumed by the serializers and the CLI.

Each pipeline runs its stages in order, collects diagnostics instead of raising
for non-fatal findings, and returns a frozen AnalysisResult.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .census import (
    GeneratorReport,
    ImageComponent,
    TopologyReport,
    count_generators,
    half_turn_transform,
    image_distance,
    involution_transform,
    symmetry_defect,
    topology_report,
)
from .defaults import DEFAULT_SAMPLES, RESIDUAL_TOL
from .diagnostics import Diagnostic, DiagnosticCode, DiagnosticCollector, DiagnosticSeverity
from .dihedral import BDCurveKind, BranchedCoverData, bd_components, bd_slope
from .errors import InconsistencyError
from .pillowcase import LiftedPath
from .pretzel import (
    PretzelTangle,
    family_238_components,
    family_238_generator_count,
    nonbd_lines,
    regular_fiber_image,
)
from .quat import holonomy_pair, meridian_images, pillow_from_quats
from .torus import (
    ComponentKind,
    TorusTangle,
    WPoint,
    bd_image_shift,
    character_involution_array,
    component_image,
    compute_components,
    cover_data,
    p1,
    p2,
    pillow_cosines,
)
from .zeroset import GridSpec

_ORACLE_TOL = 1e-8
_FIBER_TOL = 1e-9
_FIBER_SAMPLES = 33


@dataclass(frozen=True, eq=False)
class ImageRecord:
    """One component's samples: W coordinates (when known) and the lifted image."""

    id: int
    kind: ComponentKind
    closed: bool
    path: LiftedPath
    coords: np.ndarray | None = field(default=None, repr=False)
    label: str = ""

    def as_census_input(self) -> ImageComponent:
        return ImageComponent(self.id, self.kind, self.closed, self.path, self.label)


@dataclass(frozen=True, eq=False)
class AnalysisResult:
    subject: str
    parameters: dict[str, Any]
    images: tuple[ImageRecord, ...]
    census: GeneratorReport
    topology: TopologyReport
    checks: dict[str, Any] = field(default_factory=dict)
    notes: tuple[Diagnostic, ...] = ()

    @property
    def has_errors(self) -> bool:
        return any(n.severity is DiagnosticSeverity.ERROR for n in self.notes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "parameters": dict(self.parameters),
            "components": [
                {
                    "id": rec.id,
                    "kind": rec.kind.value,
                    "closed": rec.closed,
                    "label": rec.label,
                    "samples": len(rec.path),
                }
                for rec in self.images
            ],
            "generators": self.census.to_dict(),
            "topology": self.topology.to_dict(),
            "checks": dict(self.checks),
            "notes": [n.to_dict() for n in self.notes],
        }


def _sampling_step(paths: list[LiftedPath]) -> float:
    return max((p.max_step() for p in paths), default=0.0)


class TorusPipeline:
    """
    Analysis of a torus-knot tangle.

    Workflow:
    1. Components of the representation space (BD locus plus traced Z lifts)
    2. Continuous pillowcase images
    3. Generator census and topology
    4. Symmetry of the image under the involution
    5. Quaternion oracle and W residuals on the emitted points
    6. Sign character: twisted points stay in W with the same image
    """

    def __init__(
        self,
        grid: GridSpec | None = None,
        samples: int = DEFAULT_SAMPLES,
        tol: float = RESIDUAL_TOL,
        oracle_points: int = 256,
        logger: logging.Logger | None = None,
    ):
        self.logger = logger or logging.getLogger(__name__)
        self.grid = grid or GridSpec()
        self.samples = samples
        self.tol = tol
        self.oracle_points = oracle_points

    def run(self, tangle: TorusTangle) -> AnalysisResult:
        collector = DiagnosticCollector(source="torus")
        self.logger.info("analysing %s on a %dx%d grid", tangle.label, self.grid.nx, self.grid.ny)

        # 1. Components
        components = compute_components(tangle, self.grid, self.samples, self.tol, collector)

        # 2. Images
        images = []
        for comp in components:
            image = component_image(tangle, comp, self.tol, collector)
            images.append(
                ImageRecord(
                    id=comp.id,
                    kind=comp.kind,
                    closed=comp.closed,
                    path=image.path,
                    coords=image.coords,
                    label="circle" if comp.closed else "arc",
                )
            )

        # 3. Census
        census = count_generators([rec.as_census_input() for rec in images], collector)
        topology = topology_report(components)

        # 4. Symmetry
        paths = [rec.path for rec in images]
        step = _sampling_step(paths)
        involution_defect = symmetry_defect(paths)
        if involution_defect > 2.0 * step:
            collector.add_warning(
                "image is not invariant under the involution",
                DiagnosticCode.INVARIANT_VIOLATION,
                defect=involution_defect,
                tolerance=2.0 * step,
            )
        shift = bd_image_shift(tangle)
        if shift:
            collector.add_info(
                "binary dihedral image is the arc map translated by (pi, 0)",
                DiagnosticCode.LOCUS_MISMATCH,
            )

        # 5. Oracle
        oracle = self.check_points(tangle, images, collector)

        # 6. Character
        character = self.check_character(tangle, images, collector)

        data = cover_data(tangle)
        checks = {
            "sampling_step": step,
            "involution_defect": involution_defect,
            "half_turn_defect": symmetry_defect(paths, half_turn_transform),
            "bd_shift": shift,
            "h_ba": data.h_ba,
            "h_bc": data.h_bc,
            **oracle,
            **character,
        }
        self.logger.info(
            "%s: %d generators (%d binary dihedral)",
            tangle.label,
            census.totals.total,
            census.totals.bd,
        )
        return AnalysisResult(
            subject="torus",
            parameters={
                "p": tangle.p,
                "q": tangle.q,
                "r": tangle.r,
                "s": tangle.s,
                "grid": self.grid.nx,
                "samples": self.samples,
                "tolerance": self.tol,
            },
            images=tuple(images),
            census=census,
            topology=topology,
            checks=checks,
            notes=collector.diagnostics,
        )

    def check_points(
        self, tangle: TorusTangle, images: list[ImageRecord], collector: DiagnosticCollector
    ) -> dict[str, Any]:
        """W residuals on all points, quaternion oracle on an evenly spaced subset."""
        all_coords = np.vstack([rec.coords for rec in images if rec.coords is not None])
        x, y, tau = all_coords.T
        residual = float(
            max(np.max(np.abs(p1(tangle, x, y, tau))), np.max(np.abs(p2(tangle, x, y, tau))))
        )
        if residual >= self.tol:
            collector.add_error(
                "emitted points leave W",
                DiagnosticCode.INVARIANT_VIOLATION,
                max_residual=residual,
            )

        stride = max(1, len(all_coords) // max(self.oracle_points, 1))
        subset = all_coords[::stride]
        cos_formula = np.column_stack(pillow_cosines(tangle, *subset.T))
        max_trace = 0.0
        max_cos_error = 0.0
        max_relation = 0.0
        for row, formula in zip(subset.tolist(), cos_formula):
            pair = holonomy_pair(WPoint(*row))
            merid = meridian_images(pair, tangle)
            max_trace = max(max_trace, merid.max_trace())
            max_relation = max(max_relation, merid.relation_defect())
            try:
                oracle = pillow_from_quats(merid, pair, tangle, require_traceless=False)
            except InconsistencyError as exc:
                collector.add_error(exc.message, DiagnosticCode.INVARIANT_VIOLATION, **exc.context)
                continue
            max_cos_error = max(max_cos_error, float(np.max(np.abs(np.asarray(oracle) - formula))))
        if max_trace >= _ORACLE_TOL or max_cos_error >= _ORACLE_TOL:
            collector.add_error(
                "quaternion oracle disagrees with the closed forms",
                DiagnosticCode.INVARIANT_VIOLATION,
                max_trace=max_trace,
                max_cos_error=max_cos_error,
            )
        return {
            "max_residual": residual,
            "oracle_points": len(subset),
            "max_trace": max_trace,
            "max_cos_error": max_cos_error,
            "max_relation_defect": max_relation,
        }

    def check_character(
        self, tangle: TorusTangle, images: list[ImageRecord], collector: DiagnosticCollector
    ) -> dict[str, float]:
        """Twist every emitted point by the sign character and compare."""
        coords = np.vstack([rec.coords for rec in images if rec.coords is not None])
        twisted = character_involution_array(tangle, coords)
        x, y, tau = twisted.T
        residual = float(
            max(np.max(np.abs(p1(tangle, x, y, tau))), np.max(np.abs(p2(tangle, x, y, tau))))
        )
        before = np.column_stack(pillow_cosines(tangle, *coords.T))
        after = np.column_stack(pillow_cosines(tangle, x, y, tau))
        defect = float(np.max(np.abs(after - before)))
        if residual >= self.tol or defect >= _ORACLE_TOL:
            collector.add_error(
                "sign character does not preserve the representation space",
                DiagnosticCode.INVARIANT_VIOLATION,
                character_residual=residual,
                character_defect=defect,
            )
        return {"character_residual": residual, "character_defect": defect}


class PretzelPipeline:
    """
    Analysis of the (-2, 3, n) pretzel tangle.

    Workflow:
    1. Arc and semicircle images
    2. Census checked against the closed forms, with discrepancy notes
    3. Regular fiber check on the non-binary-dihedral lines
    4. Involution symmetry, and the semicircles swapped onto each other
    """

    def __init__(self, samples: int = DEFAULT_SAMPLES, logger: logging.Logger | None = None):
        self.logger = logger or logging.getLogger(__name__)
        self.samples = samples

    def run(self, n: int) -> AnalysisResult:
        tangle = PretzelTangle.family_238(n)
        collector = DiagnosticCollector(source="pretzel")

        # 1. Images
        images = [
            ImageRecord(c.id, c.kind, c.closed, c.path, None, c.label)
            for c in family_238_components(n, self.samples)
        ]

        # 2. Census
        counted = family_238_generator_count(n, self.samples, collector)

        # 3. Fiber word on both lines
        worst = 0.0
        for line in nonbd_lines(tangle, _FIBER_SAMPLES):
            for gamma, theta in line.points.tolist():
                image = regular_fiber_image(tangle, gamma, theta)
                worst = max(worst, math.hypot(*image.vector))
        if worst >= _FIBER_TOL:
            collector.add_error(
                "regular fiber is not central on the non-binary-dihedral lines",
                DiagnosticCode.INVARIANT_VIOLATION,
                max_imaginary=worst,
            )

        # 4. Symmetry
        symmetry = self.check_symmetry(images, collector)

        topology = TopologyReport(
            arcs=1,
            circles=1,
            incidences=2,
            incident_circles=1,
            disjoint_circles=0,
            shape="phi",
            bd_isolated=False,
        )
        self.logger.info("(-2,3,%d) pretzel: %d generators", n, counted.total)
        return AnalysisResult(
            subject="pretzel",
            parameters={"p": tangle.p, "q": tangle.q, "r": tangle.r, "samples": self.samples},
            images=tuple(images),
            census=counted.report,
            topology=topology,
            checks={"fiber_max_imaginary": worst, **symmetry},
            notes=collector.diagnostics,
        )

    def check_symmetry(
        self, images: list[ImageRecord], collector: DiagnosticCollector
    ) -> dict[str, float]:
        """The whole image is involution invariant; the two semicircles are exchanged.

        Both semicircles cover the same segment, which the involution maps onto
        itself with its orientation reversed.
        """
        paths = [rec.path for rec in images]
        step = _sampling_step(paths)
        involution_defect = symmetry_defect(paths)
        first, second = (rec.path for rec in images if rec.label.startswith("semicircle"))
        swap_defect = image_distance([first], [involution_transform(second)])
        worst = max(involution_defect, swap_defect)
        if worst > 2.0 * step:
            collector.add_warning(
                "pretzel image is not invariant under the involution",
                DiagnosticCode.INVARIANT_VIOLATION,
                involution_defect=involution_defect,
                semicircle_swap_defect=swap_defect,
                tolerance=2.0 * step,
            )
        return {
            "sampling_step": step,
            "involution_defect": involution_defect,
            "semicircle_swap_defect": swap_defect,
        }


class BinaryDihedralPipeline:
    """Binary dihedral components from branched-cover data, with their census."""

    def __init__(self, samples: int = DEFAULT_SAMPLES, logger: logging.Logger | None = None):
        self.logger = logger or logging.getLogger(__name__)
        self.samples = samples

    def run(self, data: BranchedCoverData) -> AnalysisResult:
        collector = DiagnosticCollector(source="dihedral")
        curves = bd_components(data, self.samples)
        images = [
            ImageRecord(
                id=k,
                kind=ComponentKind.BINARY_DIHEDRAL,
                closed=curve.closed,
                path=curve.path,
                label=curve.kind.value,
            )
            for k, curve in enumerate(curves)
        ]
        census = count_generators([rec.as_census_input() for rec in images], collector)
        circles = sum(1 for c in curves if c.kind is BDCurveKind.CIRCLE)
        topology = TopologyReport(
            arcs=1,
            circles=circles,
            incidences=0,
            incident_circles=0,
            disjoint_circles=circles,
            shape="arc" if circles == 0 else "arc+disjoint-circles",
            bd_isolated=True,
        )
        slope = bd_slope(data)
        self.logger.info("binary dihedral data: 1 arc, %d circles", circles)
        return AnalysisResult(
            subject="bd",
            parameters={
                "h_ba": data.h_ba,
                "h_bc": data.h_bc,
                "aminus": data.a_minus_order,
                "offsets": [list(o) for o in data.offsets],
                "samples": self.samples,
            },
            images=tuple(images),
            census=census,
            topology=topology,
            checks={"slope": "inf" if slope == math.inf else str(slope)},
            notes=collector.diagnostics,
        )


__all__ = [
    "AnalysisResult",
    "BinaryDihedralPipeline",
    "ImageRecord",
    "PretzelPipeline",
    "TorusPipeline",
]

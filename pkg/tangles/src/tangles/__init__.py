# tangles package initialization
from tangles.census import (
    GeneratorReport,
    ImageComponent,
    TopologyReport,
    count_generators,
    symmetry_defect,
    topology_report,
)
from tangles.diagnostics import (
    Diagnostic,
    DiagnosticCode,
    DiagnosticCollector,
    DiagnosticSeverity,
)
from tangles.dihedral import BranchedCoverData, bd_components, bd_slope
from tangles.errors import (
    ConfigError,
    DomainError,
    InconsistencyError,
    TangleError,
    TangleParameterError,
)
from tangles.pillowcase import LiftedPath, PillowPoint, diagonal_crossings, reduce
from tangles.pipeline import (
    AnalysisResult,
    BinaryDihedralPipeline,
    PretzelPipeline,
    TorusPipeline,
)
from tangles.pretzel import PretzelTangle, family_238_generator_count
from tangles.torus import (
    ComponentKind,
    RepComponent,
    TorusTangle,
    WPoint,
    compute_components,
    component_image,
    trace_z,
)
from tangles.zeroset import GridSpec, trace_zero_set

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult",
    "BinaryDihedralPipeline",
    "BranchedCoverData",
    "ComponentKind",
    "ConfigError",
    "Diagnostic",
    "DiagnosticCode",
    "DiagnosticCollector",
    "DiagnosticSeverity",
    "DomainError",
    "GeneratorReport",
    "GridSpec",
    "ImageComponent",
    "InconsistencyError",
    "LiftedPath",
    "PillowPoint",
    "PretzelPipeline",
    "PretzelTangle",
    "RepComponent",
    "TangleError",
    "TangleParameterError",
    "TopologyReport",
    "TorusPipeline",
    "TorusTangle",
    "WPoint",
    "bd_components",
    "bd_slope",
    "component_image",
    "compute_components",
    "count_generators",
    "diagonal_crossings",
    "family_238_generator_count",
    "reduce",
    "symmetry_defect",
    "topology_report",
    "trace_z",
    "trace_zero_set",
]

"""Shared tolerances and defaults used across the tracing, census and CLI layers.

Every numeric threshold of the pipeline lives here so the tests and the CLI refer
to the same values. ``TANGLES_TOL`` overrides the residual tolerance at runtime.
"""

from __future__ import annotations

import math
import os
from collections.abc import Mapping
from typing import Final

from .errors import ConfigError

TOLERANCE_ENV_VAR: Final[str] = "TANGLES_TOL"

# Chebyshev / cube domain
CLAMP_TOL: Final[float] = 1e-12

# W membership and lifting
RESIDUAL_TOL: Final[float] = 1e-8
TAU_SLACK: Final[float] = 1e-9
COEFFICIENT_FLOOR: Final[float] = 1e-8
QUAT_UNIT_TOL: Final[float] = 1e-10

# Pillowcase
COSINE_SLACK: Final[float] = 1e-7
ANGLE_CONSISTENCY_TOL: Final[float] = 1e-6
CORNER_TOL: Final[float] = 1e-9
CORNER_CONTACT_TOL: Final[float] = 1e-6
TANGENCY_TOL: Final[float] = 1e-9
CONTINUITY_STEP: Final[float] = 0.1
MAX_REFINE_PASSES: Final[int] = 12

# Zero-set tracing
DEFAULT_GRID: Final[int] = 1024
MIN_GRID_CELLS: Final[int] = 16
POLISH_FACTOR: Final[float] = 1e-12
POLISH_MAX_ITER: Final[int] = 60
MIN_COMPONENT_VERTICES: Final[int] = 3

# Components and classification
JUNCTION_TOL: Final[float] = 1e-6
BD_IMAGE_TOL: Final[float] = 1e-6

# CLI and output
DEFAULT_SAMPLES: Final[int] = 2048
MIN_CLI_GRID: Final[int] = 64
MIN_CLI_SAMPLES: Final[int] = 256
SIGNIFICANT_DIGITS: Final[int] = 12
SVG_WIDTH: Final[int] = 400
SVG_HEIGHT: Final[int] = 800
SVG_STROKE: Final[int] = 2

DEFAULT_BOUNDS: Final[tuple[float, float, float, float]] = (-1.0, 1.0, -1.0, 1.0)


def resolve_tolerance(env: Mapping[str, str] | None = None) -> float:
    """Return the residual tolerance, honoring the ``TANGLES_TOL`` override.

    Raises:
        ConfigError: If the override is not a positive finite float.
    """
    source = os.environ if env is None else env
    raw = source.get(TOLERANCE_ENV_VAR)
    if raw is None or not raw.strip():
        return RESIDUAL_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise ConfigError("tolerance override is not a number", {"value": raw}) from exc
    if not math.isfinite(value) or value <= 0.0:
        raise ConfigError("tolerance override must be positive", {"value": raw})
    return value

"""
tangles.pillowcase
Geometry of the pillowcase quotient.

The pillowcase is the plane modulo (gamma, theta) -> ±(gamma + 2πm, theta + 2πn).
Its fundamental domain is [0, π] x [0, 2π] with the wrap identification
theta = 0 ~ theta = 2π and the folds (0, theta) ~ (0, 2π - theta),
(π, theta) ~ (π, 2π - theta). Points are stored canonically (PillowPoint) and
curves as continuous lifts to the plane (LiftedPath).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from .defaults import (
    ANGLE_CONSISTENCY_TOL,
    CONTINUITY_STEP,
    CORNER_CONTACT_TOL,
    CORNER_TOL,
    COSINE_SLACK,
    TANGENCY_TOL,
)
from .diagnostics import DiagnosticCode, DiagnosticCollector
from .errors import InconsistencyError, TangleParameterError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
_EDGE_EPS = 1e-12
_DEGENERATE_SIN = 1e-12

DIAGONAL_CORNERS: tuple[tuple[float, float], ...] = ((0.0, 0.0), (math.pi, math.pi))


@dataclass(frozen=True)
class PillowPoint:
    """Canonical pillowcase coordinates: gamma in [0, π], theta in [0, 2π)."""

    gamma: float
    theta: float

    def as_tuple(self) -> tuple[float, float]:
        return (self.gamma, self.theta)


@dataclass(frozen=True, eq=False)
class LiftedPath:
    """A curve in the plane covering a pillowcase curve.

    ``points`` has shape (n, 2) with columns (gamma, theta). ``params`` carries
    the curve parameter of each sample (arc parameter, W vertex index, ...).
    """

    points: np.ndarray
    closed: bool = False
    params: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "points", pts)
        if self.params is None:
            object.__setattr__(self, "params", np.arange(len(pts), dtype=float))
        else:
            params = np.asarray(self.params, dtype=float)
            if params.shape != (len(pts),):
                raise ValueError("params must have one entry per point")
            object.__setattr__(self, "params", params)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def gamma(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def theta(self) -> np.ndarray:
        return self.points[:, 1]

    def steps(self) -> np.ndarray:
        if len(self.points) < 2:
            return np.zeros(0)
        return np.hypot(*np.diff(self.points, axis=0).T)

    def max_step(self) -> float:
        steps = self.steps()
        return float(steps.max()) if steps.size else 0.0

    def reduced(self) -> np.ndarray:
        """Canonical coordinates of every sample, shape (n, 2)."""
        gamma, theta = reduce_array(self.points[:, 0], self.points[:, 1])
        return np.column_stack([gamma, theta])

    def transformed(self, gamma_sign: float, theta_sign: float, shift: tuple[float, float]) -> LiftedPath:
        """Apply the affine map (g, t) -> (gamma_sign g + shift0, theta_sign t + shift1)."""
        pts = self.points * np.array([gamma_sign, theta_sign]) + np.asarray(shift)
        return LiftedPath(pts, self.closed, self.params)


def reduce_array(gamma: ArrayLike, theta: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized canonical reduction; see :func:`reduce`."""
    g = np.mod(np.asarray(gamma, dtype=float), TWO_PI)
    t = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    g = np.where(g >= TWO_PI, g - TWO_PI, g)
    flip = g > math.pi
    g = np.where(flip, TWO_PI - g, g)
    t = np.where(flip, np.mod(-t, TWO_PI), t)
    t = np.where(t >= TWO_PI, t - TWO_PI, t)
    g = np.where(g < _EDGE_EPS, 0.0, g)
    g = np.where(math.pi - g < _EDGE_EPS, math.pi, g)
    on_edge = (g == 0.0) | (g == math.pi)
    t = np.where(on_edge & (t > math.pi), TWO_PI - t, t)
    t = np.where(t >= TWO_PI - _EDGE_EPS, 0.0, t)
    return g, t


def reduce(gamma: float, theta: float) -> PillowPoint:
    """Canonical representative of (gamma, theta) under ±(gamma + 2πm, theta + 2πn).

    Idempotent. On the fold edges gamma in {0, π} theta is normalized to [0, π].
    """
    g, t = reduce_array(gamma, theta)
    return PillowPoint(float(g), float(t))


def angles_from_cosines_array(
    cos_gamma: ArrayLike, cos_theta: ArrayLike, cos_diff: ArrayLike
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Recover canonical angles from cosine triples, elementwise.

    Returns (gamma, theta, mismatch) where mismatch is the smaller of the two
    |cos(theta - gamma) - cos_diff| values; callers compare it against the
    consistency tolerance.
    """
    cg = np.asarray(cos_gamma, dtype=float)
    ct = np.asarray(cos_theta, dtype=float)
    cd = np.asarray(cos_diff, dtype=float)
    for name, arr in (("cos_gamma", cg), ("cos_theta", ct), ("cos_diff", cd)):
        if arr.size and np.any(np.abs(arr) - 1.0 > COSINE_SLACK):
            raise InconsistencyError(f"{name} outside [-1, 1]", {"max_abs": float(np.abs(arr).max())})
    gamma = np.arccos(np.clip(cg, -1.0, 1.0))
    theta_a = np.arccos(np.clip(ct, -1.0, 1.0))
    theta_b = TWO_PI - theta_a
    err_a = np.abs(np.cos(theta_a - gamma) - cd)
    err_b = np.abs(np.cos(theta_b - gamma) - cd)
    degenerate = np.abs(np.sin(gamma)) < _DEGENERATE_SIN
    use_b = (err_b < err_a) & ~degenerate
    theta = np.where(use_b, theta_b, theta_a)
    mismatch = np.where(degenerate, np.minimum(err_a, err_b), np.where(use_b, err_b, err_a))
    g, t = reduce_array(gamma, theta)
    return g, t, mismatch


def angles_from_cosines(cg: float, ct: float, ctg: float) -> PillowPoint:
    """Pillowcase point with cos(gamma) = cg, cos(theta) = ct, cos(theta - gamma) = ctg.

    Raises:
        InconsistencyError: If neither choice of theta matches ctg within 1e-6
    """
    gamma, theta, mismatch = angles_from_cosines_array(cg, ct, ctg)
    if float(mismatch) >= ANGLE_CONSISTENCY_TOL:
        raise InconsistencyError(
            "cosine triple is not consistent", {"cg": cg, "ct": ct, "ctg": ctg}
        )
    return PillowPoint(float(gamma), float(theta))


def involution(p: PillowPoint) -> PillowPoint:
    """The symmetry (gamma, theta) -> (π - gamma, 2π - theta) preserving tangle images."""
    return reduce(math.pi - p.gamma, TWO_PI - p.theta)


def half_turn(p: PillowPoint) -> PillowPoint:
    """The second Klein-four generator (gamma, theta) -> (π - gamma, theta + π)."""
    return reduce(math.pi - p.gamma, p.theta + math.pi)


def is_corner(p: PillowPoint, tol: float = CORNER_TOL) -> bool:
    """True iff p is within tol of one of the four corner points."""
    near_gamma = min(abs(p.gamma), abs(p.gamma - math.pi)) <= tol
    near_theta = min(abs(p.theta), abs(p.theta - math.pi), abs(p.theta - TWO_PI)) <= tol
    return near_gamma and near_theta


def _near_diagonal_corner(p: PillowPoint, tol: float) -> bool:
    return any(quotient_distance(p, PillowPoint(g, t)) <= tol for g, t in DIAGONAL_CORNERS)


def nearest_lift(previous: tuple[float, float], gamma: float, theta: float) -> tuple[float, float]:
    """The lift of (gamma, theta) closest to ``previous`` in the plane."""
    best: tuple[float, float] | None = None
    best_dist = math.inf
    for sign in (1.0, -1.0):
        g, t = sign * gamma, sign * theta
        g += TWO_PI * round((previous[0] - g) / TWO_PI)
        t += TWO_PI * round((previous[1] - t) / TWO_PI)
        dist = math.hypot(g - previous[0], t - previous[1])
        if dist < best_dist:
            best, best_dist = (g, t), dist
    assert best is not None
    return best


def quotient_distance(p: PillowPoint, q: PillowPoint) -> float:
    """Distance in the plane between p and the nearest lift of q."""
    g, t = nearest_lift((p.gamma, p.theta), q.gamma, q.theta)
    return math.hypot(g - p.gamma, t - p.theta)


def diagonal_function(points: np.ndarray) -> np.ndarray:
    """g = sin((theta - gamma)/2) on lifted points; zero exactly on the diagonal."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    return np.sin((pts[:, 1] - pts[:, 0]) / 2.0)


def lift_path(
    points: ArrayLike,
    closed: bool = False,
    params: ArrayLike | None = None,
) -> LiftedPath:
    """Lift a sequence of pillowcase points to a continuous planar path.

    Each point is replaced by its lift nearest to the previous lifted point. A
    closed input (first point repeated at the end) is first rotated to start
    where |sin((theta - gamma)/2)| is largest, so the seam never sits on the
    diagonal.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    prm = np.arange(len(pts), dtype=float) if params is None else np.asarray(params, dtype=float)
    if closed and len(pts) > 2:
        core, core_params = pts[:-1], prm[:-1]
        start = int(np.argmax(np.abs(diagonal_function(core))))
        core = np.roll(core, -start, axis=0)
        core_params = np.roll(core_params, -start)
        pts = np.vstack([core, core[:1]])
        prm = np.concatenate([core_params, core_params[:1]])
    lifted = np.empty_like(pts)
    if len(pts):
        lifted[0] = pts[0]
    for idx in range(1, len(pts)):
        lifted[idx] = nearest_lift((lifted[idx - 1, 0], lifted[idx - 1, 1]), pts[idx, 0], pts[idx, 1])
    return LiftedPath(lifted, closed, prm)


@dataclass(frozen=True)
class CrossingResult:
    """Transverse diagonal crossings of a lifted path."""

    count: int
    locations: tuple[float, ...]
    tangencies: tuple[float, ...] = ()
    corner_hits: tuple[float, ...] = ()


def _interpolate_param(path: LiftedPath, position: float) -> float:
    idx = np.arange(len(path.params), dtype=float)
    return float(np.interp(position, idx, path.params))


def _point_at(path: LiftedPath, position: float) -> PillowPoint:
    idx = np.arange(len(path.points), dtype=float)
    g = float(np.interp(position, idx, path.points[:, 0]))
    t = float(np.interp(position, idx, path.points[:, 1]))
    return reduce(g, t)


def diagonal_crossings(
    path: LiftedPath,
    exclude_endpoints: bool = True,
    collector: DiagnosticCollector | None = None,
) -> CrossingResult:
    """Count transverse crossings of the diagonal {gamma = theta}.

    A crossing is a sign change of sin((theta - gamma)/2) along the lift. Zero
    runs without a sign change are tangencies (warned, not counted). Crossings
    at the corners (0, 0) and (π, π) are excluded. Zero runs touching an end of
    an open path count only when ``exclude_endpoints`` is false.
    """
    if path.max_step() > 2.0 * CONTINUITY_STEP and collector is not None:
        collector.add_warning(
            "lifted path exceeds the continuity step",
            DiagnosticCode.COARSE_STEP,
            max_step=path.max_step(),
        )
    g = diagonal_function(path.points)
    zero = np.abs(g) < TANGENCY_TOL
    locations: list[float] = []
    tangencies: list[float] = []
    corner_hits: list[float] = []

    def record(position: float) -> None:
        point = _point_at(path, position)
        param = _interpolate_param(path, position)
        if _near_diagonal_corner(point, CORNER_CONTACT_TOL):
            corner_hits.append(param)
            if collector is not None:
                collector.add_info(
                    "diagonal contact at a corner ignored",
                    DiagnosticCode.CORNER_CONTACT,
                    param=param,
                )
        else:
            locations.append(param)

    last_sign = 0.0
    last_index = -1
    run_start: int | None = None
    for idx in range(len(g)):
        if zero[idx]:
            if run_start is None:
                run_start = idx
            continue
        sign = math.copysign(1.0, g[idx])
        if last_sign == 0.0:
            if run_start is not None and not exclude_endpoints:
                record((run_start + idx - 1) / 2.0)
        elif run_start is None:
            if sign != last_sign:
                prev = g[last_index]
                record(last_index + prev / (prev - g[idx]))
        else:
            middle = (run_start + idx - 1) / 2.0
            if sign != last_sign:
                record(middle)
            else:
                param = _interpolate_param(path, middle)
                tangencies.append(param)
                if collector is not None:
                    collector.add_warning(
                        "tangential contact with the diagonal",
                        DiagnosticCode.TANGENCY,
                        param=param,
                    )
        last_sign, last_index, run_start = sign, idx, None
    if run_start is not None and not exclude_endpoints and last_sign != 0.0:
        record((run_start + len(g) - 1) / 2.0)
    logger.debug("diagonal crossings: %d over %d samples", len(locations), len(g))
    return CrossingResult(len(locations), tuple(locations), tuple(tangencies), tuple(corner_hits))


def bd_line_distance(gamma: ArrayLike, theta: ArrayLike, h_ba: int, h_bc: int) -> np.ndarray:
    """Distance from lifted points to the lattice lines carrying a BD arc image.

    The arc t -> (h_ba t, (h_ba - h_bc) t) covers every line through a lattice
    point 2π(m, n) with direction v = (h_ba, h_ba - h_bc); a point lies on one of
    them iff h_ba·theta - (h_ba - h_bc)·gamma is a multiple of 2π·gcd(h_ba, h_bc).
    """
    if h_ba == 0 and h_bc == 0:
        raise TangleParameterError("h_ba and h_bc cannot both vanish")
    v0, v1 = h_ba, h_ba - h_bc
    period = TWO_PI * math.gcd(h_ba, h_bc)
    cross = h_ba * np.asarray(theta, dtype=float) - v1 * np.asarray(gamma, dtype=float)
    offset = np.mod(cross + period / 2.0, period) - period / 2.0
    return np.abs(offset) / math.hypot(v0, v1)


def on_bd_line(p: PillowPoint, h_ba: int, h_bc: int, tol: float) -> bool:
    return float(bd_line_distance(p.gamma, p.theta, h_ba, h_bc)) <= tol


__all__ = [
    "DIAGONAL_CORNERS",
    "TWO_PI",
    "CrossingResult",
    "LiftedPath",
    "PillowPoint",
    "angles_from_cosines",
    "angles_from_cosines_array",
    "bd_line_distance",
    "diagonal_crossings",
    "diagonal_function",
    "half_turn",
    "involution",
    "is_corner",
    "lift_path",
    "nearest_lift",
    "on_bd_line",
    "quotient_distance",
    "reduce",
    "reduce_array",
]

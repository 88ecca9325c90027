"""
tangles.zeroset
Implicit-curve extraction on a rectangle.

The field is sampled on a regular grid, sign changes along grid edges become
vertices, and the marching-squares cell table links them into maximal
polylines. Ambiguous saddle cells are resolved by sampling the cell center.
Every vertex is then polished along its grid edge with a bracketed secant
iteration, so emitted vertices are roots to near machine precision.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike
from scipy import optimize

from .defaults import (
    DEFAULT_BOUNDS,
    DEFAULT_GRID,
    MIN_COMPONENT_VERTICES,
    MIN_GRID_CELLS,
    POLISH_FACTOR,
    POLISH_MAX_ITER,
)
from .diagnostics import DiagnosticCode, DiagnosticCollector
from .errors import DomainError, TangleParameterError

logger = logging.getLogger(__name__)

ScalarField = Callable[[np.ndarray, np.ndarray], np.ndarray]
"""Vectorized field f(x, y) evaluated elementwise on equally shaped arrays."""

_DUPLICATE_EPS = 1e-14


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid: ``nx`` by ``ny`` cells over ``bounds`` = (x0, x1, y0, y1)."""

    nx: int = DEFAULT_GRID
    ny: int = DEFAULT_GRID
    bounds: tuple[float, float, float, float] = DEFAULT_BOUNDS

    def __post_init__(self) -> None:
        if self.nx < MIN_GRID_CELLS or self.ny < MIN_GRID_CELLS:
            raise TangleParameterError(
                f"grid needs at least {MIN_GRID_CELLS} cells per axis",
                {"nx": self.nx, "ny": self.ny},
            )
        x0, x1, y0, y1 = self.bounds
        if not (x0 < x1 and y0 < y1):
            raise TangleParameterError("grid bounds must be increasing", {"bounds": self.bounds})

    @classmethod
    def square(cls, n: int, bounds: tuple[float, float, float, float] = DEFAULT_BOUNDS) -> GridSpec:
        return cls(n, n, bounds)

    def xs(self) -> np.ndarray:
        return np.linspace(self.bounds[0], self.bounds[1], self.nx + 1)

    def ys(self) -> np.ndarray:
        return np.linspace(self.bounds[2], self.bounds[3], self.ny + 1)

    @property
    def cell_width(self) -> float:
        return (self.bounds[1] - self.bounds[0]) / self.nx

    @property
    def cell_height(self) -> float:
        return (self.bounds[3] - self.bounds[2]) / self.ny

    @property
    def cell_diameter(self) -> float:
        return math.hypot(self.cell_width, self.cell_height)


@dataclass(frozen=True, eq=False)
class CurveComponent:
    """A traced polyline. Closed components repeat their first vertex at the end."""

    vertices: np.ndarray
    closed: bool
    kind: str | None = None
    unpolished: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        verts = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "vertices", verts)
        mask = (
            np.zeros(len(verts), dtype=bool)
            if self.unpolished is None
            else np.asarray(self.unpolished, dtype=bool)
        )
        object.__setattr__(self, "unpolished", mask)

    def __len__(self) -> int:
        return len(self.vertices)

    def with_kind(self, kind: str) -> CurveComponent:
        return replace(self, kind=kind)

    @property
    def length(self) -> float:
        return polyline_length(self.vertices)

    @property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices[0], self.vertices[-1]


class PolishResult(NamedTuple):
    x: float
    y: float
    converged: bool


def polyline_length(vertices: ArrayLike) -> float:
    pts = np.asarray(vertices, dtype=float).reshape(-1, 2)
    if len(pts) < 2:
        return 0.0
    return float(np.hypot(*np.diff(pts, axis=0).T).sum())


def _evaluate(f: ScalarField, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    values = np.asarray(f(xs, ys), dtype=float)
    if values.shape != np.shape(xs):
        values = np.broadcast_to(values, np.shape(xs)).astype(float)
    return values


def polish_point(
    f: ScalarField,
    seed: tuple[float, float],
    direction: tuple[float, float],
    half_width: float = 0.01,
    scale: float = 1.0,
) -> PolishResult:
    """Move ``seed`` along ``direction`` onto the zero set of f.

    Runs a secant iteration (scipy ``newton`` without derivative) and falls back
    to ``brentq`` on [-half_width, half_width] when the secant step diverges or
    leaves the window. Without convergence the seed is returned unpolished.
    """
    dx, dy = direction
    norm = math.hypot(dx, dy)
    if norm == 0.0:
        raise DomainError("polish direction must be nonzero")
    dx, dy = dx / norm, dy / norm
    sx, sy = seed
    target = POLISH_FACTOR * scale

    def along(t: float) -> float:
        return float(_evaluate(f, np.asarray(sx + t * dx), np.asarray(sy + t * dy)))

    if abs(along(0.0)) < target:
        return PolishResult(sx, sy, True)
    try:
        t = float(
            optimize.newton(along, 0.0, x1=half_width * 1e-3, tol=1e-15, maxiter=POLISH_MAX_ITER)
        )
        if abs(t) <= half_width and abs(along(t)) < target:
            return PolishResult(sx + t * dx, sy + t * dy, True)
    except (RuntimeError, OverflowError, ZeroDivisionError):
        logger.debug("secant polish did not converge at %s", seed)
    lo, hi = along(-half_width), along(half_width)
    if lo * hi < 0.0:
        t = float(optimize.brentq(along, -half_width, half_width, xtol=1e-15, maxiter=200))
        return PolishResult(sx + t * dx, sy + t * dy, abs(along(t)) < target)
    return PolishResult(sx, sy, False)


def _polish_edges(
    f: ScalarField,
    start: np.ndarray,
    end: np.ndarray,
    f_start: np.ndarray,
    f_end: np.ndarray,
    target: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Illinois regula falsi on all bracketing edges at once.

    Returns (points, converged) where points has shape (n, 2).
    """
    n = len(start)
    lo = np.zeros(n)
    hi = np.ones(n)
    f_lo = f_start.astype(float).copy()
    f_hi = f_end.astype(float).copy()
    side = np.zeros(n, dtype=int)
    t = np.clip(f_lo / (f_lo - f_hi), 0.0, 1.0)
    converged = np.zeros(n, dtype=bool)
    active = np.arange(n)
    delta = end - start
    for _ in range(POLISH_MAX_ITER):
        if active.size == 0:
            break
        pts = start[active] + t[active, None] * delta[active]
        ft = _evaluate(f, pts[:, 0], pts[:, 1])
        done = (np.abs(ft) < target) | (hi[active] - lo[active] < 4.0 * np.finfo(float).eps)
        converged[active[done]] = True
        keep = ~done
        idx, ft = active[keep], ft[keep]
        same_lo = np.sign(ft) == np.sign(f_lo[idx])
        # Illinois: halve the stale endpoint's value when the same side repeats
        move_lo, move_hi = idx[same_lo], idx[~same_lo]
        lo[move_lo], f_lo[move_lo] = t[move_lo], ft[same_lo]
        f_hi[move_lo[side[move_lo] == -1]] *= 0.5
        side[move_lo] = -1
        hi[move_hi], f_hi[move_hi] = t[move_hi], ft[~same_lo]
        f_lo[move_hi[side[move_hi] == 1]] *= 0.5
        side[move_hi] = 1
        denom = f_hi[idx] - f_lo[idx]
        safe = denom != 0.0
        t_new = np.where(
            safe,
            (lo[idx] * f_hi[idx] - hi[idx] * f_lo[idx]) / np.where(safe, denom, 1.0),
            0.5 * (lo[idx] + hi[idx]),
        )
        t[idx] = np.clip(t_new, lo[idx], hi[idx])
        active = idx
    points = start + t[:, None] * delta
    return points, converged


def _cell_segments(
    f: ScalarField,
    grid: GridSpec,
    positive: np.ndarray,
    h_cross: np.ndarray,
    v_cross: np.ndarray,
) -> np.ndarray:
    """Pairs of crossing-edge ids joined inside each cell, shape (m, 2)."""
    nx, ny = grid.nx, grid.ny
    n_h = (ny + 1) * nx
    jj, ii = np.meshgrid(np.arange(ny), np.arange(nx), indexing="ij")
    bottom_id = jj * nx + ii
    top_id = (jj + 1) * nx + ii
    left_id = n_h + jj * (nx + 1) + ii
    right_id = left_id + 1
    # order bottom, right, top, left
    ids = np.stack([bottom_id, right_id, top_id, left_id], axis=-1)
    flags = np.stack(
        [h_cross[:-1, :], v_cross[:, 1:], h_cross[1:, :], v_cross[:, :-1]], axis=-1
    )
    count = flags.sum(axis=-1)

    pairs = []
    two = count == 2
    if np.any(two):
        order = np.argsort(~flags[two], axis=-1, kind="stable")[:, :2]
        chosen = np.take_along_axis(ids[two], order, axis=-1)
        pairs.append(chosen)

    four = count == 4
    if np.any(four):
        sj, si = np.nonzero(four)
        xs, ys = grid.xs(), grid.ys()
        cx = 0.5 * (xs[si] + xs[si + 1])
        cy = 0.5 * (ys[sj] + ys[sj + 1])
        center_positive = _evaluate(f, cx, cy) > 0.0
        corner_bl = positive[sj, si]
        cell_ids = ids[sj, si]
        joined = center_positive == corner_bl
        # joined: isolate the bottom-right and top-left corners
        first = np.where(joined[:, None], cell_ids[:, [0, 1]], cell_ids[:, [0, 3]])
        second = np.where(joined[:, None], cell_ids[:, [2, 3]], cell_ids[:, [2, 1]])
        pairs.extend([first, second])
        logger.debug("resolved %d saddle cells by center sampling", len(sj))

    if not pairs:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(pairs, axis=0).astype(np.int64)


def _link(segments: np.ndarray, n_nodes: int) -> list[tuple[list[int], bool]]:
    """Walk the edge graph (degree <= 2) into chains; open chains first."""
    neighbors = np.full((n_nodes, 2), -1, dtype=np.int64)
    degree = np.zeros(n_nodes, dtype=np.int64)
    for a, b in segments.tolist():
        neighbors[a, degree[a]] = b
        degree[a] += 1
        neighbors[b, degree[b]] = a
        degree[b] += 1
    visited = np.zeros(n_nodes, dtype=bool)
    chains: list[tuple[list[int], bool]] = []

    def walk(start: int) -> list[int]:
        chain = [start]
        visited[start] = True
        current = start
        while True:
            nxt = -1
            for k in range(degree[current]):
                cand = int(neighbors[current, k])
                if not visited[cand]:
                    nxt = cand
                    break
            if nxt < 0:
                return chain
            visited[nxt] = True
            chain.append(nxt)
            current = nxt

    for start in np.nonzero(degree == 1)[0].tolist():
        if not visited[start]:
            chains.append((walk(start), False))
    for start in np.nonzero(degree == 2)[0].tolist():
        if not visited[start]:
            chain = walk(start)
            chain.append(chain[0])
            chains.append((chain, True))
    return chains


def _dedupe(points: np.ndarray, mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(points) < 2:
        return points, mask
    step = np.hypot(*np.diff(points, axis=0).T)
    keep = np.concatenate([[True], step > _DUPLICATE_EPS])
    return points[keep], mask[keep]


def trace_zero_set(
    f: ScalarField,
    grid: GridSpec | None = None,
    collector: DiagnosticCollector | None = None,
) -> list[CurveComponent]:
    """Trace the zero set of ``f`` on ``grid`` into maximal polylines.

    Open components end on the rectangle boundary; closed ones repeat their
    first vertex. Components with fewer than three distinct vertices are
    dropped with a warning.

    Raises:
        DomainError: If f is not finite on the grid
    """
    grid = grid or GridSpec()
    xs, ys = grid.xs(), grid.ys()
    gx, gy = np.meshgrid(xs, ys)
    values = _evaluate(f, gx, gy)
    if not np.all(np.isfinite(values)):
        raise DomainError("scalar field is not finite on the grid")
    scale = float(np.max(np.abs(values))) or 1.0
    target = POLISH_FACTOR * scale

    positive = values > 0.0
    h_cross = positive[:, :-1] != positive[:, 1:]
    v_cross = positive[:-1, :] != positive[1:, :]
    nx, ny = grid.nx, grid.ny
    n_h = (ny + 1) * nx

    hj, hi = np.nonzero(h_cross)
    vj, vi = np.nonzero(v_cross)
    edge_ids = np.concatenate([hj * nx + hi, n_h + vj * (nx + 1) + vi])
    if edge_ids.size == 0:
        logger.debug("no sign changes on %dx%d grid", nx, ny)
        return []
    start = np.concatenate(
        [np.column_stack([xs[hi], ys[hj]]), np.column_stack([xs[vi], ys[vj]])]
    )
    end = np.concatenate(
        [np.column_stack([xs[hi + 1], ys[hj]]), np.column_stack([xs[vi], ys[vj + 1]])]
    )
    f_start = np.concatenate([values[hj, hi], values[vj, vi]])
    f_end = np.concatenate([values[hj, hi + 1], values[vj + 1, vi]])
    points, converged = _polish_edges(f, start, end, f_start, f_end, target)

    segments = _cell_segments(f, grid, positive, h_cross, v_cross)
    compact = np.searchsorted(edge_ids, segments) if segments.size else segments
    # edge_ids is sorted: horizontal ids precede vertical ids and nonzero() is row-major
    chains = _link(compact, len(edge_ids))
    logger.debug(
        "traced %d crossings into %d chains on %dx%d grid", len(edge_ids), len(chains), nx, ny
    )

    components: list[CurveComponent] = []
    for chain, closed in chains:
        verts, mask = _dedupe(points[chain], ~converged[chain])
        distinct = len(verts) - 1 if closed else len(verts)
        if distinct < MIN_COMPONENT_VERTICES:
            if collector is not None:
                collector.add_warning(
                    "discarded a component with too few vertices",
                    DiagnosticCode.SHORT_COMPONENT,
                    vertices=int(distinct),
                )
            continue
        if closed:
            verts[-1] = verts[0]
        components.append(CurveComponent(verts, closed, unpolished=mask))

    n_unpolished = int((~converged).sum())
    if n_unpolished and collector is not None:
        collector.add_warning(
            "vertices kept without reaching the polish tolerance",
            DiagnosticCode.UNPOLISHED_VERTEX,
            count=n_unpolished,
        )
    return components


__all__ = [
    "CurveComponent",
    "GridSpec",
    "PolishResult",
    "ScalarField",
    "polish_point",
    "polyline_length",
    "trace_zero_set",
]

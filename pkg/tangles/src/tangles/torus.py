"""
tangles.torus
Representation spaces of torus-knot tangles.

A tangle is given by (p, q, r, s) with pr + qs = 1. Its traceless
representations are parametrized by W, the common zeros of p1 and p2 in the
unit cube; W projects onto Z, the zero set of p(x, y) in the unit square. This
module evaluates the polynomial system, traces Z, lifts it back to W, assembles
the components (the binary dihedral arc plus traced non-binary-dihedral curves)
and maps them into the pillowcase.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum

import numpy as np
from numpy.typing import ArrayLike
from scipy import optimize

from .cheb import cheb_S, cheb_T, cheb_T_over_x
from .defaults import (
    ANGLE_CONSISTENCY_TOL,
    BD_IMAGE_TOL,
    COEFFICIENT_FLOOR,
    CONTINUITY_STEP,
    COSINE_SLACK,
    DEFAULT_SAMPLES,
    JUNCTION_TOL,
    MAX_REFINE_PASSES,
    MIN_COMPONENT_VERTICES,
    RESIDUAL_TOL,
    TAU_SLACK,
)
from .diagnostics import DiagnosticCode, DiagnosticCollector
from .dihedral import BranchedCoverData, torus_bd_data
from .errors import InconsistencyError, TangleParameterError
from .pillowcase import (
    LiftedPath,
    PillowPoint,
    angles_from_cosines_array,
    bd_line_distance,
    lift_path,
    quotient_distance,
    reduce,
)
from .zeroset import CurveComponent, GridSpec, polish_point, trace_zero_set

logger = logging.getLogger(__name__)

_GAP_TAU_JUMP = 0.05
_GRADIENT_STEP = 1e-7


class BDCase(Enum):
    """Parity classes selecting the binary dihedral locus."""

    P_EVEN = "p-even"
    Q_EVEN = "q-even"
    ODD_R_ODD = "p,q,r-odd"
    ODD_R_EVEN = "p,q-odd,r-even"


class ComponentKind(str, Enum):
    BINARY_DIHEDRAL = "binary-dihedral"
    NON_BINARY_DIHEDRAL = "non-binary-dihedral"


class LiftStatus(IntEnum):
    """Outcome of lifting a Z point to W."""

    OK = 0
    COLLAPSED = 1
    OUT_OF_RANGE = 2
    RESIDUAL = 3
    DEGENERATE = 4


def default_rs(p: int, q: int) -> tuple[int, int]:
    """r = p^{-1} mod q in (0, q) and s = (1 - pr)/q.

    Raises:
        TangleParameterError: If p, q < 2 or gcd(p, q) != 1
    """
    if p < 2 or q < 2:
        raise TangleParameterError("p and q must be at least 2", {"p": p, "q": q})
    if math.gcd(p, q) != 1:
        raise TangleParameterError("p and q are not coprime", {"p": p, "q": q})
    r = pow(p, -1, q)
    s = (1 - p * r) // q
    return r, s


@dataclass(frozen=True)
class TorusTangle:
    """Torus-knot tangle data with gcd(p, q) = 1, p, q >= 2 and pr + qs = 1."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.p < 2 or self.q < 2:
            raise TangleParameterError("p and q must be at least 2", {"p": self.p, "q": self.q})
        if math.gcd(self.p, self.q) != 1:
            raise TangleParameterError("p and q are not coprime", {"p": self.p, "q": self.q})
        if self.p * self.r + self.q * self.s != 1:
            raise TangleParameterError(
                "r and s must satisfy pr + qs = 1",
                {"p": self.p, "q": self.q, "r": self.r, "s": self.s},
            )

    @classmethod
    def from_pq(cls, p: int, q: int, r: int | None = None, s: int | None = None) -> TorusTangle:
        """Build a tangle, completing (r, s) from whichever of them is given."""
        if r is None and s is None:
            r, s = default_rs(p, q)
        elif s is None:
            assert r is not None
            if (1 - p * r) % q:
                raise TangleParameterError("no integer s with pr + qs = 1", {"p": p, "q": q, "r": r})
            s = (1 - p * r) // q
        elif r is None:
            if (1 - q * s) % p:
                raise TangleParameterError("no integer r with pr + qs = 1", {"p": p, "q": q, "s": s})
            r = (1 - q * s) // p
        return cls(p, q, r, s)

    @property
    def bd_case(self) -> BDCase:
        if self.p % 2 == 0:
            return BDCase.P_EVEN
        if self.q % 2 == 0:
            return BDCase.Q_EVEN
        return BDCase.ODD_R_ODD if self.r % 2 else BDCase.ODD_R_EVEN

    @property
    def label(self) -> str:
        return f"T({self.p},{self.q}) r={self.r} s={self.s}"


@dataclass(frozen=True)
class WPoint:
    x: float
    y: float
    tau: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.tau)

    def residuals(self, t: TorusTangle) -> tuple[float, float]:
        return (
            float(p1(t, self.x, self.y, self.tau)),
            float(p2(t, self.x, self.y, self.tau)),
        )


@dataclass(frozen=True)
class Incidence:
    """A junction between two components of the representation space."""

    other: int
    point: WPoint


@dataclass(frozen=True, eq=False)
class RepComponent:
    """A component of the representation space, stored as W coordinates.

    ``coords`` has shape (n, 3) with columns (x, y, tau); closed components repeat
    their first point at the end. ``params`` is the curve parameter per point.
    """

    id: int
    coords: np.ndarray
    closed: bool
    kind: ComponentKind
    incidences: tuple[Incidence, ...] = ()
    params: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        coords = np.asarray(self.coords, dtype=float).reshape(-1, 3)
        object.__setattr__(self, "coords", coords)
        if self.params is None:
            object.__setattr__(self, "params", np.arange(len(coords), dtype=float))
        else:
            object.__setattr__(self, "params", np.asarray(self.params, dtype=float))

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def points(self) -> list[WPoint]:
        return [WPoint(*row) for row in self.coords.tolist()]

    @property
    def is_binary_dihedral(self) -> bool:
        return self.kind is ComponentKind.BINARY_DIHEDRAL


def _sqrt_factor(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.sqrt(np.clip((1.0 - x * x) * (1.0 - y * y), 0.0, None))


def _arrays(*values: ArrayLike) -> list[np.ndarray]:
    return [np.clip(np.asarray(v, dtype=float), -1.0, 1.0) for v in values]


def _scalar_or_array(result: np.ndarray, like: ArrayLike) -> float | np.ndarray:
    return float(result) if np.ndim(like) == 0 else result


def p1(t: TorusTangle, x: ArrayLike, y: ArrayLike, tau: ArrayLike) -> float | np.ndarray:
    """p1 = T_{s+p}(x)T_{q-r}(y) - sqrt((1-x^2)(1-y^2)) S_{s+p}(x)S_{q-r}(y) tau."""
    xs, ys, ts = _arrays(x, y, tau)
    value = cheb_T(t.s + t.p, xs) * cheb_T(t.q - t.r, ys) - _sqrt_factor(xs, ys) * cheb_S(
        t.s + t.p, xs
    ) * cheb_S(t.q - t.r, ys) * ts
    return _scalar_or_array(np.asarray(value), x)


def p2(t: TorusTangle, x: ArrayLike, y: ArrayLike, tau: ArrayLike) -> float | np.ndarray:
    """p2 = T_s(x)T_{-r}(y) - sqrt((1-x^2)(1-y^2)) S_s(x)S_{-r}(y) tau."""
    xs, ys, ts = _arrays(x, y, tau)
    value = cheb_T(t.s, xs) * cheb_T(-t.r, ys) - _sqrt_factor(xs, ys) * cheb_S(
        t.s, xs
    ) * cheb_S(-t.r, ys) * ts
    return _scalar_or_array(np.asarray(value), x)


def p_xy(t: TorusTangle, x: ArrayLike, y: ArrayLike) -> float | np.ndarray:
    """The eliminant p = p1·S_s(x)S_{-r}(y) - p2·S_{s+p}(x)S_{q-r}(y), free of tau."""
    xs, ys = _arrays(x, y)
    value = cheb_T(t.s + t.p, xs) * cheb_T(t.q - t.r, ys) * cheb_S(t.s, xs) * cheb_S(
        -t.r, ys
    ) - cheb_S(t.s + t.p, xs) * cheb_S(t.q - t.r, ys) * cheb_T(t.s, xs) * cheb_T(-t.r, ys)
    return _scalar_or_array(np.asarray(value), x)


def p_deflated(t: TorusTangle, x: ArrayLike, y: ArrayLike) -> float | np.ndarray:
    """p with its binary dihedral factor removed: p/x for p even, p/y for q even.

    For p even both s + p and s are odd, so T_{s+p}(x) and T_s(x) are divisible by
    x; for q even the same holds for T_{q-r}(y) and T_{-r}(y). For p, q odd there
    is no factor and p itself is returned.
    """
    xs, ys = _arrays(x, y)
    case = t.bd_case
    if case is BDCase.P_EVEN:
        value = cheb_T_over_x(t.s + t.p, xs) * cheb_T(t.q - t.r, ys) * cheb_S(t.s, xs) * cheb_S(
            -t.r, ys
        ) - cheb_S(t.s + t.p, xs) * cheb_S(t.q - t.r, ys) * cheb_T_over_x(t.s, xs) * cheb_T(
            -t.r, ys
        )
        return _scalar_or_array(np.asarray(value), x)
    if case is BDCase.Q_EVEN:
        value = cheb_T(t.s + t.p, xs) * cheb_T_over_x(t.q - t.r, ys) * cheb_S(t.s, xs) * cheb_S(
            -t.r, ys
        ) - cheb_S(t.s + t.p, xs) * cheb_S(t.q - t.r, ys) * cheb_T(t.s, xs) * cheb_T_over_x(
            -t.r, ys
        )
        return _scalar_or_array(np.asarray(value), x)
    return p_xy(t, x, y)


def lift_tau(
    t: TorusTangle, x: ArrayLike, y: ArrayLike, tol: float = RESIDUAL_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized tau elimination. Returns (tau, status) arrays.

    tau is taken from whichever of p1 = 0, p2 = 0 has the larger tau coefficient.
    Points where both coefficients vanish and both constant terms vanish are the
    collapsed fibers (|x| = 1 or |y| = 1) and get tau = 0.
    """
    xs, ys = _arrays(x, y)
    xs, ys = np.atleast_1d(xs), np.atleast_1d(ys)
    root = _sqrt_factor(xs, ys)
    a1 = root * cheb_S(t.s + t.p, xs) * cheb_S(t.q - t.r, ys)
    b1 = cheb_T(t.s + t.p, xs) * cheb_T(t.q - t.r, ys)
    a2 = root * cheb_S(t.s, xs) * cheb_S(-t.r, ys)
    b2 = cheb_T(t.s, xs) * cheb_T(-t.r, ys)
    use_first = np.abs(a1) >= np.abs(a2)
    alpha = np.where(use_first, a1, a2)
    beta = np.where(use_first, b1, b2)
    degenerate = np.abs(alpha) < COEFFICIENT_FLOOR
    tau = np.where(degenerate, 0.0, beta / np.where(degenerate, 1.0, alpha))
    out_of_range = np.abs(tau) > 1.0 + TAU_SLACK
    tau = np.clip(tau, -1.0, 1.0)
    bad = (np.abs(b1 - a1 * tau) >= tol) | (np.abs(b2 - a2 * tau) >= tol)

    status = np.full(tau.shape, LiftStatus.OK, dtype=np.int64)
    status[~degenerate & bad] = LiftStatus.RESIDUAL
    status[~degenerate & out_of_range] = LiftStatus.OUT_OF_RANGE
    status[degenerate & ~bad] = LiftStatus.COLLAPSED
    status[degenerate & bad] = LiftStatus.DEGENERATE
    return tau, status


def solve_tau(t: TorusTangle, x: float, y: float, tol: float = RESIDUAL_TOL) -> float | None:
    """tau with (x, y, tau) in W, or None.

    None covers points outside |tau| <= 1, residual failures and doubly degenerate
    points; the latter are handled by the fiber-collapse rule in
    :func:`compute_components`.
    """
    tau, status = lift_tau(t, x, y, tol)
    return float(tau[0]) if status[0] == LiftStatus.OK else None


def pillow_cosines(
    t: TorusTangle, x: ArrayLike, y: ArrayLike, tau: ArrayLike
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (cos gamma, cos theta, cos(theta - gamma)) of W points.

    Raises:
        InconsistencyError: If a value leaves [-1, 1] by more than the cosine slack
    """
    xs, ys, ts = _arrays(x, y, tau)
    root = _sqrt_factor(xs, ys)
    cos_gamma = -cheb_T(2 * t.s + t.p, xs) * cheb_T(t.q - 2 * t.r, ys) + root * cheb_S(
        2 * t.s + t.p, xs
    ) * cheb_S(t.q - 2 * t.r, ys) * ts
    tx2 = np.asarray(cheb_T(t.s + t.p, xs)) ** 2
    ty2 = np.asarray(cheb_T(t.r, ys)) ** 2
    cos_theta = -2.0 * tx2 * ty2 + 2.0 * ty2 + 2.0 * tx2 - 1.0 + 2.0 * ts * ts * (
        1.0 - tx2 - ty2 + tx2 * ty2
    )
    cos_diff = cheb_T(t.p, xs) * cheb_T(t.q, ys) - root * cheb_S(t.p, xs) * cheb_S(t.q, ys) * ts
    result = []
    for name, arr in (
        ("cos_gamma", np.asarray(cos_gamma)),
        ("cos_theta", np.asarray(cos_theta)),
        ("cos_theta_minus_gamma", np.asarray(cos_diff)),
    ):
        if arr.size and np.any(np.abs(arr) - 1.0 > COSINE_SLACK):
            raise InconsistencyError(f"{name} outside [-1, 1]", {"max_abs": float(np.abs(arr).max())})
        result.append(np.clip(arr, -1.0, 1.0))
    return result[0], result[1], result[2]


def pillow_image(t: TorusTangle, w: WPoint) -> tuple[float, float, float]:
    """Pillowcase cosines of the representation at w."""
    cg, ct, cd = pillow_cosines(t, w.x, w.y, w.tau)
    return float(cg), float(ct), float(cd)


def character_signs(t: TorusTangle) -> tuple[int, int]:
    """Values on the two torus generators of the character sending every meridian to -1.

    The generator carrying x gets (-1)^q, the one carrying y gets (-1)^p.
    """
    return (-1) ** (t.q % 2), (-1) ** (t.p % 2)


def character_involution_array(t: TorusTangle, coords: np.ndarray) -> np.ndarray:
    """Twist an (n, 3) array of W points by the sign character.

    (x, y, tau) -> (e_x x, e_y y, e_x e_y tau). p1 and p2 pick up the same
    overall sign, so W is preserved, and the pillowcase cosines are unchanged.
    """
    ex, ey = character_signs(t)
    return np.asarray(coords, dtype=float) * np.array([ex, ey, ex * ey], dtype=float)


def character_involution(t: TorusTangle, w: WPoint) -> WPoint:
    x, y, tau = character_involution_array(t, np.array([[w.x, w.y, w.tau]]))[0]
    return WPoint(float(x), float(y), float(tau))


def cover_data(t: TorusTangle) -> BranchedCoverData:
    """Branched-cover data of the torus tangle from its parity class."""
    h_ba, h_bc = torus_bd_data(t.p, t.q, t.r, t.s)
    return BranchedCoverData(h_ba=h_ba, h_bc=h_bc, a_minus_order=1)


def bd_arc(t: TorusTangle, samples: int = DEFAULT_SAMPLES) -> LiftedPath:
    """The binary dihedral arc map on [0, π], sampled as a planar lift."""
    ts = np.linspace(0.0, math.pi, samples)
    case = t.bd_case
    if case is BDCase.ODD_R_ODD:
        gamma, theta = ts, 2.0 * ts
    elif case is BDCase.ODD_R_EVEN:
        gamma, theta = ts, np.zeros_like(ts)
    elif case is BDCase.P_EVEN:
        gamma, theta = (t.q - 2 * t.r) * ts, -2.0 * t.r * ts
    else:
        gamma, theta = (2 * t.s + t.p) * ts, (2 * t.s + 2 * t.p) * ts
    return LiftedPath(np.column_stack([gamma, theta]), closed=False, params=ts)


def _bd_coords(t: TorusTangle, ts: np.ndarray) -> np.ndarray:
    c = np.cos(ts)
    zero = np.zeros_like(ts)
    case = t.bd_case
    if case is BDCase.P_EVEN:
        return np.column_stack([zero, c, zero])
    if case is BDCase.Q_EVEN:
        return np.column_stack([c, zero, zero])
    return np.column_stack([zero, zero, c])


def bd_locus(t: TorusTangle, samples: int = DEFAULT_SAMPLES, component_id: int = 0) -> RepComponent:
    """The binary dihedral component of W, parametrized by t in [0, π].

    (0, cos t, 0) for p even, (cos t, 0, 0) for q even and the tau-fiber
    (0, 0, cos t) over the origin for p, q odd.
    """
    ts = np.linspace(0.0, math.pi, samples)
    return RepComponent(
        id=component_id,
        coords=_bd_coords(t, ts),
        closed=False,
        kind=ComponentKind.BINARY_DIHEDRAL,
        params=ts,
    )


def bd_image_shift(t: TorusTangle) -> float:
    """Gamma offset (0 or π) between the arc map and the image of the BD locus.

    The locus point at parameter t is compared with the arc map at t, so the
    translation is detected even though it preserves the family of lattice lines.
    """
    v_gamma, v_theta = cover_data(t).direction
    params = np.array([0.37, 1.21, 2.03])
    coords = _bd_coords(t, params)
    gamma, theta, _ = angles_from_cosines_array(*pillow_cosines(t, *coords.T))
    for shift in (0.0, math.pi):
        distances = [
            quotient_distance(PillowPoint(g, th), reduce(v_gamma * u + shift, v_theta * u))
            for g, th, u in zip(gamma.tolist(), theta.tolist(), params.tolist())
        ]
        if max(distances) <= BD_IMAGE_TOL:
            return shift
    raise InconsistencyError("binary dihedral locus does not map to the arc map", {"tangle": t.label})


def trace_z(
    t: TorusTangle, grid: GridSpec | None = None, collector: DiagnosticCollector | None = None
) -> list[CurveComponent]:
    """Z as the binary dihedral factor line (if any) plus the traced deflated zero set."""
    grid = grid or GridSpec()
    components: list[CurveComponent] = []
    case = t.bd_case
    if case is BDCase.P_EVEN:
        ys = grid.ys()
        components.append(CurveComponent(np.column_stack([np.zeros_like(ys), ys]), False, "bd-factor"))
    elif case is BDCase.Q_EVEN:
        xs = grid.xs()
        components.append(CurveComponent(np.column_stack([xs, np.zeros_like(xs)]), False, "bd-factor"))
    traced = trace_zero_set(lambda x, y: p_deflated(t, x, y), grid, collector)
    components.extend(c.with_kind("traced") for c in traced)
    logger.debug("%s: Z has %d components", t.label, len(components))
    return components


def _runs(valid: np.ndarray, closed: bool) -> list[np.ndarray]:
    """Maximal runs of valid indices; a closed curve may wrap around."""
    n = len(valid)
    if closed:
        n -= 1
        valid = valid[:n]
        if valid.all():
            return [np.concatenate([np.arange(n), [0]])]
    idx = np.nonzero(valid)[0]
    if idx.size == 0:
        return []
    breaks = np.nonzero(np.diff(idx) > 1)[0]
    runs = np.split(idx, breaks + 1)
    if closed and len(runs) > 1 and runs[0][0] == 0 and runs[-1][-1] == n - 1:
        runs[0] = np.concatenate([runs[-1], runs[0]])
        runs.pop()
    return runs


def _bridge(
    runs: list[np.ndarray], coords: np.ndarray, max_gap: float
) -> list[np.ndarray]:
    """Join runs separated by a short gap with matching tau."""
    merged: list[np.ndarray] = []
    for run in runs:
        if merged:
            last = coords[merged[-1][-1]]
            first = coords[run[0]]
            if (
                math.hypot(first[0] - last[0], first[1] - last[1]) <= max_gap
                and abs(first[2] - last[2]) <= _GAP_TAU_JUMP
            ):
                merged[-1] = np.concatenate([merged[-1], run])
                continue
        merged.append(run)
    return merged


def _lift_component(
    t: TorusTangle,
    comp: CurveComponent,
    grid: GridSpec,
    tol: float,
    collector: DiagnosticCollector | None,
) -> list[tuple[np.ndarray, bool]]:
    verts = comp.vertices
    tau, status = lift_tau(t, verts[:, 0], verts[:, 1], tol)
    valid = (status == LiftStatus.OK) | (status == LiftStatus.COLLAPSED)
    coords = np.column_stack([verts, tau])
    unresolved = int(np.sum((status == LiftStatus.RESIDUAL) | (status == LiftStatus.DEGENERATE)))
    if unresolved and collector is not None:
        collector.add_warning(
            "Z vertices without a lift to W",
            DiagnosticCode.UNRESOLVED_LIFT,
            count=unresolved,
        )
    collapsed = int(np.sum(status == LiftStatus.COLLAPSED))
    if collapsed and collector is not None:
        collector.add_info(
            "degenerate fibers collapsed to tau = 0",
            DiagnosticCode.DEGENERATE_FIBER,
            count=collapsed,
        )
    if comp.closed and valid[:-1].all():
        return [(coords, True)]
    runs = _bridge(_runs(valid, comp.closed), coords, 3.0 * grid.cell_diameter)
    pieces: list[tuple[np.ndarray, bool]] = []
    for run in runs:
        piece = coords[run]
        if len(piece) < MIN_COMPONENT_VERTICES:
            continue
        closes = comp.closed and len(run) >= len(verts) - 3 and math.dist(piece[0], piece[-1]) <= (
            3.0 * grid.cell_diameter
        )
        if closes:
            piece = np.vstack([piece, piece[:1]])
        pieces.append((piece, closes))
    return pieces


def _bd_junction_axis(case: BDCase) -> int | None:
    if case is BDCase.P_EVEN:
        return 0
    if case is BDCase.Q_EVEN:
        return 1
    return None


def _junction_root(t: TorusTangle, axis: int, a: float, b: float, pad: float) -> float:
    """Root of the deflated polynomial on the factor line between a and b."""
    def on_line(u: float) -> float:
        point = (0.0, u) if axis == 0 else (u, 0.0)
        return float(p_deflated(t, *point))

    lo, hi = min(a, b) - pad, max(a, b) + pad
    lo, hi = max(lo, -1.0), min(hi, 1.0)
    if on_line(lo) * on_line(hi) < 0.0:
        return float(optimize.brentq(on_line, lo, hi, xtol=1e-15))
    return 0.5 * (a + b)


def _insert_junctions(
    t: TorusTangle, coords: np.ndarray, closed: bool, bd_id: int, grid: GridSpec
) -> tuple[np.ndarray, list[Incidence]]:
    """Insert the points where a traced component meets the binary dihedral locus.

    For p or q even the locus is the tau = 0 segment of the factor line, and
    every W point on that line has tau = 0, so junctions are the sign changes of
    the factor coordinate. For p, q odd the locus is the fiber over the origin.
    """
    axis = _bd_junction_axis(t.bd_case)
    incidences: list[Incidence] = []
    if axis is None:
        radius = np.hypot(coords[:, 0], coords[:, 1])
        k = int(np.argmin(radius))
        if radius[k] <= 2.0 * grid.cell_diameter and abs(coords[k, 2]) < 1.0:
            incidences.append(Incidence(bd_id, WPoint(0.0, 0.0, float(coords[k, 2]))))
        return coords, incidences

    other = 1 - axis
    values = coords[:, axis]
    last = len(coords) - 1 if closed else len(coords)
    rows: list[np.ndarray] = [coords[0]]
    for k in range(1, len(coords)):
        a, b = values[k - 1], values[k]
        if a * b < 0.0:
            u = _junction_root(t, axis, coords[k - 1, other], coords[k, other], grid.cell_diameter)
            junction = np.zeros(3)
            junction[other] = u
            rows.append(junction)
            incidences.append(Incidence(bd_id, WPoint(*junction.tolist())))
        rows.append(coords[k])
    for k in np.nonzero(values[:last] == 0.0)[0].tolist():
        point = WPoint(*coords[k].tolist())
        if all(math.dist(point.as_tuple(), i.point.as_tuple()) >= JUNCTION_TOL for i in incidences):
            incidences.append(Incidence(bd_id, point))
    return np.vstack(rows), incidences


def compute_components(
    t: TorusTangle,
    grid: GridSpec | None = None,
    samples: int = DEFAULT_SAMPLES,
    tol: float = RESIDUAL_TOL,
    collector: DiagnosticCollector | None = None,
) -> list[RepComponent]:
    """Components of the representation space: the BD arc first, then traced curves.

    Each traced Z component is lifted vertexwise; vertices without a lift split
    it, and short gaps with continuous tau are bridged. Junctions with the BD
    locus are inserted as explicit points and recorded as incidences on both
    sides.
    """
    grid = grid or GridSpec()
    bd = bd_locus(t, samples, component_id=0)
    shift = bd_image_shift(t)
    data = cover_data(t)
    traced: list[RepComponent] = []
    for comp in trace_z(t, grid, collector):
        if comp.kind == "bd-factor":
            continue
        for coords, closed in _lift_component(t, comp, grid, tol, collector):
            comp_id = len(traced) + 1
            coords, incidences = _insert_junctions(t, coords, closed, bd.id, grid)
            kind = ComponentKind.NON_BINARY_DIHEDRAL
            gamma, theta, _ = angles_from_cosines_array(*pillow_cosines(t, *coords.T))
            if np.all(bd_line_distance(gamma - shift, theta, data.h_ba, data.h_bc) <= BD_IMAGE_TOL):
                kind = ComponentKind.BINARY_DIHEDRAL
                if collector is not None:
                    collector.add_warning(
                        "traced component lies on the binary dihedral image",
                        DiagnosticCode.LOCUS_MISMATCH,
                        component=comp_id,
                    )
            traced.append(
                RepComponent(
                    id=comp_id,
                    coords=coords,
                    closed=closed,
                    kind=kind,
                    incidences=tuple(Incidence(bd.id, i.point) for i in incidences),
                )
            )
    bd_incidences = tuple(Incidence(c.id, i.point) for c in traced for i in c.incidences)
    bd = RepComponent(bd.id, bd.coords, bd.closed, bd.kind, bd_incidences, bd.params)
    logger.info(
        "%s: %d components (%d traced), %d junctions",
        t.label,
        len(traced) + 1,
        len(traced),
        len(bd_incidences),
    )
    return [bd, *traced]


@dataclass(frozen=True, eq=False)
class ComponentImage:
    """A component resampled for continuity together with its lifted image.

    ``coords`` rows correspond one-to-one with ``path.points`` (lift order).
    """

    component: RepComponent
    coords: np.ndarray
    path: LiftedPath


def _image_points(t: TorusTangle, coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    gamma, theta, mismatch = angles_from_cosines_array(*pillow_cosines(t, *coords.T))
    return np.column_stack([gamma, theta]), mismatch


def _gradient_direction(t: TorusTangle, x: float, y: float) -> tuple[float, float]:
    h = _GRADIENT_STEP
    gx = (float(p_deflated(t, min(x + h, 1.0), y)) - float(p_deflated(t, max(x - h, -1.0), y))) / (2 * h)
    gy = (float(p_deflated(t, x, min(y + h, 1.0))) - float(p_deflated(t, x, max(y - h, -1.0)))) / (2 * h)
    if gx == 0.0 and gy == 0.0:
        return (1.0, 0.0)
    return (gx, gy)


def _midpoint(
    t: TorusTangle, comp: RepComponent, a: np.ndarray, b: np.ndarray, pa: float, pb: float, tol: float
) -> tuple[np.ndarray, float] | None:
    """A W point between a and b, or None when it cannot be placed on W."""
    pm = 0.5 * (pa + pb)
    if comp.is_binary_dihedral and comp.id == 0:
        return _bd_coords(t, np.array([pm]))[0], pm
    mx, my = 0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])
    half = max(math.hypot(b[0] - a[0], b[1] - a[1]), 1e-9)
    res = polish_point(
        lambda x, y: p_deflated(t, x, y), (mx, my), _gradient_direction(t, mx, my), half
    )
    tau, status = lift_tau(t, res.x, res.y, tol)
    if status[0] not in (LiftStatus.OK, LiftStatus.COLLAPSED):
        return None
    return np.array([res.x, res.y, float(tau[0])]), pm


def component_image(
    t: TorusTangle,
    comp: RepComponent,
    tol: float = RESIDUAL_TOL,
    collector: DiagnosticCollector | None = None,
) -> ComponentImage:
    """Continuous pillowcase image of a component.

    Consecutive image points farther apart than the continuity step get W
    midpoints inserted, for up to MAX_REFINE_PASSES passes; the result is then
    lifted to the plane by nearest equivalent lifts.
    """
    coords = comp.coords.copy()
    params = np.asarray(comp.params, dtype=float).copy()
    for _ in range(MAX_REFINE_PASSES):
        pts, _ = _image_points(t, coords)
        path = lift_path(pts, False)
        long_steps = np.nonzero(path.steps() > CONTINUITY_STEP)[0]
        if long_steps.size == 0:
            break
        new_rows: list[np.ndarray] = []
        new_params: list[float] = []
        placed = 0
        for k in long_steps.tolist():
            mid = _midpoint(t, comp, coords[k], coords[k + 1], params[k], params[k + 1], tol)
            if mid is None:
                continue
            new_rows.append(mid[0])
            new_params.append(mid[1])
            placed += 1
        if not placed:
            break
        coords = np.vstack([coords, np.array(new_rows)])
        params = np.concatenate([params, new_params])
        order = np.argsort(params, kind="stable")
        coords, params = coords[order], params[order]

    pts, mismatch = _image_points(t, coords)
    inconsistent = int(np.sum(mismatch >= ANGLE_CONSISTENCY_TOL))
    if inconsistent and collector is not None:
        collector.add_error(
            "cosine triples disagree on component image",
            DiagnosticCode.INVARIANT_VIOLATION,
            component=comp.id,
            count=inconsistent,
        )
    index = np.arange(len(pts), dtype=float)
    path = lift_path(pts, comp.closed, index)
    order = path.params.astype(int)
    ordered = coords[order]
    curve_params = params[order]
    path = LiftedPath(path.points, path.closed, curve_params)
    if path.max_step() > CONTINUITY_STEP and collector is not None:
        collector.add_warning(
            "image steps above the continuity bound after refinement",
            DiagnosticCode.COARSE_STEP,
            component=comp.id,
            max_step=path.max_step(),
        )
    return ComponentImage(comp, ordered, path)


__all__ = [
    "BDCase",
    "ComponentImage",
    "ComponentKind",
    "Incidence",
    "LiftStatus",
    "RepComponent",
    "TorusTangle",
    "WPoint",
    "bd_arc",
    "bd_image_shift",
    "bd_locus",
    "character_involution",
    "character_involution_array",
    "character_signs",
    "component_image",
    "compute_components",
    "cover_data",
    "default_rs",
    "lift_tau",
    "p1",
    "p2",
    "p_deflated",
    "p_xy",
    "pillow_cosines",
    "pillow_image",
    "solve_tau",
    "trace_z",
]

"""
tangles.quat
Unit-quaternion algebra and the holonomy-word oracle.

SU(2) is identified with the unit quaternions. Given a point (x, y, tau) of W the
generators A, B of the tangle group are sent to M and N, and the four boundary
meridians a, b, c, d are evaluated as words in M and N. The oracle checks
tracelessness and the boundary relation ba = cd and recomputes the pillowcase
cosines without the closed-form polynomials.
"""

from __future__ import annotations

import math
import operator
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .defaults import CLAMP_TOL, COSINE_SLACK, QUAT_UNIT_TOL
from .errors import DomainError, InconsistencyError

if TYPE_CHECKING:
    from .torus import TorusTangle, WPoint

_COSGAMMA_AGREEMENT = 1e-8
_TRACELESS_PRE = 1e-6


@dataclass(frozen=True)
class Quaternion:
    """Quaternion w + x i + y j + z k."""

    w: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __mul__(self, other: Quaternion) -> Quaternion:
        return quat_mul(self, other)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return self + (-other)

    def scale(self, factor: float) -> Quaternion:
        return Quaternion(factor * self.w, factor * self.x, factor * self.y, factor * self.z)

    def conjugate(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)

    @property
    def real(self) -> float:
        return self.w

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def distance(self, other: Quaternion) -> float:
        return (self - other).norm()

    def is_close(self, other: Quaternion, tol: float = 1e-10) -> bool:
        return self.distance(other) < tol


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)  # noqa: E741
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product p·q."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def exp_axis(angle: float, axis: Quaternion) -> Quaternion:
    """Return e^{angle·axis} = cos(angle) + sin(angle)·axis for a unit pure axis."""
    s = math.sin(angle)
    return Quaternion(math.cos(angle), s * axis.x, s * axis.y, s * axis.z)


def quat_pow(q: Quaternion, n: int) -> Quaternion:
    """Integer power of a unit quaternion, computed on the axis-angle form.

    Negative exponents use the conjugate, which is the inverse of a unit
    quaternion, so the result stays on the unit sphere.

    Raises:
        DomainError: If q is not a unit quaternion
    """
    k = operator.index(n)
    if abs(q.norm() - 1.0) > QUAT_UNIT_TOL:
        raise DomainError("quat_pow expects a unit quaternion", {"norm": q.norm()})
    if k < 0:
        q, k = q.conjugate(), -k
    if k == 0:
        return ONE
    vnorm = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if vnorm == 0.0:
        return Quaternion(math.copysign(1.0, q.w) ** k)
    angle = math.atan2(vnorm, q.w)
    axis = Quaternion(0.0, q.x / vnorm, q.y / vnorm, q.z / vnorm)
    return exp_axis(k * angle, axis)


def word_product(
    word: Iterable[tuple[str, int]], images: Mapping[str, Quaternion]
) -> Quaternion:
    """Evaluate a word given as (generator, exponent) pairs, left to right."""
    result = ONE
    for name, exponent in word:
        result = result * quat_pow(images[name], exponent)
    return result


def _unit_interval(value: float, name: str) -> float:
    if abs(value) - 1.0 > CLAMP_TOL:
        raise DomainError(f"{name} outside the unit cube", {name: value})
    return min(1.0, max(-1.0, value))


@dataclass(frozen=True)
class HolonomyPair:
    """Images M = r(A) and N = r(B) of the tangle group generators."""

    M: Quaternion
    N: Quaternion


@dataclass(frozen=True)
class MeridianImages:
    """Images of the boundary meridians a, b, c, d."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    def max_trace(self) -> float:
        """Largest |real part| over the four meridians."""
        return max(abs(self.a.w), abs(self.b.w), abs(self.c.w), abs(self.d.w))

    def is_traceless(self, tol: float = 1e-8) -> bool:
        return self.max_trace() < tol

    def relation_defect(self) -> float:
        """Distance between b·a and c·d."""
        return (self.b * self.a).distance(self.c * self.d)


def holonomy_pair(w: WPoint) -> HolonomyPair:
    """Holonomy assignment of a W point.

    M = e^{arccos(x) i} = x + sqrt(1-x^2) i and
    N = e^{arccos(y) e^{arccos(tau) k} i} = y + sqrt(1-y^2)(tau i + sqrt(1-tau^2) j).

    Raises:
        DomainError: If a coordinate leaves [-1, 1] by more than the clamp tolerance
    """
    x = _unit_interval(w.x, "x")
    y = _unit_interval(w.y, "y")
    tau = _unit_interval(w.tau, "tau")
    sx = math.sqrt(1.0 - x * x)
    sy = math.sqrt(1.0 - y * y)
    st = math.sqrt(1.0 - tau * tau)
    return HolonomyPair(
        M=Quaternion(x, sx),
        N=Quaternion(y, sy * tau, sy * st),
    )


def meridian_images(pair: HolonomyPair, t: TorusTangle) -> MeridianImages:
    """a = M^{s+p} N^{q-r}, b = N^{-r} M^s, c = N^{-r} a N^r, d = N^{-(q-r)} b N^{q-r}."""
    M, N = pair.M, pair.N
    a = quat_pow(M, t.s + t.p) * quat_pow(N, t.q - t.r)
    b = quat_pow(N, -t.r) * quat_pow(M, t.s)
    c = quat_pow(N, -t.r) * a * quat_pow(N, t.r)
    d = quat_pow(N, -(t.q - t.r)) * b * quat_pow(N, t.q - t.r)
    return MeridianImages(a=a, b=b, c=c, d=d)


def _clamp_cosine(value: float, name: str) -> float:
    if abs(value) - 1.0 > COSINE_SLACK:
        raise InconsistencyError(f"{name} outside [-1, 1]", {name: value})
    return min(1.0, max(-1.0, value))


def pillow_from_quats(
    m: MeridianImages,
    pair: HolonomyPair,
    t: TorusTangle,
    *,
    require_traceless: bool = True,
) -> tuple[float, float, float]:
    """Pillowcase cosines (cos gamma, cos theta, cos(theta - gamma)) from quaternions.

    cos gamma = -Re(b a) = -Re(M^{2s+p} N^{q-2r}), cos theta = Re(c a^{-1}) and
    cos(theta - gamma) = Re(N^{-q} M^{-p}).

    Raises:
        DomainError: If ``require_traceless`` and a meridian image is not traceless
        InconsistencyError: If the two expressions for cos gamma disagree
    """
    if require_traceless and m.max_trace() > _TRACELESS_PRE:
        raise DomainError("meridian images are not traceless", {"max_trace": m.max_trace()})
    cos_gamma = -(m.b * m.a).real
    alt = -(quat_pow(pair.M, 2 * t.s + t.p) * quat_pow(pair.N, t.q - 2 * t.r)).real
    if abs(cos_gamma - alt) > _COSGAMMA_AGREEMENT:
        raise InconsistencyError(
            "cos(gamma) expressions disagree", {"from_ba": cos_gamma, "from_word": alt}
        )
    cos_theta = (m.c * m.a.conjugate()).real
    cos_diff = (quat_pow(pair.N, -t.q) * quat_pow(pair.M, -t.p)).real
    return (
        _clamp_cosine(cos_gamma, "cos_gamma"),
        _clamp_cosine(cos_theta, "cos_theta"),
        _clamp_cosine(cos_diff, "cos_theta_minus_gamma"),
    )


__all__ = [
    "I",
    "J",
    "K",
    "ONE",
    "HolonomyPair",
    "MeridianImages",
    "Quaternion",
    "exp_axis",
    "holonomy_pair",
    "meridian_images",
    "pillow_from_quats",
    "quat_mul",
    "quat_pow",
    "word_product",
]

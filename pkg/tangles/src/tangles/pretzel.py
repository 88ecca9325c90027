"""
tangles.pretzel
Pillowcase images for pretzel tangles.

For a (p, q, r) pretzel tangle with p even and q, r odd the non-binary-dihedral
representations map to two straight lines. The (-2, 3, n) family is worked out
fully: its binary dihedral arc and the doubly covered non-binary-dihedral
segment are available as curves, and generator counts are produced by the
census and checked against closed forms.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .census import GeneratorReport, ImageComponent, count_generators
from .defaults import DEFAULT_SAMPLES
from .diagnostics import DiagnosticCode, DiagnosticCollector
from .errors import InconsistencyError, TangleParameterError
from .pillowcase import LiftedPath
from .quat import I, K, Quaternion, exp_axis, word_product
from .torus import ComponentKind

logger = logging.getLogger(__name__)

_SAMPLES_PER_TWIST = 64


@dataclass(frozen=True)
class PretzelTangle:
    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if self.p % 2 or self.q % 2 == 0 or self.r % 2 == 0:
            raise TangleParameterError(
                "pretzel tangle needs p even and q, r odd",
                {"p": self.p, "q": self.q, "r": self.r},
            )

    @classmethod
    def family_238(cls, n: int) -> PretzelTangle:
        _check_family(n)
        return cls(-2, 3, n)


def _check_family(n: int) -> None:
    if n % 2 == 0 or n < 7:
        raise TangleParameterError("the (-2,3,n) family needs odd n >= 7", {"n": n})


def nonbd_lines(t: PretzelTangle, samples: int = DEFAULT_SAMPLES) -> tuple[LiftedPath, LiftedPath]:
    """The lines theta = (r+1)·gamma and theta = (r+1)·gamma + π over gamma in [0, π]."""
    gamma = np.linspace(0.0, math.pi, samples)
    theta = (t.r + 1) * gamma
    return (
        LiftedPath(np.column_stack([gamma, theta]), False, gamma),
        LiftedPath(np.column_stack([gamma, theta + math.pi]), False, gamma),
    )


def regular_fiber_image(t: PretzelTangle, gamma: float, theta: float) -> Quaternion:
    """Image of the regular fiber under a = i, b = e^{gamma k} i, c = e^{theta k} i.

    The fiber is the word (ba)^{(r+1)/2} (bc⁻¹) (ba)^{(r-1)/2}, which evaluates to
    (-1)^r e^{(gamma(r+1) - theta) k}; it is ±1 exactly on the two lines.
    """
    a = I
    b = exp_axis(gamma, K) * I
    c = exp_axis(theta, K) * I
    images = {"ba": b * a, "bc": b * c.conjugate()}
    word = [("ba", (t.r + 1) // 2), ("bc", 1), ("ba", (t.r - 1) // 2)]
    return word_product(word, images)


def family_238_curves(
    n: int, samples: int = DEFAULT_SAMPLES
) -> tuple[LiftedPath, LiftedPath]:
    """(bd, nonbd) image curves of the (-2, 3, n) pretzel tangle.

    bd: gamma in [0, π] -> (gamma, (n - 5) gamma).
    nonbd: gamma in [π/6, 5π/6] -> (gamma, (n + 1) gamma + π), covered once by
    each of the two semicircles.
    """
    _check_family(n)
    samples = max(samples, _SAMPLES_PER_TWIST * n)
    gamma = np.linspace(0.0, math.pi, samples)
    bd = LiftedPath(np.column_stack([gamma, (n - 5) * gamma]), False, gamma)
    seg = np.linspace(math.pi / 6.0, 5.0 * math.pi / 6.0, samples)
    nonbd = LiftedPath(np.column_stack([seg, (n + 1) * seg + math.pi]), False, seg)
    return bd, nonbd


def family_238_components(n: int, samples: int = DEFAULT_SAMPLES) -> list[ImageComponent]:
    """Census input: the arc and the two semicircles sharing one image segment."""
    bd, nonbd = family_238_curves(n, samples)
    return [
        ImageComponent(0, ComponentKind.BINARY_DIHEDRAL, False, bd, "arc"),
        ImageComponent(1, ComponentKind.NON_BINARY_DIHEDRAL, False, nonbd, "semicircle 1"),
        ImageComponent(2, ComponentKind.NON_BINARY_DIHEDRAL, False, nonbd, "semicircle 2"),
    ]


def expected_nonbd(n: int) -> int:
    """4 times the number of odd k with n/6 <= k <= 5n/6."""
    lo = math.ceil(Fraction(n, 6))
    hi = math.floor(Fraction(5 * n, 6))
    return 4 * sum(1 for k in range(lo, hi + 1) if k % 2)


def _floor_below(value: Fraction) -> int:
    """Greatest integer strictly less than value."""
    return math.ceil(value) - 1


def alternate_rank_formula(n: int) -> int:
    """n - 2 + 4([(5n+6)/12] - [(n+6)/12]) with [x] the greatest integer below x."""
    return n - 2 + 4 * (_floor_below(Fraction(5 * n + 6, 12)) - _floor_below(Fraction(n + 6, 12)))


def alternate_nonbd_formula(n: int) -> int:
    """4([(5n+6)/12] - [(n+6)/12] - 1) with [x] the greatest integer below x."""
    return 4 * (_floor_below(Fraction(5 * n + 6, 12)) - _floor_below(Fraction(n + 6, 12)) - 1)


@dataclass(frozen=True)
class PretzelCount:
    bd: int
    nonbd: int
    report: GeneratorReport

    @property
    def total(self) -> int:
        return self.bd + self.nonbd


def family_238_generator_count(
    n: int,
    samples: int = DEFAULT_SAMPLES,
    collector: DiagnosticCollector | None = None,
) -> PretzelCount:
    """Geometric generator counts of the (-2, 3, n) pretzel tangle.

    The census count must equal n - 6 binary dihedral generators and
    expected_nonbd(n) others. The published closed forms that disagree with
    these counts are reported as formula-discrepancy notes.

    Raises:
        InconsistencyError: If the census disagrees with the closed forms
    """
    _check_family(n)
    report = count_generators(family_238_components(n, samples), collector)
    bd, nonbd = report.totals.bd, report.totals.nonbd
    if bd != n - 6 or nonbd != expected_nonbd(n):
        raise InconsistencyError(
            "census count disagrees with the closed forms",
            {"n": n, "bd": bd, "nonbd": nonbd, "expected_nonbd": expected_nonbd(n)},
        )
    if collector is not None:
        total_alt = alternate_rank_formula(n)
        if total_alt != bd + nonbd:
            collector.add_info(
                "displayed rank formula n-2+4([(5n+6)/12]-[(n+6)/12]) differs from the crossing count",
                DiagnosticCode.FORMULA_DISCREPANCY,
                n=n,
                formula=total_alt,
                counted=bd + nonbd,
            )
        nonbd_alt = alternate_nonbd_formula(n)
        if nonbd_alt != nonbd:
            collector.add_info(
                "in-text non-binary-dihedral formula 4([(5n+6)/12]-[(n+6)/12]-1) differs from the crossing count",
                DiagnosticCode.FORMULA_DISCREPANCY,
                n=n,
                formula=nonbd_alt,
                counted=nonbd,
            )
    logger.info("(-2,3,%d) pretzel: bd=%d nonbd=%d", n, bd, nonbd)
    return PretzelCount(bd, nonbd, report)


__all__ = [
    "PretzelCount",
    "PretzelTangle",
    "alternate_nonbd_formula",
    "alternate_rank_formula",
    "expected_nonbd",
    "family_238_components",
    "family_238_curves",
    "family_238_generator_count",
    "nonbd_lines",
    "regular_fiber_image",
]

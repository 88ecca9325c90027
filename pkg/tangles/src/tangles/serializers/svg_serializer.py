"""
tangles.serializers.svg_serializer
Fundamental-domain figure of the pillowcase image.

The frame shows gamma in [0, π] left to right and theta in [0, 2π] bottom to
top. Binary dihedral curves and the others get separate style classes and the
diagonal {gamma = theta} is dashed.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

import numpy as np

from tangles.defaults import SVG_HEIGHT, SVG_STROKE, SVG_WIDTH
from tangles.pillowcase import TWO_PI, reduce_array
from tangles.serializers.base import Serializer
from tangles.torus import ComponentKind

if TYPE_CHECKING:
    from tangles.pipeline import AnalysisResult

SVG_NS = "http://www.w3.org/2000/svg"

# a reduced polyline is cut wherever consecutive samples jump by more than this
_BREAK = 0.5

_STYLE = (
    ".frame{fill:none;stroke:#000;stroke-width:1}"
    f".bd{{fill:none;stroke:#c0392b;stroke-width:{SVG_STROKE}}}"
    f".nonbd{{fill:none;stroke:#1f4e9c;stroke-width:{SVG_STROKE}}}"
    ".diagonal{fill:none;stroke:#555;stroke-width:1;stroke-dasharray:6 4}"
    ".corner{fill:#000}"
)


def _attrs(attr: dict[str, Any]) -> str:
    return " ".join(f'{key.replace("_", "-")}="{value}"' for key, value in attr.items())


def _element(tag: str, **attr: Any) -> str:
    return f"<{tag} {_attrs(attr)}/>"


def split_reduced(points: np.ndarray, closed: bool = False) -> list[np.ndarray]:
    """Reduce a lifted path and cut it where the reduction jumps."""
    if len(points) == 0:
        return []
    gamma, theta = reduce_array(points[:, 0], points[:, 1])
    pts = np.column_stack([gamma, theta])
    if closed and len(pts) > 1 and np.hypot(*(pts[0] - pts[-1])) <= _BREAK:
        pts = np.vstack([pts, pts[:1]])
    jumps = np.nonzero(np.hypot(*np.diff(pts, axis=0).T) > _BREAK)[0]
    pieces = np.split(pts, jumps + 1)
    return [piece for piece in pieces if len(piece) >= 2]


class SVGSerializer(Serializer):
    """Serializer for the fundamental-domain figure."""

    def __init__(
        self,
        pretty: bool = True,
        strict: bool = False,
        width: int = SVG_WIDTH,
        height: int = SVG_HEIGHT,
    ):
        super().__init__(pretty, strict)
        self.width = width
        self.height = height

    def to_frame(self, gamma: np.ndarray, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Map (gamma, theta) to SVG user units, theta upward."""
        return gamma / math.pi * self.width, self.height - theta / TWO_PI * self.height

    def serialize(self, result: AnalysisResult) -> str:
        self._check(result)
        sep = "\n" if self.pretty else ""
        parts = [
            f'<svg {_attrs({"xmlns": SVG_NS, "width": self.width, "height": self.height, "viewBox": f"0 0 {self.width} {self.height}"})}>',
            f"<style>{_STYLE}</style>",
            _element("rect", x=0, y=0, width=self.width, height=self.height, **{"class": "frame"}),
            self._diagonal(),
        ]
        for rec in result.images:
            css = "bd" if rec.kind is ComponentKind.BINARY_DIHEDRAL else "nonbd"
            for piece in split_reduced(rec.path.points, rec.closed):
                parts.append(self._polyline(piece, css, rec.id))
        for gamma in (0.0, math.pi):
            for theta in (0.0, math.pi, TWO_PI):
                x, y = self.to_frame(np.array(gamma), np.array(theta))
                parts.append(
                    _element(
                        "circle",
                        cx=self.format_value(x),
                        cy=self.format_value(y),
                        r=3,
                        **{"class": "corner"},
                    )
                )
        parts.append("</svg>")
        return sep.join(parts) + "\n"

    def format_value(self, value: Any) -> str:
        if isinstance(value, (float, np.floating, np.ndarray)):
            text = f"{float(value):.3f}".rstrip("0").rstrip(".")
            return "0" if text in ("-0", "") else text
        return str(value)

    def _diagonal(self) -> str:
        x0, y0 = self.to_frame(np.array(0.0), np.array(0.0))
        x1, y1 = self.to_frame(np.array(math.pi), np.array(math.pi))
        return _element(
            "line",
            x1=self.format_value(x0),
            y1=self.format_value(y0),
            x2=self.format_value(x1),
            y2=self.format_value(y1),
            **{"class": "diagonal"},
        )

    def _polyline(self, piece: np.ndarray, css: str, component_id: int) -> str:
        xs, ys = self.to_frame(piece[:, 0], piece[:, 1])
        points = " ".join(
            f"{self.format_value(x)},{self.format_value(y)}" for x, y in zip(xs, ys)
        )
        return _element("polyline", points=points, data_component=component_id, **{"class": css})

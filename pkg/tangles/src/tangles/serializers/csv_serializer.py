"""
tangles.serializers.csv_serializer
Per-sample point clouds as CSV.

One row per sample of every component image: the W coordinates (empty when the
component has none, as for branched-cover or pretzel curves) and the reduced
pillowcase angles.
"""

from __future__ import annotations

import csv
import io
from typing import TYPE_CHECKING, Any

import numpy as np

from tangles.defaults import SIGNIFICANT_DIGITS
from tangles.pillowcase import reduce_array
from tangles.serializers.base import SerializationError, Serializer

if TYPE_CHECKING:
    from tangles.pipeline import AnalysisResult

CSV_COLUMNS = ("component_id", "kind", "param", "x", "y", "tau", "gamma", "theta")


class CSVSerializer(Serializer):
    """Serializer for the per-sample CSV table."""

    def serialize(self, result: AnalysisResult) -> str:
        self._check(result)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in result.images:
            gamma, theta = reduce_array(rec.path.gamma, rec.path.theta)
            params = rec.path.params
            if rec.coords is not None and len(rec.coords) != len(rec.path):
                raise SerializationError("W samples do not match image samples", rec.id)
            for k in range(len(rec.path)):
                xyz: tuple[Any, ...] = (
                    tuple(rec.coords[k]) if rec.coords is not None else (None, None, None)
                )
                writer.writerow(
                    [
                        rec.id,
                        rec.kind.value,
                        self.format_value(params[k]),
                        *(self.format_value(v) for v in xyz),
                        self.format_value(gamma[k]),
                        self.format_value(theta[k]),
                    ]
                )
        return buffer.getvalue()

    def format_value(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, (float, np.floating)):
            return f"{float(value):.{SIGNIFICANT_DIGITS}g}"
        return str(value)

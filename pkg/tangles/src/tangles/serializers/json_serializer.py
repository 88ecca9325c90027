"""
tangles.serializers.json_serializer
JSON report serializer.

Keys are sorted and floats rounded to a fixed number of significant digits so
that equal results produce byte-identical reports.
"""

from __future__ import annotations

import json
import math
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Any

import numpy as np

from tangles.serializers.base import SerializationError, Serializer, significant

if TYPE_CHECKING:
    from tangles.pipeline import AnalysisResult


class JSONSerializer(Serializer):
    """Serializer for the JSON report."""

    def serialize(self, result: AnalysisResult) -> str:
        """
        Serialize a result's report to a JSON string.

        Raises:
            SerializationError: If the report holds values JSON cannot encode
        """
        self._check(result)
        return self.format_value(result.to_dict())

    def format_value(self, value: Any) -> str:
        safe = self._make_json_safe(value)
        try:
            if self.pretty:
                return json.dumps(safe, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
            return json.dumps(safe, separators=(",", ":"), sort_keys=True, ensure_ascii=False)
        except (TypeError, ValueError) as e:
            raise SerializationError(f"JSON serialization error: {e}") from e

    def _make_json_safe(self, value: Any) -> Any:
        """
        Convert value to JSON-safe representation.

        Handles:
        - numpy scalars and arrays
        - non-finite floats (as the strings "inf", "-inf", "nan")
        - enums and fractions
        """
        if value is None or isinstance(value, (bool, str)):
            return value
        if isinstance(value, Enum):
            return value.value
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            number = float(value)
            if not math.isfinite(number):
                return str(number)
            return significant(number)
        if isinstance(value, Fraction):
            return str(value)
        if isinstance(value, np.ndarray):
            return [self._make_json_safe(v) for v in value.tolist()]
        if isinstance(value, (list, tuple)):
            return [self._make_json_safe(v) for v in value]
        if isinstance(value, dict):
            return {str(k): self._make_json_safe(v) for k, v in value.items()}
        if self.strict:
            raise SerializationError(f"cannot encode {type(value).__name__}")
        return str(value)

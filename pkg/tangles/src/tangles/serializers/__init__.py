"""
tangles.serializers package
Output formats for analysis results.

Includes:
- JSONSerializer: report with counts, topology, checks and notes
- CSVSerializer: per-sample point clouds in W and in the pillowcase
- SVGSerializer: the fundamental-domain figure
"""

from tangles.serializers.base import SerializationError, Serializer, significant
from tangles.serializers.csv_serializer import CSV_COLUMNS, CSVSerializer
from tangles.serializers.json_serializer import JSONSerializer
from tangles.serializers.svg_serializer import SVGSerializer

__all__ = [
    "CSV_COLUMNS",
    "CSVSerializer",
    "JSONSerializer",
    "SVGSerializer",
    "SerializationError",
    "Serializer",
    "significant",
]

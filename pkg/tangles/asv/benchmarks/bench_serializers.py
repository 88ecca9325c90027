"""Serializer benchmarks across JSON/CSV/SVG."""

from tangles.pipeline import TorusPipeline
from tangles.serializers import CSVSerializer, JSONSerializer, SVGSerializer
from tangles.torus import TorusTangle
from tangles.zeroset import GridSpec


class BenchSerializers:
    def setup(self):
        pipeline = TorusPipeline(grid=GridSpec.square(256), oracle_points=64)
        self.result = pipeline.run(TorusTangle.from_pq(4, 5))
        self.json_serializer = JSONSerializer(pretty=False)
        self.csv_serializer = CSVSerializer()
        self.svg_serializer = SVGSerializer()

    def time_json(self):
        self.json_serializer.serialize(self.result)

    def time_csv(self):
        self.csv_serializer.serialize(self.result)

    def time_svg(self):
        self.svg_serializer.serialize(self.result)

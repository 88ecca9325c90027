"""Generator census on the pretzel family."""

from tangles.census import count_generators
from tangles.pretzel import family_238_components


class BenchCensus:
    params = [7, 21, 51]
    param_names = ["n"]

    def setup(self, n):
        self.components = family_238_components(n)

    def time_count_generators(self, n):
        count_generators(self.components)

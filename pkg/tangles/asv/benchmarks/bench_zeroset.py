"""Zero-set tracing and component lifting."""

from tangles.torus import TorusTangle, compute_components
from tangles.zeroset import GridSpec, trace_zero_set


def _two_circles(x, y):
    return ((x - 0.4) ** 2 + y**2 - 0.09) * ((x + 0.4) ** 2 + y**2 - 0.09)


class BenchZeroSet:
    params = [128, 256, 512]
    param_names = ["grid"]

    def setup(self, grid):
        self.grid = GridSpec.square(grid)

    def time_trace_two_circles(self, grid):
        trace_zero_set(_two_circles, self.grid)


class BenchTorusComponents:
    def setup(self):
        self.grid = GridSpec.square(256)
        self.tangles = [TorusTangle.from_pq(4, 5), TorusTangle.from_pq(3, 7)]

    def time_components_45(self):
        compute_components(self.tangles[0], self.grid, samples=512)

    def time_components_37(self):
        compute_components(self.tangles[1], self.grid, samples=512)

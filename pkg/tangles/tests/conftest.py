"""Shared fixtures. Traced torus tangles are computed once per (p, q, grid)."""

from __future__ import annotations

import functools

import pytest

from tangles.defaults import DEFAULT_SAMPLES
from tangles.dihedral import BranchedCoverData
from tangles.pipeline import AnalysisResult, BinaryDihedralPipeline, PretzelPipeline, TorusPipeline
from tangles.torus import TorusTangle
from tangles.zeroset import GridSpec


@functools.lru_cache(maxsize=None)
def analysed_torus(
    p: int, q: int, grid: int = 1024, oracle_points: int = 1000, samples: int = DEFAULT_SAMPLES
) -> AnalysisResult:
    pipeline = TorusPipeline(grid=GridSpec.square(grid), samples=samples, oracle_points=oracle_points)
    return pipeline.run(TorusTangle.from_pq(p, q))


@pytest.fixture
def tangle_45() -> TorusTangle:
    return TorusTangle.from_pq(4, 5)


@pytest.fixture
def tangle_37() -> TorusTangle:
    return TorusTangle.from_pq(3, 7)


@pytest.fixture(scope="session")
def bd_result() -> AnalysisResult:
    """Branched-cover data of the (4,5) torus tangle: a single arc."""
    return BinaryDihedralPipeline().run(BranchedCoverData(-3, 5))


@pytest.fixture(scope="session")
def pretzel_result() -> AnalysisResult:
    return PretzelPipeline().run(7)


@pytest.fixture(scope="session")
def torus_45_coarse() -> AnalysisResult:
    return analysed_torus(4, 5, grid=256, oracle_points=200)

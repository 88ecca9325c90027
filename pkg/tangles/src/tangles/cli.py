"""
tangles.cli
Command-line entry point.

    tangles torus -p 4 -q 5 --svg t45.svg --json t45.json
    tangles pretzel -n 7
    tangles bd --h-ba 1 --h-bc -1 --aminus 3 --offset 0.7,1.1

Exit status is 0 when the analysis finished without error diagnostics, 1 when
an invariant check failed, and 2 for invalid input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

from .defaults import (
    DEFAULT_GRID,
    DEFAULT_SAMPLES,
    MIN_CLI_GRID,
    MIN_CLI_SAMPLES,
    RESIDUAL_TOL,
    resolve_tolerance,
)
from .diagnostics import DiagnosticSeverity
from .dihedral import BranchedCoverData
from .error_formatter import ErrorFormatter
from .errors import ConfigError, InconsistencyError, TangleError
from .pipeline import AnalysisResult, BinaryDihedralPipeline, PretzelPipeline, TorusPipeline
from .serializers import CSVSerializer, JSONSerializer, SerializationError, SVGSerializer
from .torus import TorusTangle
from .zeroset import GridSpec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class RunConfig:
    """Sampling, tolerance and output settings shared by all subcommands."""

    grid: int = DEFAULT_GRID
    samples: int = DEFAULT_SAMPLES
    tolerance: float = RESIDUAL_TOL
    svg: Path | None = None
    csv: Path | None = None
    json: Path | None = None
    verbose: bool = False

    def validate(self) -> RunConfig:
        """
        Raises:
            ConfigError: If the grid or the sample count is below its minimum
        """
        if self.grid < MIN_CLI_GRID:
            raise ConfigError("grid is too coarse", {"grid": self.grid, "minimum": MIN_CLI_GRID})
        if self.samples < MIN_CLI_SAMPLES:
            raise ConfigError(
                "too few samples", {"samples": self.samples, "minimum": MIN_CLI_SAMPLES}
            )
        return self

    @classmethod
    def from_args(cls, args: argparse.Namespace, env: Mapping[str, str] | None = None) -> RunConfig:
        return cls(
            grid=args.grid,
            samples=args.samples,
            tolerance=resolve_tolerance(env),
            svg=args.svg,
            csv=args.csv,
            json=args.json,
            verbose=args.verbose,
        ).validate()


def parse_offset(text: str) -> tuple[float, float]:
    """Parse an ``F,F`` angle offset pair."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated floats, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid offset {text!r}") from exc


def write_outputs(result: AnalysisResult, config: RunConfig) -> list[Path]:
    """Write the requested artifacts and return their paths."""
    written = []
    for path, serializer in (
        (config.json, JSONSerializer()),
        (config.csv, CSVSerializer()),
        (config.svg, SVGSerializer()),
    ):
        if path is None:
            continue
        path.write_text(serializer.serialize(result), encoding="utf-8")
        logger.info("wrote %s", path)
        written.append(path)
    return written


def summarize(result: AnalysisResult) -> str:
    totals = result.census.totals
    topo = result.topology
    return (
        f"{result.subject}: generators bd={totals.bd} nonbd={totals.nonbd} "
        f"total={totals.total}; arcs={topo.arcs} circles={topo.circles} "
        f"shape={topo.shape or '-'}"
    )


def _finish(result: AnalysisResult, config: RunConfig) -> int:
    write_outputs(result, config)
    print(summarize(result))
    shown = [
        note
        for note in result.notes
        if config.verbose or note.severity is not DiagnosticSeverity.INFORMATION
    ]
    if shown:
        formatter = ErrorFormatter(use_colors=sys.stderr.isatty())
        print(formatter.format_diagnostics(shown), file=sys.stderr)
    return EXIT_INVARIANT if result.has_errors else EXIT_OK


def run_torus(p: int, q: int, r: int | None, s: int | None, config: RunConfig) -> int:
    tangle = TorusTangle.from_pq(p, q, r, s)
    pipeline = TorusPipeline(
        grid=GridSpec.square(config.grid), samples=config.samples, tol=config.tolerance
    )
    return _finish(pipeline.run(tangle), config)


def run_pretzel(n: int, config: RunConfig) -> int:
    return _finish(PretzelPipeline(samples=config.samples).run(n), config)


def run_bd(
    h_ba: int,
    h_bc: int,
    aminus: int,
    offsets: Sequence[tuple[float, float]],
    config: RunConfig,
) -> int:
    data = BranchedCoverData(h_ba, h_bc, aminus, tuple(offsets))
    return _finish(BinaryDihedralPipeline(samples=config.samples).run(data), config)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid", type=int, default=DEFAULT_GRID, help="grid cells per axis")
    parser.add_argument(
        "--samples", type=int, default=DEFAULT_SAMPLES, help="samples per parametrized curve"
    )
    parser.add_argument("--svg", type=Path, default=None, help="write the figure here")
    parser.add_argument("--csv", type=Path, default=None, help="write point clouds here")
    parser.add_argument("--json", type=Path, default=None, help="write the report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangles",
        description="Pillowcase images and generator counts for 2-stranded tangles.",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="logging level (default WARNING)",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log at INFO and show info notes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    torus = sub.add_parser("torus", help="(p, q) torus-knot tangle")
    torus.add_argument("-p", type=int, required=True)
    torus.add_argument("-q", type=int, required=True)
    torus.add_argument("--r", type=int, default=None, help="with --s, solves p r + q s = 1")
    torus.add_argument("--s", type=int, default=None)
    _add_common(torus)

    pretzel = sub.add_parser("pretzel", help="(-2, 3, n) pretzel tangle")
    pretzel.add_argument("-n", type=int, required=True, help="odd n >= 7")
    _add_common(pretzel)

    bd = sub.add_parser("bd", help="binary dihedral components from branched-cover data")
    bd.add_argument("--h-ba", type=int, required=True)
    bd.add_argument("--h-bc", type=int, required=True)
    bd.add_argument("--aminus", type=int, required=True, help="odd order of A-")
    bd.add_argument(
        "--offset",
        type=parse_offset,
        action="append",
        default=[],
        metavar="F,F",
        help="angle offset of one circle; repeat once per circle",
    )
    _add_common(bd)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.INFO if args.verbose and args.log_level == "WARNING" else args.log_level
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = RunConfig.from_args(args)
        if args.command == "torus":
            return run_torus(args.p, args.q, args.r, args.s, config)
        if args.command == "pretzel":
            return run_pretzel(args.n, config)
        return run_bd(args.h_ba, args.h_bc, args.aminus, args.offset, config)
    except (InconsistencyError, SerializationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except TangleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

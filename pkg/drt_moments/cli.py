"""Command-line front end: ``drt-moments compute`` and ``drt-moments bench``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from . import __version__
from .bench import BenchRecord
from .bench import bench
from .bench import emit_csv
from .bench import reference_budget
from .conversion import moments_to_csv
from .conversion import moments_to_json
from .errors import InvalidArgumentError
from .errors import handle_exceptions
from .logging_config import configure_logging
from .model import MAX_ORDER
from .pgm import read_pgm
from .pipeline import Method
from .pipeline import compute_moments
from .reconstruction import central_moments
from .settings import load_bench_settings
from .settings import parse_size
from .status import ExitCode

logger = logging.getLogger(__name__)

__all__ = ["main", "cmd_compute", "cmd_bench"]


def _order(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}") from exc
    if value > MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must be ≤ {MAX_ORDER}")
    if value < 0:
        raise argparse.ArgumentTypeError("order must be ≥ 0")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _sizes(text: str) -> List[Tuple[int, int]]:
    try:
        return [parse_size(token) for token in text.split(",")]
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(exc.message) from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drt-moments",
        description="Exact raw image moments via discrete Radon projections.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress to stderr (-vv for debug detail)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute the moments of a PGM image")
    compute.add_argument("path", type=Path, help="P2 or P5 PGM file")
    compute.add_argument("--order", type=_order, default=4, help="highest order (default 4)")
    compute.add_argument(
        "--method",
        choices=[method.value for method in Method],
        default=Method.DRT.value,
        help="computation method (default drt)",
    )
    compute.add_argument("--central", action="store_true", help="also print central moments")
    compute.add_argument("--format", choices=["json", "csv"], default="json", help="output format")

    bench_parser = commands.add_parser("bench", help="time both methods on synthetic images")
    bench_parser.add_argument("--sizes", type=_sizes, help="comma-separated WxH list")
    bench_parser.add_argument("--repeats", type=_positive, help="timed runs per size (default 31)")
    bench_parser.add_argument("--order", type=_order, help="highest order (default 4)")
    bench_parser.add_argument("--seed", type=_non_negative, help="synthetic image seed")
    bench_parser.add_argument("--out", type=Path, help="CSV destination (default stdout)")
    bench_parser.add_argument("--config", type=Path, help="JSON file with benchmark settings")
    return parser


def _parse_args(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    return _build_parser().parse_args(argv)


@handle_exceptions
def cmd_compute(args: argparse.Namespace) -> int:
    """Print the moments of one image as JSON or CSV."""
    img = read_pgm(args.path)
    method = Method(args.method)
    logger.info("Computing order-%d moments of %s with %s", args.order, args.path, method)
    moments = compute_moments(img, args.order, method)
    central = central_moments(moments) if args.central else None
    if args.format == "csv":
        sys.stdout.write(moments_to_csv(moments, central))
    else:
        sys.stdout.write(moments_to_json(moments, central))
    return int(ExitCode.OK)


def _optimized_build() -> str:
    """Report ``yes`` when the interpreter runs with ``-O`` or ``-OO``."""
    return "yes" if sys.flags.optimize else "no"


def _bench_comments(
    sizes: Sequence[Tuple[int, int]], seed: int, repeats: int, records: Sequence[BenchRecord]
) -> List[str]:
    comments = [
        f"drt-moments {__version__}; numpy {np.__version__} vectorised kernels; "
        f"optimized_build={_optimized_build()}; single-threaded; seed {seed}; repeats {repeats}; "
        "times are min/median of repeats",
    ]
    for record in records:
        if record.ops.power_multiplications:
            comments.append(
                f"power-vector products {record.width}x{record.height} {record.method}: "
                f"{record.ops.power_multiplications} (not in mults)"
            )
    for width, height in sizes:
        naive, drt = reference_budget(width, height)
        comments.append(
            f"reference budget {width}x{height}: naive mults={naive.multiplications} "
            f"adds={naive.additions}; drt mults={drt.multiplications} adds={drt.additions}"
        )
    return comments


@handle_exceptions
def cmd_bench(args: argparse.Namespace) -> int:
    """Benchmark the naive and projection methods and write CSV."""
    settings = load_bench_settings(
        args.config,
        sizes=args.sizes,
        repeats=args.repeats,
        order=args.order,
        seed=args.seed,
    )
    records: List[BenchRecord] = []
    for size in settings.sizes:
        for method in (Method.NAIVE, Method.DRT):
            records.extend(
                bench(
                    [size],
                    method,
                    settings.repeats,
                    settings.order,
                    seed=settings.seed,
                    warmup=settings.warmup,
                )
            )
    comments = _bench_comments(settings.sizes, settings.seed, settings.repeats, records)
    if args.out is None:
        emit_csv(records, sys.stdout, comments)
    else:
        emit_csv(records, args.out, comments)
        logger.info("Wrote %d benchmark rows to %s", len(records), args.out)
    return int(ExitCode.OK)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit code.

    Flag errors exit with status 2 through :mod:`argparse`.
    """
    args = _parse_args(argv)
    configure_logging(args.verbose)
    if args.command == "compute":
        return cmd_compute(args)
    return cmd_bench(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

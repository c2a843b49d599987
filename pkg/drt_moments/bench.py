"""Wall-clock and operation-count benchmarks of the two moment methods."""

from __future__ import annotations

import csv
import logging
import statistics
import time
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import IO
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from .errors import InternalInconsistencyError
from .errors import InvalidArgumentError
from .instrumented import OpCounter
from .instrumented import OpCounts
from .instrumented import counted_drt_moments
from .instrumented import counted_naive_moments
from .model import Image
from .pipeline import Method
from .pipeline import compute_moments

logger = logging.getLogger(__name__)

__all__ = [
    "BenchRecord",
    "CSV_HEADER",
    "DEFAULT_REPEATS",
    "DEFAULT_SEED",
    "REFERENCE_SIZES",
    "bench",
    "count_ops",
    "emit_csv",
    "reference_budget",
    "synthetic_image",
]

DEFAULT_REPEATS = 31
DEFAULT_SEED = 20210701
# largest first, as measured for the reference comparison
REFERENCE_SIZES: Tuple[Tuple[int, int], ...] = (
    (4032, 3024),
    (3000, 3000),
    (2000, 2000),
    (1500, 1500),
    (1000, 1000),
    (750, 750),
    (400, 400),
    (200, 200),
)
CSV_HEADER = ("width", "height", "method", "order", "repeats", "min_us", "median_us", "mults", "adds")

_LCG_MULTIPLIER = 1664525
_LCG_INCREMENT = 1013904223
_LCG_MASK = 0xFFFFFFFF
_LCG_BLOCK = 4096


@dataclass(frozen=True)
class BenchRecord:
    """Timing and operation counts of one method at one image size."""

    width: int
    height: int
    method: Method
    order: int
    repeats: int
    min_time: int
    median_time: int
    ops: OpCounts

    def __post_init__(self) -> None:
        if self.repeats < 1:
            raise InvalidArgumentError("a benchmark record needs at least one repeat")
        if self.min_time > self.median_time:
            raise InvalidArgumentError("min_time cannot exceed median_time")

    def as_row(self) -> Tuple[object, ...]:
        return (
            self.width,
            self.height,
            str(self.method),
            self.order,
            self.repeats,
            self.min_time,
            self.median_time,
            self.ops.multiplications,
            self.ops.additions,
        )


def _lcg_jump(steps: int) -> Tuple[int, int]:
    """Return ``(A, C)`` with ``state_{n+steps} = A * state_n + C mod 2**32``."""
    multiplier, increment = 1, 0
    for _ in range(steps):
        multiplier = (multiplier * _LCG_MULTIPLIER) & _LCG_MASK
        increment = (increment * _LCG_MULTIPLIER + _LCG_INCREMENT) & _LCG_MASK
    return multiplier, increment


_BLOCK_JUMP = _lcg_jump(_LCG_BLOCK)


def lcg_bytes(count: int, seed: int) -> np.ndarray:
    """Return ``count`` bytes from the 32-bit LCG, one high byte per step.

    The first block is produced by the scalar recurrence; every following
    block applies the block-sized jump to the previous one, which yields the
    same stream as stepping one state at a time.
    """
    state = seed & _LCG_MASK
    first = np.empty(_LCG_BLOCK, dtype=np.uint64)
    for index in range(_LCG_BLOCK):
        state = (state * _LCG_MULTIPLIER + _LCG_INCREMENT) & _LCG_MASK
        first[index] = state
    blocks = [first]
    jump_a, jump_c = (np.uint64(value) for value in _BLOCK_JUMP)
    mask = np.uint64(_LCG_MASK)
    while len(blocks) * _LCG_BLOCK < count:
        blocks.append((blocks[-1] * jump_a + jump_c) & mask)
    states = np.concatenate(blocks)[:count]
    return (states >> np.uint64(24)).astype(np.uint8)


@lru_cache(maxsize=4)
def synthetic_image(width: int, height: int, seed: int = DEFAULT_SEED) -> Image:
    """Return a reproducible pseudo-random image of the given size."""
    if width < 1 or height < 1:
        raise InvalidArgumentError(f"image dimensions must be positive, got {width}x{height}")
    return Image(lcg_bytes(width * height, seed).reshape(height, width))


def count_ops(img: Image, method: Method, r_max: int) -> OpCounts:
    """Run the instrumented variant of ``method`` and return its tallies.

    For ``r_max == 4`` the projection method tallies
    ``5*M*N + 11*M + 11*N + 10`` additions and ``13*M + 16*N + 4``
    multiplications; the naive method ``15*M*N`` additions and ``14*M*N``
    multiplications, with ``3*M + 3*N`` power-vector products tallied
    separately in ``power_multiplications``.

    Args:
        img (Image): Image to process.
        method (Method): ``naive`` or ``drt``.
        r_max (int): Highest moment order.

    Returns:
        OpCounts: Exact tallies of the run.
    """
    counter = OpCounter()
    method = Method(method)
    if method is Method.NAIVE:
        counted_naive_moments(img, r_max, counter)
    else:
        counted_drt_moments(img, r_max, counter)
    counts = counter.snapshot()
    logger.debug(
        "%s order %d on %dx%d: %d multiplications, %d additions, %d power products",
        method,
        r_max,
        img.width,
        img.height,
        counts.multiplications,
        counts.additions,
        counts.power_multiplications,
    )
    return counts


def reference_budget(width: int, height: int) -> Tuple[OpCounts, OpCounts]:
    """Return the nominal fourth-order operation budgets ``(naive, drt)``."""
    pixels = width * height
    naive = OpCounts(15 * pixels, 15 * pixels)
    drt = OpCounts(10 * width + 11 * height, 5 * pixels + 11 * width + 11 * height)
    return naive, drt


def _time_runs(img: Image, method: Method, repeats: int, r_max: int, warmup: int) -> List[int]:
    reference = compute_moments(img, r_max, method)
    for _ in range(max(warmup - 1, 0)):
        compute_moments(img, r_max, method)
    samples: List[int] = []
    for _ in range(repeats):
        start = time.perf_counter_ns()
        result = compute_moments(img, r_max, method)
        samples.append(time.perf_counter_ns() - start)
        if result != reference:
            raise InternalInconsistencyError(
                f"{method} produced different moments across repeats on "
                f"{img.width}x{img.height}"
            )
    return samples


def bench(
    img_sizes: Sequence[Tuple[int, int]],
    method: Method,
    repeats: int = DEFAULT_REPEATS,
    r_max: int = 4,
    *,
    seed: int = DEFAULT_SEED,
    warmup: int = 1,
) -> List[BenchRecord]:
    """Time ``method`` over synthetic images of each size.

    Every size gets one untimed run (which also provides the reference
    result), then ``repeats`` timed runs on the monotonic clock. All results
    must agree. Counting happens in a separate, untimed instrumented run.

    Args:
        img_sizes (Sequence[Tuple[int, int]]): ``(width, height)`` pairs.
        method (Method): Method to time.
        repeats (int): Timed runs per size, at least 1.
        r_max (int): Highest moment order.
        seed (int): Seed of the synthetic image generator.
        warmup (int): Untimed runs before timing; the first one is always done.

    Returns:
        List[BenchRecord]: One record per size, in input order.
    """
    if repeats < 1:
        raise InvalidArgumentError(f"repeats must be >= 1, got {repeats}")
    method = Method(method)
    records: List[BenchRecord] = []
    for width, height in img_sizes:
        img = synthetic_image(width, height, seed)
        logger.info("Timing %s order %d on %dx%d (%d repeats)", method, r_max, width, height, repeats)
        samples_us = [round(ns / 1000) for ns in _time_runs(img, method, repeats, r_max, warmup)]
        records.append(
            BenchRecord(
                width=width,
                height=height,
                method=method,
                order=r_max,
                repeats=repeats,
                min_time=min(samples_us),
                median_time=statistics.median_low(samples_us),
                ops=count_ops(img, method, r_max),
            )
        )
    return records


Destination = Union[str, Path, IO[str]]


def _write_rows(handle: IO[str], records: Iterable[BenchRecord], comments: Sequence[str]) -> None:
    for comment in comments:
        handle.write(f"# {comment}\n")
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.as_row())


def emit_csv(
    records: Iterable[BenchRecord],
    destination: Destination,
    comments: Optional[Sequence[str]] = None,
) -> None:
    """Write benchmark records as CSV.

    Args:
        records (Iterable[BenchRecord]): Rows to write.
        destination (Destination): File path or open text stream.
        comments (Optional[Sequence[str]]): Lines written before the header,
            each prefixed with ``#``.

    Raises:
        OSError: If the destination cannot be written.
    """
    comments = list(comments or ())
    if isinstance(destination, (str, Path)):
        with open(destination, "w", encoding="utf-8", newline="") as handle:
            _write_rows(handle, records, comments)
    else:
        _write_rows(destination, records, comments)

"""Discrete Radon projections and the 1-D moments taken over them."""

from __future__ import annotations

import logging
from functools import lru_cache
from operator import mul
from typing import List
from typing import Tuple

import numpy as np

from .errors import InvalidArgumentError
from .model import MAX_ORDER
from .model import Image
from .model import Moment1D
from .model import Projection
from .model import SlopeRatio

logger = logging.getLogger(__name__)

__all__ = [
    "HORIZONTAL",
    "VERTICAL",
    "DIAGONAL",
    "ANTI_DIAGONAL",
    "SLOPE_TWO",
    "ORDER3_SLOPES",
    "ORDER4_SLOPES",
    "project",
    "project_all_order4",
    "moment_1d",
    "moments_1d_batch",
    "weighted_sum",
]

HORIZONTAL = SlopeRatio(1, 0)
VERTICAL = SlopeRatio(0, 1)
DIAGONAL = SlopeRatio(1, 1)
ANTI_DIAGONAL = SlopeRatio(-1, 1)
SLOPE_TWO = SlopeRatio(1, 2)

ORDER3_SLOPES: Tuple[SlopeRatio, ...] = (HORIZONTAL, VERTICAL, DIAGONAL, ANTI_DIAGONAL)
ORDER4_SLOPES: Tuple[SlopeRatio, ...] = ORDER3_SLOPES + (SLOPE_TWO,)

# float64 bincount weights are exact while every bin stays below 2**53
_EXACT_FLOAT_LIMIT = 2**53


def _bin_index(width: int, height: int, slope: SlopeRatio) -> Tuple[np.ndarray, int, int]:
    """Return the flat bin index of every pixel, the offset and the length.

    ``a*i`` and ``b*j`` are formed once per column and row; the per-pixel
    index is a broadcast addition.
    """
    k_min, k_max = slope.index_range(width, height)
    columns = slope.a * np.arange(width, dtype=np.int64)
    rows = slope.b * np.arange(height, dtype=np.int64) - k_min
    index = (rows[:, None] + columns[None, :]).ravel()
    return index, k_min, k_max - k_min + 1


def project(img: Image, slope: SlopeRatio) -> Projection:
    """Sum the pixels of ``img`` along lines ``a*i + b*j == k``.

    Args:
        img (Image): Source image.
        slope (SlopeRatio): Projection direction in lowest terms.

    Returns:
        Projection: Bins from ``k_min`` to ``k_max`` inclusive, one addition
        per pixel.
    """
    index, offset, length = _bin_index(img.width, img.height, slope)
    assert 255 * max(img.width, img.height) < _EXACT_FLOAT_LIMIT
    sums = np.bincount(index, weights=img.array.ravel(), minlength=length)
    projection = Projection(slope, offset, sums.astype(np.uint64))
    logger.debug(
        "Projected %dx%d image along %s into %d bins from k=%d",
        img.width,
        img.height,
        slope,
        length,
        offset,
    )
    return projection


def project_all_order4(img: Image) -> List[Projection]:
    """Return the projections for ``1:0, 0:1, 1:1, -1:1, 1:2`` in that order."""
    return [project(img, slope) for slope in ORDER4_SLOPES]


@lru_cache(maxsize=256)
def _power_row(start: int, length: int, order: int) -> Tuple[int, ...]:
    """Return ``k**order`` for ``k`` in ``[start, start + length)``."""
    return tuple(k**order for k in range(start, start + length))


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_ORDER:
        raise InvalidArgumentError(f"1-D moment order must be in [0, {MAX_ORDER}], got {order}")


def weighted_sum(proj: Projection, order: int) -> int:
    """Return ``sum_k sums[k] * k**order`` as an exact integer."""
    sums = proj.sums.tolist()
    if order == 0:
        return sum(sums)
    return sum(map(mul, sums, _power_row(proj.offset, len(sums), order)))


def moment_1d(proj: Projection, r: int) -> Moment1D:
    """Return the order-``r`` moment of a projection over its signed index.

    Args:
        proj (Projection): Projection to reduce.
        r (int): Moment order, ``0 <= r <= 8``. ``k**0`` is 1, also at ``k == 0``.

    Returns:
        Moment1D: Exact moment value.
    """
    _check_order(r)
    return Moment1D(proj.slope, r, weighted_sum(proj, r))


def moments_1d_batch(proj: Projection, r_max: int) -> List[Moment1D]:
    """Return the moments of orders ``0..r_max`` of one projection.

    Powers of ``k`` are built incrementally per bin, so each bin costs
    ``r_max - 1`` power products and ``r_max`` bin-by-power products.
    """
    _check_order(r_max)
    totals = [0] * (r_max + 1)
    for k, value in zip(proj.indices(), proj.sums.tolist()):
        totals[0] += value
        if r_max == 0:
            continue
        power = k
        totals[1] += value * power
        for r in range(2, r_max + 1):
            power *= k
            totals[r] += value * power
    return [Moment1D(proj.slope, r, total) for r, total in enumerate(totals)]

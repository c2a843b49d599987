"""Direct evaluation of ``M_pq = sum I(i,j) * i**p * j**q``.

Ground truth for every other pipeline and the benchmark baseline. Column
and row power vectors are built incrementally; every ``(p, q)`` term is formed
for every pixel and summed on a single thread.
"""

from __future__ import annotations

import logging
from typing import Dict
from typing import List
from typing import Tuple

import numpy as np

from .errors import InvalidArgumentError
from .model import MAX_ORDER
from .model import Image
from .model import MomentSet
from .model import moment_keys

logger = logging.getLogger(__name__)

__all__ = ["oracle_moments", "power_vectors", "exact_total", "term_dtype"]

_INT64_LIMIT = 2**63
_LOW_MASK = 0xFFFFFFFF


def term_dtype(img: Image, r_max: int) -> type:
    """Return ``int64`` when every single term fits, otherwise ``object``."""
    largest = 255 * max(img.width - 1, img.height - 1, 1) ** r_max
    pixel_count = img.width * img.height
    if largest < _INT64_LIMIT and pixel_count < 2**31:
        return np.int64
    return object


def power_vectors(length: int, r_max: int, dtype: type) -> List[np.ndarray]:
    """Return ``[x**0, x**1, ..., x**r_max]`` for ``x = 0..length-1``."""
    base = np.arange(length, dtype=np.int64).astype(dtype)
    powers = [np.ones(length, dtype=np.int64).astype(dtype)]
    for _ in range(r_max):
        powers.append(powers[-1] * base)
    return powers


def exact_total(terms: np.ndarray) -> int:
    """Sum a non-negative term array exactly.

    ``int64`` terms are split into 32-bit halves, each of which sums without
    overflow for fewer than ``2**31`` terms; ``object`` arrays already hold
    Python integers.
    """
    if terms.dtype == object:
        return int(terms.sum())
    high = int((terms >> 32).sum())
    low = int((terms & _LOW_MASK).sum())
    return (high << 32) + low


def oracle_moments(img: Image, r_max: int) -> MomentSet:
    """Return every raw moment up to ``r_max`` by direct summation.

    Args:
        img (Image): Source image.
        r_max (int): Highest order, ``0 <= r_max <= 8``.

    Returns:
        MomentSet: Exact moments of order ``r_max``.
    """
    if not 0 <= r_max <= MAX_ORDER:
        raise InvalidArgumentError(f"order must be in [0, {MAX_ORDER}], got {r_max}")
    dtype = term_dtype(img, r_max)
    pixels = img.array.astype(np.int64).astype(dtype)
    column_powers = power_vectors(img.width, r_max, dtype)
    row_powers = power_vectors(img.height, r_max, dtype)

    values: Dict[Tuple[int, int], int] = {}
    for p in range(r_max + 1):
        weighted = pixels if p == 0 else pixels * column_powers[p][None, :]
        for q in range(r_max - p + 1):
            terms = weighted if q == 0 else weighted * row_powers[q][:, None]
            values[(p, q)] = exact_total(terms)
    logger.debug(
        "Oracle evaluated %d moments over a %dx%d image with %s terms",
        len(moment_keys(r_max)),
        img.width,
        img.height,
        np.dtype(dtype).name,
    )
    return MomentSet(r_max, values)

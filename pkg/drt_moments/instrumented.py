"""Operation-counting variants of the naive and projection pipelines.

These mirror the production code step for step but route their arithmetic
through an :class:`OpCounter`. They are never timed. Vectorised stages tally
one operation per array element; the 1-D stage and the reconstruction count
every scalar operation. Bin index arithmetic is address generation and is not
tallied; an exact division counts as one multiplication. Products that only
build the naive power vectors are kept in their own tally.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict
from typing import Iterable
from typing import List
from typing import Mapping
from typing import Set
from typing import Tuple

import numpy as np

from .errors import InternalInconsistencyError
from .errors import InvalidArgumentError
from .model import MAX_ORDER
from .model import Image
from .model import MomentSet
from .model import Projection
from .model import SlopeRatio
from .oracle import exact_total
from .oracle import power_vectors
from .oracle import term_dtype
from .projections import ANTI_DIAGONAL
from .projections import DIAGONAL
from .projections import HORIZONTAL
from .projections import ORDER4_SLOPES
from .projections import SLOPE_TWO
from .projections import VERTICAL
from .projections import project
from .reconstruction import exact_div
from .solver import default_slope_plan
from .solver import inverse_system
from .solver import required_slopes

logger = logging.getLogger(__name__)

__all__ = [
    "OpCounts",
    "OpCounter",
    "counted_naive_moments",
    "counted_drt_moments",
]


@dataclass(frozen=True)
class OpCounts:
    """Multiplication and addition tallies of one run.

    ``power_multiplications`` holds the products spent on incremental
    power vectors by direct summation; they are not part of
    ``multiplications``.
    """

    multiplications: int = 0
    additions: int = 0
    power_multiplications: int = 0

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(
            self.multiplications + other.multiplications,
            self.additions + other.additions,
            self.power_multiplications + other.power_multiplications,
        )


class OpCounter:
    """Mutable tally threaded through an instrumented pipeline."""

    def __init__(self) -> None:
        self.multiplications = 0
        self.additions = 0
        self.power_multiplications = 0

    def reset(self) -> None:
        self.multiplications = 0
        self.additions = 0
        self.power_multiplications = 0

    def snapshot(self) -> OpCounts:
        return OpCounts(self.multiplications, self.additions, self.power_multiplications)

    def tally_multiplications(self, count: int) -> None:
        self.multiplications += count

    def tally_additions(self, count: int) -> None:
        self.additions += count

    def tally_power_multiplications(self, count: int) -> None:
        self.power_multiplications += count

    def add(self, left: int, right: int) -> int:
        self.additions += 1
        return left + right

    def sub(self, left: int, right: int) -> int:
        self.additions += 1
        return left - right

    def mul(self, left: int, right: int) -> int:
        self.multiplications += 1
        return left * right

    def div(self, numerator: int, divisor: int, label: str) -> int:
        self.multiplications += 1
        return exact_div(numerator, divisor, label)


def counted_naive_moments(img: Image, r_max: int, counter: OpCounter) -> MomentSet:
    """Evaluate the defining sum while tallying its arithmetic.

    Per pixel: ``r`` products ``I * i**p``, ``r(r+1)/2`` products with
    ``j**q`` and one addition per moment. The column and row power vectors
    cost ``(r - 1) * (M + N)`` products, tallied as power multiplications.
    """
    if not 0 <= r_max <= MAX_ORDER:
        raise InvalidArgumentError(f"order must be in [0, {MAX_ORDER}], got {r_max}")
    width, height = img.width, img.height
    pixel_count = width * height
    dtype = term_dtype(img, r_max)
    pixels = img.array.astype(np.int64).astype(dtype)
    column_powers = power_vectors(width, r_max, dtype)
    row_powers = power_vectors(height, r_max, dtype)
    counter.tally_power_multiplications(max(r_max - 1, 0) * (width + height))

    values: Dict[Tuple[int, int], int] = {}
    for p in range(r_max + 1):
        weighted = pixels
        if p:
            weighted = pixels * column_powers[p][None, :]
            counter.tally_multiplications(pixel_count)
        for q in range(r_max - p + 1):
            terms = weighted
            if q:
                terms = weighted * row_powers[q][:, None]
                counter.tally_multiplications(pixel_count)
            values[(p, q)] = exact_total(terms)
            counter.tally_additions(pixel_count)
    return MomentSet(r_max, values)


def _counted_projection(img: Image, slope: SlopeRatio, counter: OpCounter) -> Projection:
    projection = project(img, slope)
    counter.tally_additions(img.width * img.height)
    return projection


def _extent(proj: Projection) -> int:
    return max(abs(proj.offset), abs(proj.k_max))


def _counted_power_table(
    extents: Mapping[int, int], counter: OpCounter
) -> Dict[int, List[int]]:
    """Build ``k**r`` for ``0 <= k <= extents[r]`` by squaring splits.

    ``k**r`` is the product of ``k**(r//2)`` and ``k**(r - r//2)``, so each
    entry costs one product and lower powers are extended as far as the
    higher ones need them.
    """
    top = max(extents, default=0)
    need = {r: extents.get(r, -1) for r in range(top + 1)}
    for r in range(top, 1, -1):
        half = r // 2
        need[half] = max(need[half], need[r])
        need[r - half] = max(need[r - half], need[r])
    table: Dict[int, List[int]] = {0: [1] * (need.get(0, -1) + 1)}
    if top >= 1:
        table[1] = list(range(need[1] + 1))
    for r in range(2, top + 1):
        half = r // 2
        low, high = table[half], table[r - half]
        table[r] = [counter.mul(low[k], high[k]) for k in range(need[r] + 1)]
    return table


def _counted_moments(
    proj: Projection,
    orders: Iterable[int],
    table: Mapping[int, List[int]],
    counter: OpCounter,
) -> Dict[int, int]:
    """Accumulate ``sum_k sums[k] * k**r`` for each requested order."""
    orders = sorted(orders)
    totals = {r: 0 for r in orders}
    for k, value in zip(proj.indices(), proj.sums.tolist()):
        magnitude = abs(k)
        for r in orders:
            if r == 0:
                term = value
            else:
                power = table[r][magnitude]
                if k < 0 and r % 2:
                    power = -power
                term = counter.mul(value, power)
            totals[r] = counter.add(totals[r], term)
    return totals


# 1-D orders each canonical projection contributes to the order-4 identities
_ORDER4_USES: Dict[SlopeRatio, Tuple[int, ...]] = {
    HORIZONTAL: (0, 1, 2, 3, 4),
    VERTICAL: (1, 2, 3, 4),
    DIAGONAL: (2, 3, 4),
    ANTI_DIAGONAL: (3, 4),
    SLOPE_TWO: (4,),
}


def _counted_order4(img: Image, counter: OpCounter) -> MomentSet:
    projections = {slope: _counted_projection(img, slope, counter) for slope in ORDER4_SLOPES}
    extents: Dict[int, int] = {}
    for slope, orders in _ORDER4_USES.items():
        for r in orders:
            extents[r] = max(extents.get(r, 0), _extent(projections[slope]))
    table = _counted_power_table(extents, counter)
    m = {
        slope: _counted_moments(projections[slope], orders, table, counter)
        for slope, orders in _ORDER4_USES.items()
    }
    axis_i, axis_j = m[HORIZONTAL], m[VERTICAL]
    diagonal, anti_diagonal, slope_two = m[DIAGONAL], m[ANTI_DIAGONAL], m[SLOPE_TWO][4]

    values = {(0, 0): axis_i[0]}
    for r in range(1, 5):
        values[(r, 0)] = axis_i[r]
        values[(0, r)] = axis_j[r]
    c = counter
    values[(1, 1)] = c.div(
        c.sub(c.sub(diagonal[2], values[(2, 0)]), values[(0, 2)]), 2, "M11"
    )
    values[(2, 1)] = c.div(
        c.sub(c.add(diagonal[3], anti_diagonal[3]), c.mul(2, values[(0, 3)])), 6, "M21"
    )
    values[(1, 2)] = c.div(
        c.sub(c.sub(diagonal[3], anti_diagonal[3]), c.mul(2, values[(3, 0)])), 6, "M12"
    )
    m40, m04 = values[(4, 0)], values[(0, 4)]
    m22 = c.div(
        c.sub(c.sub(c.add(diagonal[4], anti_diagonal[4]), c.mul(2, m40)), c.mul(2, m04)),
        12,
        "M22",
    )
    m13 = c.div(
        c.sub(
            c.sub(c.add(c.sub(slope_two, c.mul(2, diagonal[4])), m40), c.mul(14, m04)),
            c.mul(12, m22),
        ),
        24,
        "M13",
    )
    m31 = c.div(
        c.sub(
            c.sub(c.sub(c.sub(slope_two, m40), c.mul(16, m04)), c.mul(32, m13)),
            c.mul(24, m22),
        ),
        8,
        "M31",
    )
    values[(2, 2)], values[(1, 3)], values[(3, 1)] = m22, m13, m31
    return MomentSet(4, values)


def _counted_general(img: Image, r_max: int, counter: OpCounter) -> MomentSet:
    uses: Dict[SlopeRatio, Set[int]] = {HORIZONTAL: {0}}
    if r_max >= 1:
        uses[HORIZONTAL].add(1)
        uses[VERTICAL] = {1}
    plans = [default_slope_plan(r) for r in range(2, r_max + 1)]
    for plan in plans:
        for slope in plan.slopes:
            uses.setdefault(slope, set()).add(plan.order)
    slopes = required_slopes(r_max) if r_max >= 1 else (HORIZONTAL,)
    projections = {slope: _counted_projection(img, slope, counter) for slope in slopes}

    extents: Dict[int, int] = {}
    for slope, orders in uses.items():
        for r in orders:
            extents[r] = max(extents.get(r, 0), _extent(projections[slope]))
    table = _counted_power_table(extents, counter)
    m = {
        slope: _counted_moments(projections[slope], orders, table, counter)
        for slope, orders in uses.items()
    }

    values = {(0, 0): m[HORIZONTAL][0]}
    if r_max >= 1:
        values[(1, 0)] = m[HORIZONTAL][1]
        values[(0, 1)] = m[VERTICAL][1]
    for plan in plans:
        # the inverse depends only on the plan and is not tallied
        inverse = inverse_system(plan)
        rhs = [m[slope][plan.order] for slope in plan.slopes]
        for column, row in enumerate(inverse):
            p = plan.order - column
            total = 0
            for coefficient, measured in zip(row, rhs):
                total = counter.add(total, counter.mul(coefficient, measured))
            if total.denominator != 1:
                raise InternalInconsistencyError(
                    f"M{p}{plan.order - p} solved to non-integer {total}"
                )
            values[(p, plan.order - p)] = total.numerator
    return MomentSet(r_max, values)


def counted_drt_moments(img: Image, r_max: int, counter: OpCounter) -> MomentSet:
    """Reconstruct moments from projections while tallying the arithmetic.

    Order 4 follows the fixed five-projection identities; other orders use the
    general binomial systems with precomputed inverses.
    """
    if not 0 <= r_max <= MAX_ORDER:
        raise InvalidArgumentError(f"order must be in [0, {MAX_ORDER}], got {r_max}")
    if r_max == 4:
        return _counted_order4(img, counter)
    return _counted_general(img, r_max, counter)

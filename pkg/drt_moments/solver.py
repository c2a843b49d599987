"""Moments of any order up to 8 by solving exact binomial systems.

For order ``r`` the 1-D moment along ``a:b`` is

    moment(a:b, r) = sum_p C(r, p) * a**p * b**(r - p) * M_{p, r-p}

so ``r + 1`` pairwise distinct directions give a square system whose matrix
is a scaled homogeneous Vandermonde matrix and therefore nonsingular.
Matrix columns are ordered ``p = r, r-1, ..., 0``, i.e. ``M_r0`` first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from math import gcd
from typing import Dict
from typing import List
from typing import Sequence
from typing import Tuple

import numpy as np

from .errors import InternalInconsistencyError
from .errors import InvalidArgumentError
from .errors import InvalidPlanError
from .model import MAX_ORDER
from .model import Image
from .model import Moment1D
from .model import MomentSet
from .model import SlopeRatio
from .projections import HORIZONTAL
from .projections import VERTICAL
from .projections import project
from .projections import weighted_sum

logger = logging.getLogger(__name__)

__all__ = [
    "SlopePlan",
    "BinomialSystem",
    "default_slope_plan",
    "required_slopes",
    "build_system",
    "solve_exact",
    "plan_determinant",
    "inverse_system",
    "moments_general",
]


def _candidate_slopes() -> List[SlopeRatio]:
    """Return the slope preference order used by default plans.

    Axes, diagonal and anti-diagonal come first; after that ratios are taken
    by increasing ``|a| + |b|``, each size contributing ``1:n, n:1, -1:n,
    n:-1`` before the general coprime pairs of that size.
    """
    ordered = [HORIZONTAL, VERTICAL, SlopeRatio(1, 1), SlopeRatio(-1, 1)]
    size = 3
    while len(ordered) <= MAX_ORDER:
        n = size - 1
        pairs = [(1, n), (n, 1), (-1, n), (n, -1)]
        for a in range(2, n):
            if gcd(a, size - a) == 1:
                pairs.extend([(a, size - a), (-a, size - a)])
        ordered.extend(SlopeRatio(a, b) for a, b in pairs)
        size += 1
    return ordered


_CANDIDATES = _candidate_slopes()


@dataclass(frozen=True)
class SlopePlan:
    """The ``order + 1`` directions used to solve one moment order."""

    order: int
    slopes: Tuple[SlopeRatio, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "slopes", tuple(self.slopes))
        if self.order < 2:
            raise InvalidPlanError(f"slope plans start at order 2, got {self.order}")
        if len(self.slopes) != self.order + 1:
            raise InvalidPlanError(
                f"order {self.order} needs {self.order + 1} slopes, got {len(self.slopes)}"
            )
        for index, slope in enumerate(self.slopes):
            for other in self.slopes[index + 1:]:
                if slope.direction_equals(other):
                    raise InvalidPlanError(f"slopes {slope} and {other} share a direction")
        if HORIZONTAL not in self.slopes or VERTICAL not in self.slopes:
            raise InvalidPlanError("a slope plan must contain 1:0 and 0:1")


@dataclass(frozen=True)
class BinomialSystem:
    """Square system ``matrix @ [M_r0, ..., M_0r] == rhs``."""

    order: int
    matrix: Tuple[Tuple[int, ...], ...]
    rhs: Tuple[int, ...]

    def coefficient(self, row: int, p: int) -> int:
        """Return the coefficient of ``M_{p, r-p}`` in ``row``."""
        return self.matrix[row][self.order - p]


def _check_order(r: int) -> None:
    if not 2 <= r <= MAX_ORDER:
        raise InvalidArgumentError(f"order must be in [2, {MAX_ORDER}], got {r}")


def default_slope_plan(r: int) -> SlopePlan:
    """Return the default plan for order ``r``.

    Plans are nested: the plan for ``r`` is a prefix of the plan for ``r + 1``,
    so one projection per slope serves every order.

    Args:
        r (int): Moment order, ``2 <= r <= 8``.

    Returns:
        SlopePlan: ``1:0, 0:1, 1:1, -1:1, 1:2, 2:1, -1:2, 2:-1, 1:3`` truncated
        to ``r + 1`` slopes.
    """
    _check_order(r)
    plan = SlopePlan(r, tuple(_CANDIDATES[: r + 1]))
    if _default_determinant(r) == 0:
        raise InvalidPlanError(f"default plan for order {r} is singular")
    return plan


def required_slopes(r_max: int) -> Tuple[SlopeRatio, ...]:
    """Return the distinct slopes needed for every order up to ``r_max``."""
    if r_max < 2:
        return (HORIZONTAL, VERTICAL)
    return default_slope_plan(r_max).slopes


def _plan_matrix(plan: SlopePlan) -> List[List[int]]:
    r = plan.order
    return [
        [comb(r, p) * slope.a**p * slope.b ** (r - p) for p in range(r, -1, -1)]
        for slope in plan.slopes
    ]


def build_system(plan: SlopePlan, moments: Sequence[Moment1D]) -> BinomialSystem:
    """Pair a plan with measured 1-D moments of the plan's order.

    Args:
        plan (SlopePlan): Directions of the system rows.
        moments (Sequence[Moment1D]): One order-``r`` moment per plan slope,
            in plan order.

    Returns:
        BinomialSystem: Rows ``C(r,p) a**p b**(r-p)`` with the measured
        moments on the right-hand side.

    Raises:
        InvalidArgumentError: If a moment's slope or order does not match.
    """
    if len(moments) != len(plan.slopes):
        raise InvalidArgumentError(
            f"plan has {len(plan.slopes)} slopes but {len(moments)} moments were given"
        )
    for slope, moment in zip(plan.slopes, moments):
        if moment.slope != slope or moment.order != plan.order:
            raise InvalidArgumentError(
                f"moment of order {moment.order} along {moment.slope} does not "
                f"match plan row {slope} of order {plan.order}"
            )
    matrix = tuple(tuple(row) for row in _plan_matrix(plan))
    return BinomialSystem(plan.order, matrix, tuple(moment.value for moment in moments))


def _eliminate(matrix: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, Fraction]:
    """Gauss-Jordan elimination over ``Fraction`` object arrays.

    ``rhs`` may hold several columns. Returns the solved right-hand side and
    the determinant of ``matrix``.
    """
    a = matrix.copy()
    b = rhs.copy()
    n = a.shape[0]
    determinant = Fraction(1)
    for i in range(n):
        for j in range(i, n):
            if a[j, i] != 0:
                if i != j:
                    a[[i, j]] = a[[j, i]]
                    b[[i, j]] = b[[j, i]]
                    determinant = -determinant
                break
        else:
            return b, Fraction(0)
        pivot = a[i, i]
        determinant *= pivot
        a[i, :] /= pivot
        b[i, :] /= pivot
        for j in range(n):
            if j != i and a[j, i] != 0:
                factor = a[j, i]
                a[j, :] -= factor * a[i, :]
                b[j, :] -= factor * b[i, :]
    return b, determinant


def _fraction_array(rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array([[Fraction(value) for value in row] for row in rows], dtype=object)


def solve_exact(sys: BinomialSystem) -> List[Tuple[int, int, int]]:
    """Solve a binomial system in exact rational arithmetic.

    Args:
        sys (BinomialSystem): System from :func:`build_system`.

    Returns:
        List[Tuple[int, int, int]]: ``(p, q, M_pq)`` for ``p = r..0``.

    Raises:
        InvalidPlanError: If the matrix is singular.
        InternalInconsistencyError: If a solution entry is not an integer.
    """
    rhs = _fraction_array([[value] for value in sys.rhs])
    solution, determinant = _eliminate(_fraction_array(sys.matrix), rhs)
    if determinant == 0:
        raise InvalidPlanError(f"order-{sys.order} system matrix is singular")
    result: List[Tuple[int, int, int]] = []
    for column, value in enumerate(solution[:, 0]):
        p = sys.order - column
        if value.denominator != 1:
            raise InternalInconsistencyError(
                f"M{p}{sys.order - p} solved to non-integer {value}"
            )
        result.append((p, sys.order - p, value.numerator))
    return result


def plan_determinant(plan: SlopePlan) -> int:
    """Return the exact determinant of the plan's system matrix."""
    matrix = _fraction_array(_plan_matrix(plan))
    _, determinant = _eliminate(matrix, np.zeros((plan.order + 1, 0), dtype=object))
    return int(determinant)


@lru_cache(maxsize=None)
def _default_determinant(r: int) -> int:
    determinant = plan_determinant(SlopePlan(r, tuple(_CANDIDATES[: r + 1])))
    logger.debug("Default order-%d plan determinant: %d", r, determinant)
    return determinant


def inverse_system(plan: SlopePlan) -> Tuple[Tuple[Fraction, ...], ...]:
    """Return the exact inverse of the plan's system matrix.

    Raises:
        InvalidPlanError: If the matrix is singular.
    """
    size = plan.order + 1
    identity = _fraction_array([[int(i == j) for j in range(size)] for i in range(size)])
    inverse, determinant = _eliminate(_fraction_array(_plan_matrix(plan)), identity)
    if determinant == 0:
        raise InvalidPlanError(f"order-{plan.order} system matrix is singular")
    return tuple(tuple(row) for row in inverse)


def moments_general(img: Image, r_max: int) -> MomentSet:
    """Return every moment up to ``r_max`` from discrete Radon projections.

    Each slope in :func:`required_slopes` is projected once. Orders 0 and 1
    come from the axis projections; every order ``r >= 2`` is solved from its
    default plan.

    Args:
        img (Image): Source image.
        r_max (int): Highest order, ``2 <= r_max <= 8``.

    Returns:
        MomentSet: Exact moments of order ``r_max``.
    """
    _check_order(r_max)
    projections = {slope: project(img, slope) for slope in required_slopes(r_max)}
    horizontal = projections[HORIZONTAL]
    values: Dict[Tuple[int, int], int] = {
        (0, 0): weighted_sum(horizontal, 0),
        (1, 0): weighted_sum(horizontal, 1),
        (0, 1): weighted_sum(projections[VERTICAL], 1),
    }
    for r in range(2, r_max + 1):
        plan = default_slope_plan(r)
        moments = [
            Moment1D(slope, r, weighted_sum(projections[slope], r)) for slope in plan.slopes
        ]
        for p, q, value in solve_exact(build_system(plan, moments)):
            values[(p, q)] = value
    logger.debug(
        "Solved orders 2..%d from %d projections of a %dx%d image",
        r_max,
        len(projections),
        img.width,
        img.height,
    )
    return MomentSet(r_max, values)

"""Exact 2-D moments up to fourth order from five discrete Radon projections.

Expanding ``(a*i + b*j)**r`` inside each 1-D moment gives a binomial
combination of the 2-D moments of order ``r``. The axis projections yield
``M_r0`` and ``M_0r`` directly; the diagonal, anti-diagonal and slope-2
projections supply the mixed terms (``diag_r`` is the order-``r`` moment along
``1:1``, ``anti_r`` along ``-1:1`` and ``steep_4`` along ``1:2``):

    diag_2  = M20 + 2 M11 + M02
    diag_3  = M30 + 3 M21 + 3 M12 + M03
    anti_3  = -M30 + 3 M21 - 3 M12 + M03
    diag_4  = M40 + 4 M31 + 6 M22 + 4 M13 + M04
    anti_4  = M40 - 4 M31 + 6 M22 - 4 M13 + M04
    steep_4 = M40 + 8 M31 + 24 M22 + 32 M13 + 16 M04
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import comb
from typing import Dict
from typing import Mapping
from typing import Sequence
from typing import Tuple

from .errors import EmptyImageError
from .errors import InternalInconsistencyError
from .errors import InvalidArgumentError
from .model import MomentSet
from .model import Projection
from .model import moment_keys
from .projections import ORDER3_SLOPES
from .projections import ORDER4_SLOPES
from .projections import weighted_sum

logger = logging.getLogger(__name__)

__all__ = [
    "exact_div",
    "reconstruct_order3",
    "reconstruct_order4",
    "centroid",
    "central_moments",
]


def exact_div(numerator: int, divisor: int, label: str) -> int:
    """Divide ``numerator`` by ``divisor`` and insist on a zero remainder.

    Args:
        numerator (int): Exact integer combination of 1-D and 2-D moments.
        divisor (int): Binomial denominator of the identity.
        label (str): Moment being solved, used in the error message.

    Returns:
        int: The exact quotient.

    Raises:
        InternalInconsistencyError: If the division leaves a remainder.
    """
    quotient, remainder = divmod(numerator, divisor)
    if remainder:
        raise InternalInconsistencyError(
            f"{label}: numerator {numerator} is not divisible by {divisor}"
        )
    return quotient


def _check_slopes(projs: Sequence[Projection], expected: Sequence) -> None:
    actual = tuple(proj.slope for proj in projs)
    if actual != tuple(expected):
        names = ", ".join(str(slope) for slope in expected)
        raise InvalidArgumentError(
            f"expected projections for slopes [{names}], got "
            f"[{', '.join(str(slope) for slope in actual)}]"
        )


def _order3_values(projs: Sequence[Projection]) -> Dict[Tuple[int, int], int]:
    horizontal, vertical, diagonal, anti_diagonal = projs[:4]
    values: Dict[Tuple[int, int], int] = {(0, 0): weighted_sum(horizontal, 0)}
    for r in range(1, 4):
        values[(r, 0)] = weighted_sum(horizontal, r)
        values[(0, r)] = weighted_sum(vertical, r)

    diagonal_2 = weighted_sum(diagonal, 2)
    values[(1, 1)] = exact_div(diagonal_2 - values[(2, 0)] - values[(0, 2)], 2, "M11")

    diagonal_3 = weighted_sum(diagonal, 3)
    anti_diagonal_3 = weighted_sum(anti_diagonal, 3)
    values[(2, 1)] = exact_div(
        diagonal_3 + anti_diagonal_3 - 2 * values[(0, 3)], 6, "M21"
    )
    values[(1, 2)] = exact_div(
        diagonal_3 - anti_diagonal_3 - 2 * values[(3, 0)], 6, "M12"
    )
    return values


def reconstruct_order3(projs: Sequence[Projection]) -> MomentSet:
    """Return the ten moments up to third order from four projections.

    Args:
        projs (Sequence[Projection]): Projections of one image for slopes
            ``1:0, 0:1, 1:1, -1:1`` in that order.

    Returns:
        MomentSet: Exact moments of order 3.
    """
    _check_slopes(projs, ORDER3_SLOPES)
    return MomentSet(3, _order3_values(projs))


def reconstruct_order4(projs: Sequence[Projection]) -> MomentSet:
    """Return all fifteen moments up to fourth order from five projections.

    ``M22`` is solved first, then ``M13``, then ``M31``; each step reuses the
    previous result.

    Args:
        projs (Sequence[Projection]): Output of
            :func:`~drt_moments.projections.project_all_order4`.

    Returns:
        MomentSet: Exact moments of order 4.

    Raises:
        InvalidArgumentError: If the projections are not the five canonical
            slopes in order.
        InternalInconsistencyError: If any identity leaves a remainder.
    """
    _check_slopes(projs, ORDER4_SLOPES)
    horizontal, vertical, diagonal, anti_diagonal, slope_two = projs
    values = _order3_values(projs)
    m40 = values[(4, 0)] = weighted_sum(horizontal, 4)
    m04 = values[(0, 4)] = weighted_sum(vertical, 4)

    diagonal_4 = weighted_sum(diagonal, 4)
    anti_diagonal_4 = weighted_sum(anti_diagonal, 4)
    slope_two_4 = weighted_sum(slope_two, 4)

    m22 = exact_div(diagonal_4 + anti_diagonal_4 - 2 * m40 - 2 * m04, 12, "M22")
    m13 = exact_div(
        slope_two_4 - 2 * diagonal_4 + m40 - 14 * m04 - 12 * m22, 24, "M13"
    )
    m31 = exact_div(slope_two_4 - m40 - 16 * m04 - 32 * m13 - 24 * m22, 8, "M31")
    values[(2, 2)] = m22
    values[(1, 3)] = m13
    values[(3, 1)] = m31
    logger.debug(
        "Reconstructed order-4 moments: diag_4=%d anti_4=%d steep_4=%d",
        diagonal_4,
        anti_diagonal_4,
        slope_two_4,
    )
    return MomentSet(4, values)


def centroid(ms: MomentSet) -> Tuple[Fraction, Fraction]:
    """Return the exact centroid ``(M10 / M00, M01 / M00)``.

    Raises:
        EmptyImageError: If the total mass is zero.
        InvalidArgumentError: If the set holds no first-order moments.
    """
    if ms.order < 1:
        raise InvalidArgumentError("centroid needs moments of order >= 1")
    if ms.mass == 0:
        raise EmptyImageError("image has zero total mass; centroid is undefined")
    return Fraction(ms[(1, 0)], ms.mass), Fraction(ms[(0, 1)], ms.mass)


def central_moments(ms: MomentSet) -> Mapping[Tuple[int, int], Fraction]:
    """Return the central moments ``mu_pq`` for every ``p + q <= ms.order``.

    Uses the binomial expansion
    ``mu_pq = sum_s sum_t C(p,s) C(q,t) (-x)**(p-s) (-y)**(q-t) M_st``
    in exact rational arithmetic, so ``mu10 == mu01 == 0``.

    Args:
        ms (MomentSet): Raw moments of an image with positive mass.

    Returns:
        Mapping[Tuple[int, int], Fraction]: Central moments keyed by ``(p, q)``.
    """
    if ms.mass == 0:
        raise EmptyImageError("image has zero total mass; central moments are undefined")
    if ms.order == 0:
        return {(0, 0): Fraction(ms.mass)}
    x_bar, y_bar = centroid(ms)
    x_powers = [(-x_bar) ** n for n in range(ms.order + 1)]
    y_powers = [(-y_bar) ** n for n in range(ms.order + 1)]
    central: Dict[Tuple[int, int], Fraction] = {}
    for p, q in moment_keys(ms.order):
        total = Fraction(0)
        for s in range(p + 1):
            weight = comb(p, s) * x_powers[p - s]
            for t in range(q + 1):
                total += weight * comb(q, t) * y_powers[q - t] * ms[(s, t)]
        central[(p, q)] = total
    return central

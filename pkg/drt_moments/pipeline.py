"""Production entry point selecting between the naive and projection methods."""

from __future__ import annotations

from enum import Enum

from .errors import InvalidArgumentError
from .model import MAX_ORDER
from .model import Image
from .model import MomentSet
from .oracle import oracle_moments
from .projections import HORIZONTAL
from .projections import VERTICAL
from .projections import project
from .projections import project_all_order4
from .projections import weighted_sum
from .reconstruction import reconstruct_order4
from .solver import moments_general

__all__ = ["Method", "compute_moments"]


class Method(str, Enum):
    """Moment computation method."""

    NAIVE = "naive"
    DRT = "drt"

    def __str__(self) -> str:
        return self.value


def _axis_moments(img: Image, r_max: int) -> MomentSet:
    horizontal = project(img, HORIZONTAL)
    values = {(0, 0): weighted_sum(horizontal, 0)}
    if r_max == 1:
        values[(1, 0)] = weighted_sum(horizontal, 1)
        values[(0, 1)] = weighted_sum(project(img, VERTICAL), 1)
    return MomentSet(r_max, values)


def compute_moments(img: Image, r_max: int, method: Method) -> MomentSet:
    """Return every raw moment of ``img`` up to ``r_max``.

    Args:
        img (Image): Source image.
        r_max (int): Highest order, ``0 <= r_max <= 8``.
        method (Method): ``naive`` evaluates the defining sum directly;
            ``drt`` reconstructs the moments from projections.

    Returns:
        MomentSet: Identical for both methods.
    """
    if not 0 <= r_max <= MAX_ORDER:
        raise InvalidArgumentError(f"order must be <= {MAX_ORDER}, got {r_max}")
    method = Method(method)
    if method is Method.NAIVE:
        return oracle_moments(img, r_max)
    if r_max <= 1:
        return _axis_moments(img, r_max)
    if r_max == 4:
        return reconstruct_order4(project_all_order4(img))
    return moments_general(img, r_max)

"""Domain types shared by every moment pipeline.

Index convention: ``i`` is the horizontal (column) index in ``[0, width)`` and
``j`` the vertical (row) index in ``[0, height)``. Pixel ``I(i, j)`` is stored
row-major at ``pixels[j * width + i]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict
from typing import Iterator
from typing import List
from typing import Mapping
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "Image",
    "SlopeRatio",
    "Projection",
    "MomentSet",
    "Moment1D",
    "MAX_ORDER",
    "image_from_pixels",
    "moment_keys",
]

MAX_ORDER = 8
_INT128_LIMIT = 2**127
_MAX_PIXEL = 255

PixelData = Union[bytes, bytearray, memoryview, Sequence[int], np.ndarray]


def _accumulator_bound(width: int, height: int) -> int:
    """Return the worst-case magnitude of a fourth-order intermediate."""
    return _MAX_PIXEL * width * height * (width + 2 * height) ** 4


class Image:
    """Immutable 8-bit grayscale pixel grid.

    Attributes:
        width (int): Number of columns ``M``.
        height (int): Number of rows ``N``.
    """

    __slots__ = ("_width", "_height", "_array")

    def __init__(self, array: np.ndarray) -> None:
        if array.ndim != 2:
            raise InvalidArgumentError(f"image array must be 2-D, got {array.ndim}-D")
        height, width = array.shape
        if width < 1 or height < 1:
            raise InvalidArgumentError(
                f"image dimensions must be positive, got {width}x{height}"
            )
        if _accumulator_bound(width, height) >= _INT128_LIMIT:
            raise InvalidArgumentError(
                f"image {width}x{height} exceeds the signed 128-bit moment bound"
            )
        frozen = np.array(array, dtype=np.uint8, copy=True, order="C")
        frozen.setflags(write=False)
        self._width = width
        self._height = height
        self._array = frozen

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Image":
        """Build an image from a ``(height, width)`` array of 0..255 values.

        Args:
            array (np.ndarray): Two-dimensional integer array indexed ``[j, i]``.

        Returns:
            Image: An immutable copy of ``array``.
        """
        values = np.asarray(array)
        if values.dtype != np.uint8:
            if values.size and (values.min() < 0 or values.max() > _MAX_PIXEL):
                raise InvalidArgumentError("pixel values must lie in [0, 255]")
        return cls(values.astype(np.uint8, copy=False))

    @classmethod
    def zeros(cls, width: int, height: int) -> "Image":
        """Return an all-zero image of the given size."""
        return cls(np.zeros((height, width), dtype=np.uint8))

    @property
    def width(self) -> int:
        return self._width

    @property
    def height(self) -> int:
        return self._height

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(height, width)`` view of the pixels."""
        return self._array

    @property
    def pixels(self) -> bytes:
        """Row-major pixel bytes."""
        return self._array.tobytes()

    def pixel(self, i: int, j: int) -> int:
        """Return ``I(i, j)``."""
        if not (0 <= i < self._width and 0 <= j < self._height):
            raise InvalidArgumentError(
                f"pixel ({i}, {j}) outside {self._width}x{self._height} image"
            )
        return int(self._array[j, i])

    def total_mass(self) -> int:
        """Return the exact sum of all pixels."""
        return int(self._array.sum(dtype=np.uint64))

    def transposed(self) -> "Image":
        """Return the image with ``i`` and ``j`` swapped."""
        return Image(self._array.T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self._array.shape == other._array.shape and bool(
            np.array_equal(self._array, other._array)
        )

    def __hash__(self) -> int:
        return hash((self._width, self._height, self._array.tobytes()))

    def __repr__(self) -> str:
        return f"Image(width={self._width}, height={self._height})"


def image_from_pixels(width: int, height: int, data: PixelData) -> Image:
    """Build an :class:`Image` from row-major pixel data.

    Args:
        width (int): Number of columns, at least 1.
        height (int): Number of rows, at least 1.
        data (PixelData): ``width * height`` intensities in ``[0, 255]``.

    Returns:
        Image: Image with ``I(i, j) == data[j * width + i]``.

    Raises:
        InvalidArgumentError: If the dimensions are not positive, the length
            does not match, or a value is outside ``[0, 255]``.
    """
    if width < 1 or height < 1:
        raise InvalidArgumentError(
            f"image dimensions must be positive, got {width}x{height}"
        )
    if isinstance(data, (bytes, bytearray, memoryview)):
        values = np.frombuffer(bytes(data), dtype=np.uint8)
    else:
        values = np.asarray(data, dtype=np.int64).ravel()
        if values.size and (values.min() < 0 or values.max() > _MAX_PIXEL):
            raise InvalidArgumentError("pixel values must lie in [0, 255]")
    expected = width * height
    if values.size != expected:
        raise InvalidArgumentError(
            f"length mismatch (expected {expected}, got {values.size})"
        )
    return Image(values.astype(np.uint8).reshape(height, width))


@dataclass(frozen=True)
class SlopeRatio:
    """Integer projection direction ``a:b``; pixel ``(i, j)`` lands in bin
    ``k = a*i + b*j``.

    Ratios are kept in lowest terms. ``1:1`` and ``-1:-1`` are
    direction-equal but distinct values, since their bins are mirrored.
    """

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == 0 and self.b == 0:
            raise InvalidArgumentError("slope ratio 0:0 has no direction")
        if math.gcd(self.a, self.b) != 1:
            raise InvalidArgumentError(
                f"slope ratio {self.a}:{self.b} is not in lowest terms"
            )

    @classmethod
    def reduced(cls, a: int, b: int) -> "SlopeRatio":
        """Return the ratio ``a:b`` divided by ``gcd(|a|, |b|)``."""
        if a == 0 and b == 0:
            raise InvalidArgumentError("slope ratio 0:0 has no direction")
        divisor = math.gcd(a, b)
        return cls(a // divisor, b // divisor)

    @classmethod
    def parse(cls, token: str) -> "SlopeRatio":
        """Parse the ``"a:b"`` notation used on the command line."""
        parts = token.strip().split(":")
        if len(parts) != 2:
            raise InvalidArgumentError(f"slope must look like 'a:b', got {token!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InvalidArgumentError(f"slope must be integral, got {token!r}") from exc
        return cls(a, b)

    def direction_equals(self, other: "SlopeRatio") -> bool:
        """Return ``True`` when ``other`` is this ratio or its negation."""
        return (self.a, self.b) in ((other.a, other.b), (-other.a, -other.b))

    @property
    def angle_degrees(self) -> float:
        """Display angle of the direction; never used in computation."""
        return math.degrees(math.atan2(self.b, self.a))

    def index_range(self, width: int, height: int) -> Tuple[int, int]:
        """Return ``(k_min, k_max)`` over an image of the given size."""
        span_i = self.a * (width - 1)
        span_j = self.b * (height - 1)
        return min(0, span_i) + min(0, span_j), max(0, span_i) + max(0, span_j)

    def __str__(self) -> str:
        return f"{self.a}:{self.b}"


class Projection:
    """One-dimensional line sums of an image along a :class:`SlopeRatio`.

    ``sums[k - offset]`` holds the sum of every pixel with ``a*i + b*j == k``.
    """

    __slots__ = ("_slope", "_offset", "_sums")

    def __init__(self, slope: SlopeRatio, offset: int, sums: np.ndarray) -> None:
        values = np.array(sums, dtype=np.uint64, copy=True)
        if values.ndim != 1 or values.size == 0:
            raise InvalidArgumentError("projection sums must be a non-empty 1-D array")
        values.setflags(write=False)
        self._slope = slope
        self._offset = int(offset)
        self._sums = values

    @property
    def slope(self) -> SlopeRatio:
        return self._slope

    @property
    def offset(self) -> int:
        """Index ``k`` of the first bin."""
        return self._offset

    @property
    def sums(self) -> np.ndarray:
        return self._sums

    def __len__(self) -> int:
        return int(self._sums.size)

    @property
    def k_max(self) -> int:
        return self._offset + len(self) - 1

    def indices(self) -> range:
        """Return the signed bin indices ``k`` in storage order."""
        return range(self._offset, self._offset + len(self))

    def total(self) -> int:
        """Return the exact sum over all bins."""
        return sum(self._sums.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Projection):
            return NotImplemented
        return (
            self._slope == other._slope
            and self._offset == other._offset
            and bool(np.array_equal(self._sums, other._sums))
        )

    def __hash__(self) -> int:
        return hash((self._slope, self._offset, self._sums.tobytes()))

    def __repr__(self) -> str:
        return (
            f"Projection(slope={self._slope}, offset={self._offset}, "
            f"length={len(self)})"
        )


def moment_keys(order: int) -> List[Tuple[int, int]]:
    """Return every ``(p, q)`` with ``p + q <= order``.

    Keys are ordered by total order, then by ``p`` descending, e.g.
    ``(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), ...``.
    """
    return [(p, r - p) for r in range(order + 1) for p in range(r, -1, -1)]


@dataclass(frozen=True, eq=False)
class MomentSet:
    """Exact raw moments ``M_pq`` for every ``p + q <= order``."""

    order: int
    values: Mapping[Tuple[int, int], int]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise InvalidArgumentError(f"moment order must be >= 0, got {self.order}")
        expected = set(moment_keys(self.order))
        if set(self.values) != expected:
            missing = sorted(expected - set(self.values))
            extra = sorted(set(self.values) - expected)
            raise InvalidArgumentError(
                f"moment set of order {self.order} has missing keys {missing} "
                f"and unexpected keys {extra}"
            )
        frozen: Dict[Tuple[int, int], int] = {
            key: int(self.values[key]) for key in moment_keys(self.order)
        }
        if frozen[(0, 0)] < 0:
            raise InvalidArgumentError("M00 must be non-negative")
        object.__setattr__(self, "values", MappingProxyType(frozen))

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.values[key]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def mass(self) -> int:
        return self.values[(0, 0)]

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        """Yield ``(p, q, value)`` in canonical key order."""
        for p, q in moment_keys(self.order):
            yield p, q, self.values[(p, q)]

    def row(self, order: int) -> List[int]:
        """Return ``[M_{r,0}, M_{r-1,1}, ..., M_{0,r}]`` for ``r = order``."""
        if not 0 <= order <= self.order:
            raise InvalidArgumentError(
                f"row {order} outside moment set of order {self.order}"
            )
        return [self.values[(p, order - p)] for p in range(order, -1, -1)]

    def truncated(self, order: int) -> "MomentSet":
        """Return the subset of moments up to ``order``."""
        if not 0 <= order <= self.order:
            raise InvalidArgumentError(
                f"cannot truncate order {self.order} set to order {order}"
            )
        return MomentSet(order, {key: self.values[key] for key in moment_keys(order)})

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MomentSet):
            return NotImplemented
        return self.order == other.order and dict(self.values) == dict(other.values)


@dataclass(frozen=True)
class Moment1D:
    """Order-``r`` moment of one projection, ``sum_k sums[k] * k**r``."""

    slope: SlopeRatio
    order: int
    value: int

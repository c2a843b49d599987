"""Shared fixtures for the moment pipeline tests."""

from __future__ import annotations

from typing import Callable

import numpy as np
import pytest

from drt_moments.model import Image


def random_image(rng: np.random.Generator, width: int, height: int, high: int = 255) -> Image:
    """Return an image with uniformly random pixels in ``[0, high]``."""
    return Image(rng.integers(0, high + 1, size=(height, width), dtype=np.uint8))


def single_pixel(width: int, height: int, i: int, j: int, value: int) -> Image:
    """Return a zero image with ``I(i, j) = value``."""
    array = np.zeros((height, width), dtype=np.uint8)
    array[j, i] = value
    return Image(array)


def brute_moment(img: Image, p: int, q: int) -> int:
    """Evaluate ``sum I(i, j) * i**p * j**q`` pixel by pixel."""
    total = 0
    for j, row in enumerate(img.array.tolist()):
        for i, value in enumerate(row):
            total += value * i**p * j**q
    return total


@pytest.fixture
def rng() -> np.random.Generator:
    """Deterministic random source."""
    return np.random.default_rng(1234)


@pytest.fixture
def make_image(rng: np.random.Generator) -> Callable[..., Image]:
    """Factory producing random images from the shared generator."""

    def _factory(width: int, height: int, high: int = 255) -> Image:
        return random_image(rng, width, height, high)

    return _factory


@pytest.fixture
def ones_2x2() -> Image:
    """2x2 image with every pixel equal to 1."""
    return Image(np.ones((2, 2), dtype=np.uint8))


@pytest.fixture
def pixel_5_at_2_3() -> Image:
    """Value 5 at ``(i=2, j=3)`` in an otherwise empty 4x5 image."""
    return single_pixel(4, 5, 2, 3, 5)

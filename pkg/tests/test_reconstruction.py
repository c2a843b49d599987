"""Tests for the fixed-projection moment identities and central moments."""

from fractions import Fraction

import numpy as np
import pytest

from drt_moments.errors import EmptyImageError
from drt_moments.errors import InternalInconsistencyError
from drt_moments.errors import InvalidArgumentError
from drt_moments.model import Image
from drt_moments.model import MomentSet
from drt_moments.model import moment_keys
from drt_moments.oracle import oracle_moments
from drt_moments.projections import moment_1d
from drt_moments.projections import project_all_order4
from drt_moments.reconstruction import central_moments
from drt_moments.reconstruction import centroid
from drt_moments.reconstruction import exact_div
from drt_moments.reconstruction import reconstruct_order3
from drt_moments.reconstruction import reconstruct_order4

from .conftest import random_image
from .conftest import single_pixel


def test_single_pixel_anchor(pixel_5_at_2_3):
    """Value 5 at (2, 3) exercises every fourth-order identity."""
    projections = project_all_order4(pixel_5_at_2_3)
    _, _, diagonal, anti_diagonal, slope_two = projections
    assert moment_1d(diagonal, 4).value == 3125
    assert moment_1d(anti_diagonal, 4).value == 5
    assert moment_1d(slope_two, 4).value == 20480

    ms = reconstruct_order4(projections)
    assert ms.row(4) == [80, 120, 180, 270, 405]
    assert ms[(0, 0)] == 5
    assert ms[(1, 1)] == 30
    assert ms[(2, 1)] == 60
    assert ms[(1, 2)] == 90


def test_zero_image_has_zero_moments():
    """Every moment of an empty image is zero."""
    ms = reconstruct_order4(project_all_order4(Image.zeros(6, 4)))
    assert all(value == 0 for _, _, value in ms.entries())


def test_all_ones_2x2(ones_2x2):
    """Four-term sums checked by hand."""
    ms = reconstruct_order4(project_all_order4(ones_2x2))
    assert ms[(0, 0)] == 4
    assert ms[(1, 0)] == ms[(0, 1)] == 2
    assert ms[(1, 1)] == 1
    assert ms[(4, 0)] == ms[(0, 4)] == 2
    assert ms[(3, 1)] == ms[(1, 3)] == ms[(2, 2)] == 1


def test_order4_matches_oracle_on_random_images():
    """Exact equality with direct summation over 200 random images."""
    rng = np.random.default_rng(20210701)
    for _ in range(200):
        width, height = (int(value) for value in rng.integers(1, 65, size=2))
        high = int(rng.choice([1, 7, 255]))
        img = random_image(rng, width, height, high)
        assert reconstruct_order4(project_all_order4(img)) == oracle_moments(img, 4), (width, height)


def test_order4_saturated_image_matches_oracle():
    """Every pixel at 255 gives the largest intermediates for the size."""
    img = Image(np.full((64, 64), 255, dtype=np.uint8))
    assert reconstruct_order4(project_all_order4(img)) == oracle_moments(img, 4)


def test_order3_from_four_projections(make_image):
    """Ten moments up to third order come from the first four projections."""
    img = make_image(17, 23)
    ms = reconstruct_order3(project_all_order4(img)[:4])
    assert ms.order == 3
    assert ms == oracle_moments(img, 3)


def test_reconstruct_rejects_wrong_slopes(make_image):
    """Projections must arrive in canonical slope order."""
    projections = project_all_order4(make_image(5, 5))
    with pytest.raises(InvalidArgumentError, match="expected projections"):
        reconstruct_order4(list(reversed(projections)))
    with pytest.raises(InvalidArgumentError):
        reconstruct_order3(projections)


def test_exact_div():
    """Exact quotients pass through; remainders raise."""
    assert exact_div(-36, 12, "M22") == -3
    with pytest.raises(InternalInconsistencyError, match="M11"):
        exact_div(7, 2, "M11")


def test_centroid_is_exact(ones_2x2):
    """The centroid is a pair of fractions."""
    ms = oracle_moments(ones_2x2, 1)
    assert centroid(ms) == (Fraction(1, 2), Fraction(1, 2))


def test_central_moments_all_ones(ones_2x2):
    """Centred sums about (1/2, 1/2)."""
    mu = central_moments(reconstruct_order4(project_all_order4(ones_2x2)))
    assert mu[(0, 0)] == 4
    assert mu[(1, 0)] == mu[(0, 1)] == 0
    assert mu[(2, 0)] == mu[(0, 2)] == 1
    assert mu[(1, 1)] == 0
    assert mu[(2, 2)] == Fraction(1, 4)


def test_central_moments_single_pixel():
    """A point mass sits at its own centroid."""
    img = single_pixel(9, 7, 6, 2, 42)
    mu = central_moments(oracle_moments(img, 4))
    assert mu[(0, 0)] == 42
    assert all(mu[key] == 0 for key in moment_keys(4) if key != (0, 0))


def test_central_moments_match_direct_centred_sum(make_image):
    """The binomial expansion equals the centred sum for any order."""
    img = make_image(5, 4)
    ms = oracle_moments(img, 5)
    x_bar, y_bar = centroid(ms)
    mu = central_moments(ms)
    for p, q in moment_keys(5):
        direct = sum(
            img.pixel(i, j) * (i - x_bar) ** p * (j - y_bar) ** q
            for j in range(img.height)
            for i in range(img.width)
        )
        assert mu[(p, q)] == direct


def test_central_moments_of_empty_image():
    """Zero mass has no centroid."""
    ms = oracle_moments(Image.zeros(3, 3), 4)
    with pytest.raises(EmptyImageError):
        central_moments(ms)
    with pytest.raises(EmptyImageError):
        centroid(ms)


def test_central_moments_order_zero():
    """Order zero keeps only the mass."""
    assert central_moments(MomentSet(0, {(0, 0): 12})) == {(0, 0): Fraction(12)}


@pytest.mark.parametrize("size", [(6, 6), (9, 4), (1, 13)])
def test_transpose_swaps_moment_indices(make_image, size):
    """Swapping the image axes swaps ``M_pq`` and ``M_qp``."""
    img = make_image(*size)
    transposed = Image(img.array.T.copy())
    moments = reconstruct_order4(project_all_order4(img)).values
    swapped = reconstruct_order4(project_all_order4(transposed)).values
    for p, q in moment_keys(4):
        assert swapped[(p, q)] == moments[(q, p)]


def test_central_moments_are_translation_invariant(make_image):
    """Shifting the content by (3, 2) on a larger canvas keeps every central moment."""
    img = make_image(5, 4)
    canvas = np.zeros((10, 12), dtype=np.uint8)
    canvas[2:6, 3:8] = img.array
    shifted = Image(canvas)
    assert shifted.pixel(3, 2) == img.pixel(0, 0)
    original = central_moments(reconstruct_order4(project_all_order4(img)))
    moved = central_moments(reconstruct_order4(project_all_order4(shifted)))
    assert moved == original

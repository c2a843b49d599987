"""Tests for the benchmark harness."""

import importlib
import io
from itertools import count

import pytest

from drt_moments.bench import CSV_HEADER
from drt_moments.bench import REFERENCE_SIZES
from drt_moments.bench import BenchRecord
from drt_moments.bench import bench
from drt_moments.bench import emit_csv
from drt_moments.bench import lcg_bytes
from drt_moments.bench import synthetic_image
from drt_moments.errors import InternalInconsistencyError
from drt_moments.errors import InvalidArgumentError
from drt_moments.instrumented import OpCounts
from drt_moments.model import MomentSet
from drt_moments.pipeline import Method

# The package re-exports the ``bench`` function under the same name as the
# submodule, so fetch the module object explicitly for monkeypatching.
bench_module = importlib.import_module("drt_moments.bench")


def _scalar_lcg(count_, seed):
    state = seed
    values = []
    for _ in range(count_):
        state = (state * 1664525 + 1013904223) & 0xFFFFFFFF
        values.append(state >> 24)
    return values


def _record(method=Method.DRT, min_time=27, median_time=30):
    return BenchRecord(
        width=200,
        height=200,
        method=method,
        order=4,
        repeats=31,
        min_time=min_time,
        median_time=median_time,
        ops=OpCounts(5804, 204410),
    )


@pytest.mark.parametrize("length", [1, 4096, 4097, 10000])
def test_lcg_matches_scalar_recurrence(length):
    """Block jumps reproduce the one-step generator."""
    assert lcg_bytes(length, 20210701).tolist() == _scalar_lcg(length, 20210701)


def test_synthetic_image_is_reproducible():
    """The same seed yields the same pixels; a new seed changes them."""
    first = synthetic_image(17, 5, 7)
    assert (first.width, first.height) == (17, 5)
    assert first.pixels == bytes(_scalar_lcg(85, 7))
    assert synthetic_image(17, 5, 8) != first


def test_synthetic_image_rejects_empty_size():
    """Sizes must be positive."""
    with pytest.raises(InvalidArgumentError):
        synthetic_image(0, 5)


def test_bench_record_invariants():
    """Repeats are positive and the minimum never exceeds the median."""
    with pytest.raises(InvalidArgumentError):
        _record(min_time=31, median_time=30)
    with pytest.raises(InvalidArgumentError):
        BenchRecord(1, 1, Method.NAIVE, 4, 0, 1, 1, OpCounts())


def test_bench_single_repeat_has_equal_min_and_median():
    """One sample is both the minimum and the median."""
    (record,) = bench([(16, 12)], Method.DRT, repeats=1)
    assert record.min_time == record.median_time
    assert (record.width, record.height, record.order, record.repeats) == (16, 12, 4, 1)
    assert record.method is Method.DRT


def test_bench_records_sizes_in_order_with_counts():
    """Each size produces one record carrying the instrumented tallies."""
    records = bench([(8, 6), (5, 9)], Method.NAIVE, repeats=3, r_max=2, seed=3, warmup=2)
    assert [(record.width, record.height) for record in records] == [(8, 6), (5, 9)]
    for record in records:
        assert record.order == 2
        assert record.min_time <= record.median_time
        assert record.ops.multiplications > 0


def test_bench_rejects_zero_repeats():
    """At least one timed run is needed."""
    with pytest.raises(InvalidArgumentError):
        bench([(4, 4)], Method.DRT, repeats=0)


def test_bench_detects_inconsistent_results(monkeypatch):
    """Repeats that disagree abort the benchmark."""
    calls = count()

    def flaky(img, r_max, method):
        return MomentSet(0, {(0, 0): next(calls)})

    monkeypatch.setattr(bench_module, "compute_moments", flaky)
    with pytest.raises(InternalInconsistencyError, match="different moments"):
        bench([(4, 4)], Method.DRT, repeats=2, r_max=0)


@pytest.mark.parametrize("size", [(1000, 1000), (2000, 2000)])
def test_drt_is_faster_than_naive(size):
    """Projection moments beat direct summation at megapixel sizes."""
    (naive,) = bench([size], Method.NAIVE, repeats=3)
    (drt,) = bench([size], Method.DRT, repeats=3)
    assert drt.min_time < naive.min_time


def test_emit_csv_header_only():
    """No records still writes the header."""
    buffer = io.StringIO()
    emit_csv([], buffer)
    assert buffer.getvalue() == ",".join(CSV_HEADER) + "\n"
    assert buffer.getvalue() == "width,height,method,order,repeats,min_us,median_us,mults,adds\n"


def test_emit_csv_one_record():
    """One record gives two lines of plain decimal integers."""
    buffer = io.StringIO()
    emit_csv([_record()], buffer)
    assert buffer.getvalue().splitlines()[1] == "200,200,drt,4,31,27,30,5804,204410"


def test_emit_csv_to_path_with_comments(tmp_path):
    """Comment lines precede the header when writing to a file."""
    destination = tmp_path / "bench.csv"
    emit_csv([_record(Method.NAIVE), _record()], destination, ["seed 1", "numpy"])
    lines = destination.read_text(encoding="utf-8").split("\n")
    assert lines[:3] == ["# seed 1", "# numpy", ",".join(CSV_HEADER)]
    assert [line.split(",")[2] for line in lines[3:5]] == ["naive", "drt"]
    assert lines[-1] == ""


def test_emit_csv_unwritable_destination(tmp_path):
    """Missing directories surface as I/O errors."""
    with pytest.raises(OSError):
        emit_csv([], tmp_path / "missing" / "bench.csv")


def test_reference_sizes():
    """Eight sizes from 4032x3024 down to 200x200."""
    assert len(REFERENCE_SIZES) == 8
    assert REFERENCE_SIZES[0] == (4032, 3024)
    assert REFERENCE_SIZES[-1] == (200, 200)

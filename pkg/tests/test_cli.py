"""Tests for the ``drt-moments`` command line."""

import csv
import io
import json
import re
from types import SimpleNamespace

import pytest

from drt_moments import __version__
from drt_moments import cli
from drt_moments.bench import BenchRecord
from drt_moments.bench import REFERENCE_SIZES
from drt_moments.instrumented import OpCounts
from drt_moments.pgm import write_pgm
from drt_moments.status import ExitCode


@pytest.fixture
def one_pixel_pgm(tmp_path, pixel_5_at_2_3):
    """P5 file holding value 5 at (2, 3)."""
    path = tmp_path / "one_pixel.pgm"
    write_pgm(pixel_5_at_2_3, path)
    return path


@pytest.fixture
def random_pgm(tmp_path, make_image):
    """P2 file with random content."""
    path = tmp_path / "random.pgm"
    write_pgm(make_image(23, 11), path, binary=False)
    return path


def _data_rows(text):
    return [row for row in csv.reader(io.StringIO(text)) if row and not row[0].startswith("#")]


def test_compute_json(one_pixel_pgm, capsys):
    """Default output is a JSON object keyed ``m{p}{q}``."""
    assert cli.main(["compute", str(one_pixel_pgm), "--order", "4"]) == ExitCode.OK
    document = json.loads(capsys.readouterr().out)
    assert document["m40"] == "80"
    assert document["m13"] == "270"
    assert document["m31"] == "120"
    assert document["m22"] == "180"
    assert document["m04"] == "405"


def test_compute_csv_with_central(one_pixel_pgm, capsys):
    """CSV output adds exact central moments on request."""
    code = cli.main(["compute", str(one_pixel_pgm), "--order", "2", "--central", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "p,q,value,central"
    assert lines[1] == "0,0,5,5/1"
    assert lines[4] == "2,0,20,0/1"


@pytest.mark.parametrize("order", ["0", "3", "4", "6"])
@pytest.mark.parametrize("output", ["json", "csv"])
def test_methods_print_identical_bytes(random_pgm, capsys, order, output):
    """Both methods give byte-identical output."""
    printed = []
    for method in ("naive", "drt"):
        args = ["compute", str(random_pgm), "--order", order, "--method", method, "--format", output, "--central"]
        assert cli.main(args) == 0
        printed.append(capsys.readouterr().out)
    assert printed[0] == printed[1]


def test_compute_rejects_order_above_eight(one_pixel_pgm, capsys):
    """Bad flag values exit with status 2."""
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["compute", str(one_pixel_pgm), "--order", "9"])
    assert excinfo.value.code == 2
    assert "order must be ≤ 8" in capsys.readouterr().err


def test_compute_missing_file(tmp_path, capsys):
    """I/O failures exit with status 1."""
    assert cli.main(["compute", str(tmp_path / "absent.pgm")]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_compute_malformed_pgm(tmp_path, capsys):
    """Parse errors exit with status 1 and name the byte offset."""
    path = tmp_path / "bad.pgm"
    path.write_bytes(b"P2\n1 1\n65535\n0\n")
    assert cli.main(["compute", str(path)]) == ExitCode.FAILURE
    err = capsys.readouterr().err
    assert "unsupported maxval" in err
    assert "(at byte 7)" in err
    assert err.count("\n") == 1


def test_compute_central_on_empty_image(tmp_path, capsys):
    """Central moments of a zero image fail cleanly."""
    path = tmp_path / "zero.pgm"
    path.write_bytes(b"P2 2 2 255 0 0 0 0")
    assert cli.main(["compute", str(path), "--central"]) == 1
    assert "zero total mass" in capsys.readouterr().err


def test_bench_to_file(tmp_path):
    """One size gives a naive row and a drt row."""
    out = tmp_path / "bench.csv"
    assert cli.main(["bench", "--sizes", "8x6", "--repeats", "2", "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.startswith(f"# drt-moments {__version__}")
    rows = _data_rows(text)
    assert rows[0] == ["width", "height", "method", "order", "repeats", "min_us", "median_us", "mults", "adds"]
    assert [row[:5] for row in rows[1:]] == [["8", "6", "naive", "4", "2"], ["8", "6", "drt", "4", "2"]]
    assert rows[2][7:] == [str(13 * 8 + 16 * 6 + 4), str(5 * 48 + 11 * 8 + 11 * 6 + 10)]


def test_bench_comment_lines(tmp_path):
    """Comments state the build mode and the naive power-vector products."""
    out = tmp_path / "bench.csv"
    assert cli.main(["bench", "--sizes", "4x3", "--repeats", "1", "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    comments = [line for line in text.splitlines() if line.startswith("#")]
    assert re.search(r"optimized_build=(yes|no);", comments[0])
    assert "# power-vector products 4x3 naive: 21 (not in mults)" in comments
    naive_row = _data_rows(text)[1]
    assert naive_row[2] == "naive"
    assert naive_row[7] == str(14 * 12)
    assert 4 * 12 <= int(naive_row[7]) <= 15 * 12


def test_optimized_build_flag(monkeypatch):
    """``-O`` interpreters report an optimized build."""
    monkeypatch.setattr(cli.sys, "flags", SimpleNamespace(optimize=1))
    assert cli._optimized_build() == "yes"
    monkeypatch.setattr(cli.sys, "flags", SimpleNamespace(optimize=0))
    assert cli._optimized_build() == "no"


def test_bench_to_stdout_with_order(capsys):
    """Without ``--out`` the CSV goes to stdout."""
    assert cli.main(["bench", "--sizes", "5x4,3x3", "--repeats", "1", "--order", "2", "--seed", "9"]) == 0
    rows = _data_rows(capsys.readouterr().out)
    assert len(rows) == 5
    assert {row[3] for row in rows[1:]} == {"2"}


@pytest.mark.parametrize("sizes", ["0x5", "200", "10x"])
def test_bench_rejects_bad_sizes(sizes, capsys):
    """Malformed size tokens are usage errors."""
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["bench", "--sizes", sizes])
    assert excinfo.value.code == 2


def test_bench_defaults_cover_reference_sizes(monkeypatch, capsys):
    """The default run times both methods at eight sizes."""
    calls = []

    def fake_bench(sizes, method, repeats, r_max, *, seed, warmup):
        calls.append((tuple(sizes), method, repeats, r_max))
        return [BenchRecord(w, h, method, r_max, repeats, 1, 2, OpCounts(3, 4)) for w, h in sizes]

    monkeypatch.setattr(cli, "bench", fake_bench)
    assert cli.main(["bench"]) == 0
    rows = _data_rows(capsys.readouterr().out)
    assert len(rows) == 1 + 16
    assert [tuple(map(int, row[:2])) for row in rows[1::2]] == list(REFERENCE_SIZES)
    assert {call[2] for call in calls} == {31}


def test_bench_config_file(tmp_path, monkeypatch, capsys):
    """Settings come from ``--config`` and flags override them."""
    config = tmp_path / "bench.json"
    config.write_text(json.dumps({"sizes": ["4x4", "6x2"], "repeats": 7}), encoding="utf-8")
    seen = []

    def fake_bench(sizes, method, repeats, r_max, *, seed, warmup):
        seen.append((tuple(sizes), repeats, r_max))
        return [BenchRecord(w, h, method, r_max, repeats, 1, 1, OpCounts()) for w, h in sizes]

    monkeypatch.setattr(cli, "bench", fake_bench)
    assert cli.main(["bench", "--config", str(config), "--order", "3"]) == 0
    assert seen[0] == (((4, 4),), 7, 3)
    assert len(_data_rows(capsys.readouterr().out)) == 5


def test_bench_invalid_config(tmp_path, capsys):
    """Invalid settings exit with status 2."""
    config = tmp_path / "bench.json"
    config.write_text(json.dumps({"repeats": 0}), encoding="utf-8")
    assert cli.main(["bench", "--config", str(config)]) == ExitCode.USAGE
    assert "invalid benchmark settings" in capsys.readouterr().err


def test_bench_unwritable_destination(tmp_path, capsys):
    """Output I/O errors exit with status 1."""
    out = tmp_path / "missing" / "bench.csv"
    assert cli.main(["bench", "--sizes", "2x2", "--repeats", "1", "--out", str(out)]) == 1


def test_version_flag(capsys):
    """``--version`` prints the package version."""
    with pytest.raises(SystemExit) as excinfo:
        cli.main(["--version"])
    assert excinfo.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_command_is_required(capsys):
    """Running without a subcommand is a usage error."""
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 2

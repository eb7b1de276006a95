"""End-to-end tests for the logzeta command line."""

from __future__ import annotations

import csv
import io
import logging
import warnings
from pathlib import Path

import pytest

from logzeta.arithmetic import build_mangoldt
from logzeta.cli import EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_OK, run
from logzeta.config import parse_grid
from logzeta.errors import DomainError, NonConvergenceError
from logzeta.io_utils import SCAN_HEADER, format_real
from logzeta.logderiv import scan_over_n_cut
from logzeta.logging_setup import setup_logging
from logzeta.types import BoundParameters, PrecisionConfig

ENV_NAMES = (
    "LOGZETA_MAX_TABLE",
    "LOGZETA_EM_CUTOFF",
    "LOGZETA_BERNOULLI_ORDER",
    "LOGZETA_CAUCHY_POINTS",
    "LOGZETA_CAUCHY_RADIUS",
    "LOGZETA_QUAD_REL_TOL",
    "LOGZETA_DELTA",
    "LOGZETA_DELTA0",
    "LOGZETA_CONSTANT_C",
    "LOGZETA_WORKERS",
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)
    # keep a stray .env in the working directory out of the run
    monkeypatch.chdir(tmp_path)


def read_rows(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def test_approx_writes_one_scan_row(capsys):
    assert run(["approx", "--n", "1", "--a", "2", "--N", "10000"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)
    assert tuple(rows[0]) == SCAN_HEADER
    assert len(rows) == 2
    assert rows[1][0] == "10000"
    assert abs(float(rows[1][1]) - (-0.5699610)) < 2e-3
    assert rows[1][2] == "0"


def test_out_file_is_deterministic(tmp_path: Path, capsys):
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    argv = ["scan-n", "--n", "2", "--a", "0.8", "--a-im", "3", "--grid-log", "10:10000:5"]
    assert run([*argv, "--out", str(first)]) == EXIT_OK
    assert run([*argv, "--out", str(second)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert first.read_bytes() == second.read_bytes()
    assert len(read_rows(first.read_text())) == 6


def test_scan_a_output_does_not_depend_on_workers(tmp_path: Path):
    serial, pooled = tmp_path / "serial.csv", tmp_path / "pooled.csv"
    argv = ["scan-a", "--n", "2", "--N", "10000", "--grid", "0.55:0.95:9"]
    assert run([*argv, "--workers", "1", "--out", str(serial)]) == EXIT_OK
    assert run([*argv, "--workers", "4", "--out", str(pooled)]) == EXIT_OK
    assert serial.read_bytes() == pooled.read_bytes()
    assert len(read_rows(serial.read_text())) == 10


def test_scan_a_singleton_and_empty_grid(capsys):
    assert run(["scan-a", "--N", "1000", "--grid", "0.75:0.75:1"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)
    assert len(rows) == 2
    assert float(rows[1][0]) == 0.75

    assert run(["scan-a", "--N", "1000", "--grid", "0.6:0.9:0"]) == EXIT_OK
    assert read_rows(capsys.readouterr().out) == [list(SCAN_HEADER)]


def test_domain_error_exits_with_one(capsys):
    assert run(["approx", "--a", "0.4", "--N", "100"]) == EXIT_DOMAIN
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "Invalid input" in captured.err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["approx", "--n", "two"],
        ["frobnicate"],
        ["scan-n", "--grid", "1:2:3", "--grid-log", "1:2:3"],
        ["approx", "--a", "1", "--N", "100"],
        ["scan-a", "--N", "100", "--grid", "0.4:0.8:5"],
        ["scan-n", "--a", "0.8", "--grid", "10:100"],
        ["oscillation", "--t", "0", "--grid", "10:100:2"],
        ["mangoldt"],
        ["identities", "--a-list", ","],
        ["scan-n", "--n", "2", "--a", "0.8", "--grid-log", "1:1000:4"],
        ["approx", "--n", "3", "--a", "0.75", "--N", "1"],
        ["eta", "--n", "2", "--grid", "1:10:2"],
    ],
)
def test_invalid_command_lines_exit_with_one(argv, capsys):
    assert run(argv) == EXIT_DOMAIN
    assert capsys.readouterr().out == ""


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK
    assert "approx" in capsys.readouterr().out


def test_unwritable_output_exits_with_one(tmp_path: Path):
    target = tmp_path / "missing" / "out.csv"
    assert run(["approx", "--a", "2", "--N", "100", "--out", str(target)]) == EXIT_DOMAIN
    assert not target.exists()


def test_numerical_failure_exits_with_two(monkeypatch, tmp_path: Path):
    def failing_report(*args, **kwargs):
        raise NonConvergenceError("Cauchy refinement exhausted")

    monkeypatch.setattr("logzeta.cli.residual_report", failing_report)
    target = tmp_path / "out.csv"
    assert run(["approx", "--a", "0.75", "--N", "100", "--out", str(target)]) == EXIT_NUMERICAL
    assert not target.exists()


def test_table_ceiling_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("LOGZETA_MAX_TABLE", "1000")
    assert run(["approx", "--a", "0.75", "--N", "5000"]) == EXIT_DOMAIN
    assert "LOGZETA_MAX_TABLE" in capsys.readouterr().err


def test_malformed_environment_value(monkeypatch):
    monkeypatch.setenv("LOGZETA_CAUCHY_POINTS", "many")
    assert run(["identities", "--a-list", "2"]) == EXIT_DOMAIN


def test_mangoldt_lists_prime_powers(capsys):
    assert run(["mangoldt", "--nmax", "100"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)
    assert rows[0] == ["m", "lambda", "chebyshev_psi"]
    assert len(rows) == 36
    assert [row[0] for row in rows[1:4]] == ["2", "3", "4"]
    psi = [float(row[2]) for row in rows[1:]]
    assert psi == sorted(psi)


def test_li_sides_agree_above_the_strip(capsys):
    assert run(["li", "--n", "2", "--a", "3", "--N", "100000"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)
    assert rows[0][-1] == "gap_abs"
    assert [row[0] for row in rows[1:]] == ["1", "2"]
    assert all(float(row[-1]) < 1e-6 for row in rows[1:])


def test_identities_report(capsys):
    assert run(["identities", "--n", "2", "--a-list", "2"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)
    by_name = {(row[0], row[1]): float(row[-1]) for row in rows[1:]}
    assert len(rows) == 1 + 2 * 6
    for order in ("1", "2"):
        assert by_name[("gamma_term", order)] < 1e-8
        assert by_name[("pole_term", order)] < 1e-8
        assert by_name[("mellin", order)] < 1e-8
        assert by_name[("li_decomposed", order)] < 1e-8
    assert by_name[("pole_term_printed", "2")] > 1e-3


def test_identities_include_integrals_in_the_strip(capsys):
    assert run(["identities", "--n", "2", "--a-list", "0.7", "--N", "1000"]) == EXIT_OK
    names = {row[0] for row in read_rows(capsys.readouterr().out)[1:]}
    assert {"integral", "integral_printed"} <= names


def test_eta_and_oscillation_grids(capsys):
    assert run(["eta", "--n", "1", "--grid-log", "10:1000:3"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)
    assert rows[0] == ["n", "N", "eta"]
    assert [row[1] for row in rows[1:]] == ["10", "100", "1000"]

    assert run(["oscillation", "--t", "2", "--grid-log", "10:1000:3"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)
    assert rows[0] == ["t", "N", "value_re", "value_im", "value_abs"]
    assert len(rows) == 4


def test_csv_values_round_trip_exactly(capsys):
    assert run(["scan-n", "--n", "1", "--a", "0.8", "--grid-log", "10:10000:4"]) == EXIT_OK
    rows = read_rows(capsys.readouterr().out)[1:]
    series = scan_over_n_cut(
        build_mangoldt(10_000),
        1,
        0.8,
        [10, 100, 1_000, 10_000],
        BoundParameters(),
        PrecisionConfig(),
    )
    for row, report in zip(rows, series.entries, strict=True):
        assert int(row[0]) == report.cutoff
        assert float(row[1]) == report.approximation.real
        assert float(row[3]) == report.reference.real
        assert float(row[5]) == report.residual_abs


def test_verbose_keeps_stdout_pure_csv(capsys):
    assert run(["approx", "--a", "2", "--N", "1000", "--verbose"]) == EXIT_OK
    captured = capsys.readouterr()
    assert read_rows(captured.out)[0] == list(SCAN_HEADER)
    assert "Running approx" in captured.err


def test_format_real_drops_the_sign_of_zero():
    assert format_real(-0.0) == "0"
    assert format_real(0.0) == "0"
    assert format_real(-1.5) == "-1.5"
    assert float(format_real(0.1)) == 0.1


def test_setup_logging_routes_library_warnings(monkeypatch):
    stream = io.StringIO()
    monkeypatch.setattr(warnings, "showwarning", warnings.showwarning)
    # earlier runs in this process may have left a stale capture behind
    logging.captureWarnings(False)
    setup_logging(verbose=False, stream=stream)
    try:
        logging.getLogger("logzeta.special").info("hidden below WARNING")
        warnings.showwarning(RuntimeWarning("roundoff in quadrature"), RuntimeWarning, "quad.py", 1)
    finally:
        logging.captureWarnings(False)
    text = stream.getvalue()
    assert "py.warnings" in text
    assert "roundoff in quadrature" in text
    assert "hidden below WARNING" not in text


def test_parse_grid():
    assert parse_grid("0.5:1.0:3") == (0.5, 0.75, 1.0)
    assert parse_grid("1:4:4", integer=True) == (1.0, 2.0, 3.0, 4.0)
    assert parse_grid("1:3:10", logarithmic=True, integer=True) == (1.0, 2.0, 3.0)
    assert parse_grid("0.6:0.9:0") == ()
    with pytest.raises(DomainError):
        parse_grid("1:2")
    with pytest.raises(DomainError):
        parse_grid("0:10:3", logarithmic=True)
    with pytest.raises(DomainError):
        parse_grid("5:1:3")

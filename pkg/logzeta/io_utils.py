"""CSV emission and output-path handling."""

from __future__ import annotations

import csv
import logging
import sys
from collections.abc import Iterable, Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

from .types import ApproxReport, ScanSeries

logger = logging.getLogger(__name__)

SCAN_HEADER = (
    "x_axis", "approx_re", "approx_im", "ref_re", "ref_im", "residual_abs", "bound", "ratio"
)

Cell = str | int | float


def format_real(value: float) -> str:
    """Render a real with 17 significant digits, enough to round-trip a double.

    Negative zero is written as 0.
    """
    return format(float(value) + 0.0, ".17g")


def _cell(value: Cell) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format_real(value)


def write_table(header: Sequence[str], rows: Iterable[Sequence[Cell]], out: TextIO) -> int:
    """Write a header row and data rows as CSV.

    Ints are written as integers, floats with 17 significant digits.

    Returns:
        Number of data rows written
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([_cell(value) for value in row])
        count += 1
    return count


def _scan_row(report: ApproxReport, x_value: Cell) -> list[Cell]:
    return [
        x_value,
        report.approximation.real,
        report.approximation.imag,
        report.reference.real,
        report.reference.imag,
        report.residual_abs,
        report.bound,
        report.ratio,
    ]


def emit_csv(series: ScanSeries | Sequence[ApproxReport], out: TextIO) -> int:
    """Write reports in the scan schema.

    For a series in a the x column is Re a; for a series in N, or a bare
    sequence of reports, it is the cutoff N.

    Returns:
        Number of data rows written
    """
    if isinstance(series, ScanSeries) and series.axis == "grid-in-a":
        rows = [_scan_row(report, report.point.real) for report in series.entries]
    else:
        reports = series.entries if isinstance(series, ScanSeries) else series
        rows = [_scan_row(report, report.cutoff) for report in reports]
    return write_table(SCAN_HEADER, rows, out)


@contextmanager
def open_output(out_path: Path | None) -> Iterator[TextIO]:
    """Yield a text stream for CSV: the file at out_path, or standard output.

    Raises:
        OSError: If the file cannot be opened for writing
    """
    if out_path is None:
        yield sys.stdout
        sys.stdout.flush()
        return

    with open(out_path, "w", encoding="utf-8", newline="") as handle:
        yield handle
    logger.info(f"Wrote {out_path}")

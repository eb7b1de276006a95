"""Command-line interface for logzeta."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import partial
from typing import NoReturn, TextIO

from . import __version__
from .arithmetic import (
    CompensatedSum,
    build_mangoldt,
    compensating_integral,
    compensating_integral_printed,
    compensating_integral_quadrature,
)
from .config import RunConfig, load_config
from .errors import DomainError, NumericalError
from .io_utils import emit_csv, open_output, write_table
from .li import (
    gamma_term_closed_form,
    gamma_term_printed,
    gamma_term_value,
    li_sum_arithmetic_side,
    li_sum_decomposed,
    li_sum_derivative_side,
    mellin_consistency,
    pole_term_oracle,
    pole_term_printed,
    pole_term_value,
)
from .logderiv import eta_scan, line_one_oscillation, residual_report, scan_over_a, scan_over_n_cut
from .logging_setup import setup_logging
from .types import MangoldtTable

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_NUMERICAL = 2

MELLIN_TEST_POINT = 2.0


class UsageError(Exception):
    """Raised instead of exiting when the command line cannot be parsed."""
    pass


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError so run() can map it to an exit code."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class CommandOutput:
    """Computed result of a subcommand, written only after it fully succeeded."""

    write: Callable[[TextIO], int]
    summary: str


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    experiment = parser.add_argument_group("experiment")
    experiment.add_argument(
        "--n",
        type=int,
        default=1,
        help="Derivative order or Li index (default: 1)"
    )
    experiment.add_argument(
        "--a",
        type=float,
        default=None,
        help="Real part of the point a"
    )
    experiment.add_argument(
        "--a-im",
        type=float,
        default=None,
        help="Imaginary part of the point a (default: 0)"
    )
    experiment.add_argument(
        "--a-list",
        type=str,
        default=None,
        help="Comma-separated points for identities (default: 0.7,0.9,2)"
    )
    experiment.add_argument(
        "--N",
        type=int,
        default=None,
        help="Truncation cutoff N (default: 1000000)"
    )
    experiment.add_argument(
        "--nmax",
        type=int,
        default=None,
        help="Table size for the mangoldt listing"
    )
    experiment.add_argument(
        "--t",
        type=float,
        default=1.0,
        help="Height t on the line Re s = 1 (default: 1)"
    )

    grid = experiment.add_mutually_exclusive_group()
    grid.add_argument(
        "--grid",
        type=str,
        default=None,
        help="Linear grid start:stop:points"
    )
    grid.add_argument(
        "--grid-log",
        type=str,
        default=None,
        help="Geometric grid start:stop:points, rounded to integers"
    )

    bounds = parser.add_argument_group("error-bound model")
    bounds.add_argument(
        "--delta",
        type=float,
        default=None,
        help="Zero-free width (default: 0)"
    )
    bounds.add_argument(
        "--delta0",
        type=float,
        default=None,
        help="Margin above the zero-free width (default: 0.001)"
    )
    bounds.add_argument(
        "--C",
        type=float,
        default=None,
        help="Bound constant (default: 1)"
    )

    precision = parser.add_argument_group("precision")
    precision.add_argument(
        "--em-cutoff",
        type=int,
        default=None,
        help="Euler-Maclaurin main-sum length (default: 20)"
    )
    precision.add_argument(
        "--bernoulli-order",
        type=int,
        default=None,
        help="Bernoulli correction terms (default: 10)"
    )
    precision.add_argument(
        "--cauchy-points",
        type=int,
        default=None,
        help="Cauchy oracle nodes (default: 64)"
    )
    precision.add_argument(
        "--cauchy-radius",
        type=float,
        default=None,
        help="Cauchy oracle radius (default: 0.25)"
    )
    precision.add_argument(
        "--quad-rel-tol",
        type=float,
        default=None,
        help="Quadrature relative tolerance (default: 1e-10)"
    )

    run_options = parser.add_argument_group("run")
    run_options.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Threads for scans in a (default: 1)"
    )
    run_options.add_argument(
        "--out",
        type=str,
        default=None,
        help="CSV output path (default: standard output)"
    )
    run_options.add_argument(
        "--verbose",
        action="store_true",
        help="Enable verbose logging and progress bars"
    )


def create_parser() -> ArgumentParser:
    """Create the command-line argument parser.

    Returns:
        Configured ArgumentParser instance
    """
    parser = ArgumentParser(
        prog="logzeta",
        description="Approximate derivatives of ln zeta(s) from von Mangoldt sums and check them",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m logzeta approx --n 1 --a 2 --N 10000
  python -m logzeta scan-a --n 1 --N 1000000 --grid 0.5005:0.75:100 --delta 0
  python -m logzeta scan-n --n 1 --a 0.55 --grid-log 100:1000000:50 --out scan.csv
  python -m logzeta li --n 3 --a 3 --N 1000000
  python -m logzeta identities --n 5 --a-list 0.7,0.9,2
  python -m logzeta eta --n 2 --grid-log 10:1000000:6
  python -m logzeta oscillation --t 2 --grid-log 10:1000000:6

Environment Variables:
  LOGZETA_MAX_TABLE         Largest von Mangoldt table (default: 100000000)
  LOGZETA_EM_CUTOFF         Euler-Maclaurin main-sum length (default: 20)
  LOGZETA_BERNOULLI_ORDER   Bernoulli correction terms (default: 10)
  LOGZETA_CAUCHY_POINTS     Cauchy oracle nodes (default: 64)
  LOGZETA_CAUCHY_RADIUS     Cauchy oracle radius (default: 0.25)
  LOGZETA_QUAD_REL_TOL      Quadrature relative tolerance (default: 1e-10)
  LOGZETA_DELTA             Zero-free width (default: 0)
  LOGZETA_DELTA0            Margin (default: 0.001)
  LOGZETA_CONSTANT_C        Bound constant (default: 1)
  LOGZETA_WORKERS           Scan threads (default: 1)

For more information, see the README.md file.
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, help_text in (
        ("mangoldt", "List Lambda(m) and Chebyshev psi for prime powers up to --nmax"),
        ("approx", "One approximation report at (--n, --a, --N)"),
        ("scan-a", "Residual reports over a grid in a at fixed --N"),
        ("scan-n", "Residual reports over a grid of cutoffs at fixed --a"),
        ("li", "Arithmetic and derivative sides of the Li sum for orders 1..--n"),
        ("identities", "Closed forms against their numerical oracles"),
        ("eta", "Finite-N eta coefficients over a grid of cutoffs"),
        ("oscillation", "Oscillation combination on Re s = 1 over a grid of cutoffs"),
    ):
        _add_common_arguments(subparsers.add_parser(name, help=help_text, description=help_text))

    return parser


def _table(config: RunConfig) -> MangoldtTable:
    return build_mangoldt(config.table_limit, ceiling=config.max_table)


def _run_mangoldt(config: RunConfig) -> CommandOutput:
    nmax = config.nmax or 0
    table = build_mangoldt(nmax, ceiling=config.max_table)
    psi = CompensatedSum()
    rows = []
    for m in table.support.tolist():
        psi.add(table[m])
        rows.append((m, table[m], psi.value))
    return CommandOutput(
        write=partial(write_table, ("m", "lambda", "chebyshev_psi"), rows),
        summary=f"mangoldt: {len(rows)} prime powers up to {nmax}, psi({nmax}) = {psi.value:.10g}",
    )


def _run_approx(config: RunConfig) -> CommandOutput:
    assert config.a is not None
    table = _table(config)
    report = residual_report(
        table, config.n, config.a, config.big_n, config.bounds, config.precision
    )
    return CommandOutput(
        write=partial(emit_csv, [report]),
        summary=(
            f"approx: n={config.n} a={config.a} N={config.big_n} "
            f"approximation={report.approximation:.10g} reference={report.reference:.10g} "
            f"ratio={report.ratio:.3g}"
        ),
    )


def _run_scan_a(config: RunConfig) -> CommandOutput:
    table = _table(config)
    series = scan_over_a(
        table,
        config.n,
        config.grid or (),
        config.big_n,
        config.bounds,
        config.precision,
        workers=config.workers,
        progress=config.verbose,
    )
    worst = max((r.ratio for r in series.entries), default=0.0)
    return CommandOutput(
        write=partial(emit_csv, series),
        summary=(
            f"scan-a: {len(series)} points at n={config.n}, N={config.big_n}, "
            f"max ratio {worst:.3g}"
        ),
    )


def _run_scan_n(config: RunConfig) -> CommandOutput:
    assert config.a is not None
    table = _table(config)
    series = scan_over_n_cut(
        table, config.n, config.a, config.cutoffs, config.bounds, config.precision
    )
    last = series.entries[-1] if series.entries else None
    tail = f", final residual {last.residual_abs:.3g} vs bound {last.bound:.3g}" if last else ""
    return CommandOutput(
        write=partial(emit_csv, series),
        summary=f"scan-n: {len(series)} cutoffs at n={config.n}, a={config.a}{tail}",
    )


def _run_li(config: RunConfig) -> CommandOutput:
    assert config.a is not None
    table = _table(config)
    a = config.a
    rows = []
    for order in range(1, config.n + 1):
        arithmetic = li_sum_arithmetic_side(table, order, a, config.big_n, config.precision)
        derivative = li_sum_derivative_side(order, a, config.precision)
        rows.append((
            order, a.real, a.imag, config.big_n,
            arithmetic.real, arithmetic.imag, derivative.real, derivative.imag,
            abs(arithmetic - derivative),
        ))
    header = (
        "n", "a_re", "a_im", "N",
        "arithmetic_re", "arithmetic_im", "derivative_re", "derivative_im", "gap_abs",
    )
    worst = max((float(row[-1]) for row in rows), default=0.0)
    return CommandOutput(
        write=partial(write_table, header, rows),
        summary=f"li: orders 1..{config.n} at a={a}, N={config.big_n}, max gap {worst:.3g}",
    )


def _identity_checks(
    config: RunConfig, order: int, a: complex
) -> list[tuple[str, complex, complex]]:
    cfg = config.precision
    checks = []
    if a.real < 1.0:
        quadrature = compensating_integral_quadrature(a, order, config.big_n, cfg)
        closed = compensating_integral(a, order, config.big_n)
        printed = compensating_integral_printed(a, order, config.big_n)
        checks.append(("integral", closed, quadrature))
        checks.append(("integral_printed", printed, quadrature))
    gamma_oracle = gamma_term_value(order, a, cfg)
    checks.append(("gamma_term", gamma_term_closed_form(order, a, cfg), gamma_oracle))
    checks.append(("gamma_term_printed", gamma_term_printed(order, a, cfg), gamma_oracle))
    pole_oracle = pole_term_oracle(order, a, cfg)
    checks.append(("pole_term", pole_term_value(order, a), pole_oracle))
    checks.append(("pole_term_printed", pole_term_printed(order, a), pole_oracle))
    kernel, transform = mellin_consistency(order, a, MELLIN_TEST_POINT, cfg)
    checks.append(("mellin", kernel, transform))
    direct = li_sum_derivative_side(order, a, cfg)
    checks.append(("li_decomposed", li_sum_decomposed(order, a, cfg), direct))
    return checks


def _run_identities(config: RunConfig) -> CommandOutput:
    rows = []
    for a in config.a_list:
        for order in range(1, config.n + 1):
            for name, value, oracle in _identity_checks(config, order, a):
                rows.append((
                    name, order, a.real, a.imag,
                    value.real, value.imag, oracle.real, oracle.imag, abs(value - oracle),
                ))
    header = (
        "identity", "n", "a_re", "a_im",
        "value_re", "value_im", "oracle_re", "oracle_im", "gap_abs",
    )
    return CommandOutput(
        write=partial(write_table, header, rows),
        summary=(
            f"identities: {len(rows)} checks over {len(config.a_list)} point(s), "
            f"orders 1..{config.n}"
        ),
    )


def _run_eta(config: RunConfig) -> CommandOutput:
    table = _table(config)
    values = eta_scan(table, config.n, config.cutoffs)
    rows = [(config.n, big_n, eta) for big_n, eta in values]
    last = f", last value {rows[-1][2]:.10g}" if rows else ""
    return CommandOutput(
        write=partial(write_table, ("n", "N", "eta"), rows),
        summary=f"eta: n={config.n}, {len(rows)} cutoffs{last}",
    )


def _run_oscillation(config: RunConfig) -> CommandOutput:
    table = _table(config)
    rows = []
    for big_n in config.cutoffs:
        value = line_one_oscillation(table, config.t, big_n, config.precision)
        rows.append((config.t, big_n, value.real, value.imag, abs(value)))
    last = f", last |value| {rows[-1][4]:.3g}" if rows else ""
    return CommandOutput(
        write=partial(write_table, ("t", "N", "value_re", "value_im", "value_abs"), rows),
        summary=f"oscillation: t={config.t}, {len(rows)} cutoffs{last}",
    )


COMMANDS: dict[str, Callable[[RunConfig], CommandOutput]] = {
    "mangoldt": _run_mangoldt,
    "approx": _run_approx,
    "scan-a": _run_scan_a,
    "scan-n": _run_scan_n,
    "li": _run_li,
    "identities": _run_identities,
    "eta": _run_eta,
    "oscillation": _run_oscillation,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand and write its CSV.

    Returns:
        0 on success, 1 on usage, domain or output-path errors, 2 on numerical failure
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"{e}\n{parser.format_usage()}", file=sys.stderr, end="")
        return EXIT_DOMAIN
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    setup_logging(verbose=args.verbose, stream=sys.stderr)

    try:
        config = load_config(args)
        logger.info(f"Running {config.subcommand} (table limit {config.table_limit})")
        output = COMMANDS[config.subcommand](config)
        with open_output(config.out_path) as out:
            output.write(out)
        print(output.summary, file=sys.stderr)
        return EXIT_OK

    except DomainError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_DOMAIN

    except OSError as e:
        logger.error(f"Cannot write output: {e}")
        return EXIT_DOMAIN

    except NumericalError as e:
        logger.error(f"Numerical failure: {e}")
        return EXIT_NUMERICAL

    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return EXIT_NUMERICAL


def main() -> None:
    """Main entry point for the CLI application."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

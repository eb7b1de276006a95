"""Truncated approximations of the derivatives of ln zeta and their experiments.

Covers the strip and convergent-regime approximation, residual reports against
the Euler-Maclaurin reference, scans over a and over the cutoff N, the eta
coefficients at s = 1 and the oscillation check on the line Re s = 1.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import TypeVar

from scipy import special as sp
from tqdm import tqdm

from .arithmetic import (
    compensating_integral,
    lambda_weighted_prefix_sums,
    lambda_weighted_range,
    lambda_weighted_sum,
)
from .errors import DomainError, OutOfRangeError, PoleError
from .special import DEFAULT_PRECISION, log_zeta_derivatives
from .types import ApproxReport, BoundParameters, MangoldtTable, PrecisionConfig, ScanSeries

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

LARGE_TABLE = 10_000_000


def _check_point(n: int, a: complex) -> complex:
    a = complex(a)
    if n < 1:
        raise DomainError(f"derivative order n must be >= 1, got {n}")
    if a == 1:
        raise PoleError("ln zeta has a pole at a = 1")
    if a.real <= 0.5:
        raise DomainError(f"approximation needs Re a > 1/2, got a = {a}")
    if a.real == 1.0:
        raise DomainError(
            f"Re a = 1 belongs to neither the strip nor the convergent regime, got a = {a}"
        )
    return a


def approx_log_derivative(table: MangoldtTable, n: int, a: complex, big_n: int) -> complex:
    """Approximate the n-th derivative of ln zeta at a from the table up to N.

    In the strip 1/2 < Re a < 1 this is (-1)**n (S - I), where S is the
    weighted von Mangoldt sum and I the compensating integral. For Re a > 1
    the series converges and the integral term is dropped.

    Args:
        table: Von Mangoldt table with limit >= N
        n: Derivative order
        a: Evaluation point
        big_n: Truncation N

    Returns:
        Complex approximation

    Raises:
        PoleError: If a == 1
        DomainError: If Re a <= 1/2 or Re a == 1
        OutOfRangeError: If N exceeds the table
    """
    a = _check_point(n, a)
    total = lambda_weighted_sum(table, a, n, big_n)
    if a.real < 1.0:
        total -= compensating_integral(a, n, big_n)
    return (-1) ** n * total


def _report(
    n: int, a: complex, big_n: int, approximation: complex, reference: complex, bp: BoundParameters
) -> ApproxReport:
    bound = bp.bound(n, a, big_n)
    if bound <= 0.0:
        raise DomainError(f"bound is zero at N = {big_n} for n = {n}; use N >= 2")
    residual = abs(approximation - reference)
    return ApproxReport(
        order=n,
        point=a,
        cutoff=big_n,
        approximation=approximation,
        reference=reference,
        residual_abs=residual,
        bound=bound,
        ratio=residual / bound,
    )


def residual_report(
    table: MangoldtTable,
    n: int,
    a: complex,
    big_n: int,
    bp: BoundParameters,
    cfg: PrecisionConfig = DEFAULT_PRECISION,
) -> ApproxReport:
    """Compare the approximation at (n, a, N) with the Euler-Maclaurin reference."""
    approximation = approx_log_derivative(table, n, a, big_n)
    reference = log_zeta_derivatives(a, n, cfg)[n - 1]
    return _report(n, complex(a), big_n, approximation, reference, bp)


def _evaluate_in_order(
    func: Callable[[T], R], items: Sequence[T], workers: int, desc: str, progress: bool
) -> list[R]:
    """Run func over items on a thread pool, keeping the input order."""
    results: list[R | None] = [None] * len(items)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        future_to_index = {executor.submit(func, item): i for i, item in enumerate(items)}
        with tqdm(total=len(items), desc=desc, disable=not progress) as pbar:
            for future in as_completed(future_to_index):
                index = future_to_index[future]
                results[index] = future.result()
                pbar.update(1)
    return [result for result in results if result is not None]


def _warn_uncovered(points: Sequence[complex], bp: BoundParameters) -> None:
    outside = [p for p in points if p.real < 1.0 and not bp.covers(p)]
    if outside:
        logger.warning(
            f"{len(outside)} grid point(s) lie below Re a = {0.5 + bp.delta + bp.delta0:g}, "
            f"outside the assumed zero-free region; the bound is not claimed there"
        )


def scan_over_a(
    table: MangoldtTable,
    n: int,
    a_grid: Sequence[float],
    big_n: int,
    bp: BoundParameters,
    cfg: PrecisionConfig = DEFAULT_PRECISION,
    workers: int = 1,
    progress: bool = False,
) -> ScanSeries:
    """Residual reports at fixed N over an increasing grid of real a.

    Every grid point is validated before any evaluation starts. Points are
    evaluated concurrently on ``workers`` threads; the series keeps grid order.

    Raises:
        DomainError: If any grid point is outside the validity domain or the grid is not increasing
    """
    points = [_check_point(n, a) for a in a_grid]
    if any(p.real >= q.real for p, q in zip(points, points[1:])):
        raise DomainError("grid in a must be strictly increasing")
    if big_n > table.limit:
        raise OutOfRangeError(f"cutoff {big_n} exceeds the table limit {table.limit}")
    if not points:
        return ScanSeries(axis="grid-in-a")

    _warn_uncovered(points, bp)
    if workers > 1 and table.limit > LARGE_TABLE:
        logger.warning(
            f"Using {workers} workers on a table of {table.limit} entries; "
            f"each worker holds its own term array"
        )

    logger.info(f"Scanning {len(points)} points in a at n={n}, N={big_n}")
    reports = _evaluate_in_order(
        lambda a: residual_report(table, n, a, big_n, bp, cfg),
        points,
        workers,
        desc="Scanning a",
        progress=progress,
    )
    logger.info(f"Scan over a finished: {len(reports)} reports")
    return ScanSeries(axis="grid-in-a", entries=tuple(reports))


def scan_over_n_cut(
    table: MangoldtTable,
    n: int,
    a: complex,
    n_grid: Sequence[int],
    bp: BoundParameters,
    cfg: PrecisionConfig = DEFAULT_PRECISION,
) -> ScanSeries:
    """Residual reports at fixed a over an increasing grid of cutoffs N.

    The reference is computed once and the weighted sums come from a single
    prefix-sum pass over the table.
    """
    a = _check_point(n, a)
    cutoffs = [int(big_n) for big_n in n_grid]
    if any(c < 1 for c in cutoffs):
        raise DomainError("cutoffs must be >= 1")
    if any(c1 >= c2 for c1, c2 in zip(cutoffs, cutoffs[1:])):
        raise DomainError("grid in N must be strictly increasing")
    if not cutoffs:
        return ScanSeries(axis="grid-in-N")
    if cutoffs[-1] > table.limit:
        raise OutOfRangeError(f"cutoff {cutoffs[-1]} exceeds the table limit {table.limit}")
    _warn_uncovered([a], bp)

    logger.info(f"Scanning {len(cutoffs)} cutoffs at n={n}, a={a}")
    reference = log_zeta_derivatives(a, n, cfg)[n - 1]
    sums = lambda_weighted_prefix_sums(table, a, n, cutoffs)
    reports = []
    for big_n, total in zip(cutoffs, sums):
        if a.real < 1.0:
            total -= compensating_integral(a, n, big_n)
        reports.append(_report(n, a, big_n, (-1) ** n * total, reference, bp))
    return ScanSeries(axis="grid-in-N", entries=tuple(reports))


def eta_coefficient(table: MangoldtTable, n: int, big_n: int) -> float:
    """Finite-N eta value (-1)**n [sum Lambda(m) ln(m)**(n-1)/m - ln(N)**n / n].

    Tends to the n-th derivative of ln((s-1) zeta(s)) at s = 1.
    """
    if n < 1:
        raise DomainError(f"order n must be >= 1, got {n}")
    total = lambda_weighted_sum(table, 1.0, n, big_n).real
    return (-1) ** n * (total - math.log(big_n) ** n / n)


def eta_scan(table: MangoldtTable, n: int, n_grid: Sequence[int]) -> list[tuple[int, float]]:
    """eta_coefficient over an increasing grid of cutoffs, from one prefix-sum pass."""
    if n < 1:
        raise DomainError(f"order n must be >= 1, got {n}")
    cutoffs = [int(big_n) for big_n in n_grid]
    if any(c < 1 for c in cutoffs):
        raise DomainError("cutoffs must be >= 1")
    sums = lambda_weighted_prefix_sums(table, 1.0, n, cutoffs)
    return [
        (big_n, (-1) ** n * (total.real - math.log(big_n) ** n / n))
        for big_n, total in zip(cutoffs, sums)
    ]


def line_one_oscillation(
    table: MangoldtTable, t: float, big_n: int, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> complex:
    """Sum Lambda(m)/m**(1+it) over m <= N, plus zeta'/zeta(1+it), minus i N**(-it)/t.

    The combination is o(1) as N grows.

    Raises:
        DomainError: If t == 0
    """
    if t == 0:
        raise DomainError("t must be nonzero on the line Re s = 1")
    s = complex(1.0, t)
    total = lambda_weighted_sum(table, s, 1, big_n)
    reference = log_zeta_derivatives(s, 1, cfg)[0]
    return total + reference - 1j * cmath.exp(-1j * t * math.log(big_n)) / t


def tail_bound(table: MangoldtTable, n: int, a: complex, big_n: int) -> float:
    """Upper bound on sum_{m > N} Lambda(m) ln(m)**(n-1) m**(-Re a) for Re a > 1.

    The part N < m <= limit is summed exactly from the table; beyond the
    table Lambda(m) <= ln m and the sum is majorized by the integral of
    ln(x)**n x**(-sigma) from limit - 1, an upper incomplete gamma value.

    Raises:
        DomainError: If Re a <= 1 or the integrand is not yet decreasing at the table limit
        OutOfRangeError: If N exceeds the table
    """
    sigma = complex(a).real
    if n < 1:
        raise DomainError(f"order n must be >= 1, got {n}")
    if sigma <= 1.0:
        raise DomainError(f"tail bound needs Re a > 1, got Re a = {sigma}")
    if table.limit < 3:
        raise DomainError(f"table limit {table.limit} is too small for a tail bound")
    log_edge = math.log(table.limit - 1)
    if log_edge < n / sigma:
        raise DomainError(
            f"ln(limit - 1) = {log_edge:.3f} is below n / Re a = {n / sigma:.3f}; "
            f"build a larger table"
        )

    exact = lambda_weighted_range(table, sigma, n, big_n, table.limit).real
    shape = sigma - 1.0
    majorant = sp.gammaincc(n + 1, shape * log_edge) * sp.gamma(n + 1) / shape ** (n + 1)
    return exact + float(majorant)

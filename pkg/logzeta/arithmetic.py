"""Von Mangoldt table, weighted prime-power sums and the compensating integral."""

from __future__ import annotations

import cmath
import logging
import math
import time
from collections.abc import Sequence
from math import factorial

import numpy as np

from .errors import CapacityError, DomainError, OutOfRangeError, PoleError
from .special import integrate_complex
from .types import MangoldtTable, PrecisionConfig

logger = logging.getLogger(__name__)

DEFAULT_TABLE_CEILING = 100_000_000


class CompensatedSum:
    """Running sum with Neumaier compensation.

    Each ``add`` splits ``total + value`` into the rounded total and its exact
    rounding error; the errors are accumulated separately and folded back in
    by ``value``.
    """

    __slots__ = ("_total", "_carry")

    def __init__(self, initial: float = 0.0) -> None:
        self._total = float(initial)
        self._carry = 0.0

    def add(self, value: float) -> None:
        total = self._total + value
        if abs(self._total) >= abs(value):
            self._carry += (self._total - total) + value
        else:
            self._carry += (value - total) + self._total
        self._total = total

    @property
    def value(self) -> float:
        return self._total + self._carry


def compensated_total(terms: np.ndarray) -> complex:
    """Correctly rounded sum of an array, real and imaginary parts separately."""
    if np.iscomplexobj(terms):
        return complex(math.fsum(terms.real), math.fsum(terms.imag))
    return complex(math.fsum(terms), 0.0)


def build_mangoldt(n_max: int, ceiling: int = DEFAULT_TABLE_CEILING) -> MangoldtTable:
    """Build the table of Lambda(m) for 1 <= m <= n_max.

    Args:
        n_max: Largest m stored
        ceiling: Largest table size accepted

    Returns:
        Immutable MangoldtTable

    Raises:
        CapacityError: If n_max is below 1 or above the ceiling
    """
    if n_max < 1:
        raise CapacityError(f"table limit must be >= 1, got {n_max}")
    if n_max > ceiling:
        raise CapacityError(
            f"table limit {n_max} exceeds the memory ceiling {ceiling} "
            f"(raise LOGZETA_MAX_TABLE to allow it)"
        )

    started = time.perf_counter()
    root = math.isqrt(n_max)

    is_prime = np.ones(n_max + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, root + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False

    primes = np.flatnonzero(is_prime)
    log_p = np.log(primes.astype(np.float64))

    values = np.zeros(n_max + 1, dtype=np.float64)
    values[primes] = log_p

    # Higher powers only exist for p <= sqrt(n_max); they share ln p with p.
    small = int(np.searchsorted(primes, root, side="right"))
    for p, lp in zip(primes[:small].tolist(), log_p[:small].tolist()):
        q = p * p
        while q <= n_max:
            values[q] = lp
            q *= p

    support = np.flatnonzero(values)
    logger.info(
        f"Built von Mangoldt table to {n_max}: {len(primes)} primes, "
        f"{len(support)} prime powers in {time.perf_counter() - started:.2f}s"
    )
    return MangoldtTable(limit=n_max, values=values, support=support)


def _check_cutoff(table: MangoldtTable, n_cut: int) -> None:
    if n_cut < 0:
        raise OutOfRangeError(f"cutoff must be >= 0, got {n_cut}")
    if n_cut > table.limit:
        raise OutOfRangeError(f"cutoff {n_cut} exceeds the table limit {table.limit}")


def _weighted_terms(table: MangoldtTable, a: complex, j: int, lo: int, hi: int) -> np.ndarray:
    """Lambda(m) ln(m)**(j-1) / m**a for the prime powers lo < m <= hi."""
    start = int(np.searchsorted(table.support, lo, side="right"))
    stop = int(np.searchsorted(table.support, hi, side="right"))
    m = table.support[start:stop]
    log_m = np.log(m.astype(np.float64))
    terms = table.values[m] * np.exp(-complex(a) * log_m)
    if j > 1:
        terms = terms * log_m ** (j - 1)
    return terms


def lambda_weighted_range(table: MangoldtTable, a: complex, j: int, lo: int, hi: int) -> complex:
    """Sum of Lambda(m) ln(m)**(j-1) / m**a over lo < m <= hi, compensated."""
    if j < 1:
        raise DomainError(f"log power index j must be >= 1, got {j}")
    if lo > hi:
        raise OutOfRangeError(f"empty range requires lo <= hi, got lo={lo}, hi={hi}")
    _check_cutoff(table, lo)
    _check_cutoff(table, hi)
    return compensated_total(_weighted_terms(table, a, j, lo, hi))


def lambda_weighted_sum(table: MangoldtTable, a: complex, j: int, n_cut: int) -> complex:
    """Sum of Lambda(m) ln(m)**(j-1) / m**a over m <= n_cut.

    Terms are taken in ascending m and summed with correct rounding
    (``math.fsum``), separately for real and imaginary parts.

    Raises:
        OutOfRangeError: If n_cut exceeds the table limit
        DomainError: If j < 1
    """
    return lambda_weighted_range(table, a, j, 0, n_cut)


def lambda_weighted_prefix_sums(
    table: MangoldtTable, a: complex, j: int, cutoffs: Sequence[int]
) -> list[complex]:
    """Weighted sums at every cutoff of a nondecreasing sequence.

    The term array is computed once, up to the largest cutoff.
    """
    if j < 1:
        raise DomainError(f"log power index j must be >= 1, got {j}")
    if not cutoffs:
        return []
    if any(c1 > c2 for c1, c2 in zip(cutoffs, cutoffs[1:])):
        raise DomainError("cutoffs must be nondecreasing")
    _check_cutoff(table, cutoffs[0])
    _check_cutoff(table, cutoffs[-1])

    terms = _weighted_terms(table, a, j, 0, cutoffs[-1])
    support = table.support[: len(terms)]
    stops = np.searchsorted(support, np.asarray(cutoffs), side="right")
    return [compensated_total(terms[:stop]) for stop in stops.tolist()]


def chebyshev_psi(table: MangoldtTable, n_cut: int) -> float:
    """Chebyshev psi(n_cut) = sum of Lambda(m) over m <= n_cut."""
    _check_cutoff(table, n_cut)
    return math.fsum(table.values[table.support_upto(n_cut)])


def _check_integral_point(a: complex, j: int, big_n: float) -> complex:
    a = complex(a)
    if a == 1:
        raise PoleError("compensating integral has a pole at a = 1")
    if a.real >= 1.0:
        raise DomainError(
            f"integral of x**(-a) ln(x)**(j-1) from 0 diverges for Re a >= 1, got a = {a}"
        )
    if j < 1:
        raise DomainError(f"log power index j must be >= 1, got {j}")
    if big_n <= 0:
        raise DomainError(f"upper limit N must be positive, got {big_n}")
    return a


def compensating_integral(a: complex, j: int, big_n: float) -> complex:
    """Closed form of the integral of x**(-a) ln(x)**(j-1) over (0, N].

    N**(1-a) * sum_{l=1..j} (-1)**(l-1) (j-1)! ln(N)**(j-l) / ((1-a)**l (j-l)!)

    Raises:
        PoleError: If a == 1
        DomainError: If Re a >= 1 (divergent at 0), j < 1 or N <= 0
    """
    a = _check_integral_point(a, j, big_n)
    b = 1.0 - a
    log_n = math.log(big_n)
    total = sum(
        (-1) ** (l - 1) * (factorial(j - 1) // factorial(j - l)) * log_n ** (j - l) / b**l
        for l in range(1, j + 1)
    )
    return cmath.exp(b * log_n) * total


def compensating_integral_printed(a: complex, j: int, big_n: float) -> complex:
    """The closed form with the sign factor (-1)**(l+j) as originally printed.

    Agrees with ``compensating_integral`` for odd j only. Kept for reporting.
    """
    a = _check_integral_point(a, j, big_n)
    b = 1.0 - a
    log_n = math.log(big_n)
    total = sum(
        (-1) ** (l + j) * (factorial(j - 1) // factorial(j - l)) * log_n ** (j - l) / b**l
        for l in range(1, j + 1)
    )
    return cmath.exp(b * log_n) * total


def compensating_integral_quadrature(
    a: complex, j: int, big_n: float, cfg: PrecisionConfig
) -> complex:
    """Adaptive quadrature of the compensating integral.

    Substituting x = N exp(-t) turns the endpoint singularity at 0 into an
    exponentially decaying tail on [0, inf).
    """
    a = _check_integral_point(a, j, big_n)
    b = 1.0 - a
    log_n = math.log(big_n)

    def integrand(t: float) -> complex:
        return cmath.exp(-b * t) * (log_n - t) ** (j - 1)

    return cmath.exp(b * log_n) * integrate_complex(integrand, 0.0, math.inf, cfg)

"""Type definitions for the logzeta package."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Protocol

import numpy as np

from .errors import DomainError

ScanAxis = Literal["grid-in-a", "grid-in-N"]

Subcommand = Literal[
    "mangoldt", "approx", "scan-a", "scan-n", "li", "identities", "eta", "oscillation"
]


class AnalyticFunction(Protocol):
    """A complex function of one complex variable, analytic where it is called."""

    def __call__(self, z: complex, /) -> complex:
        ...


@dataclass(frozen=True, eq=False)
class MangoldtTable:
    """Precomputed von Mangoldt values Lambda(m) for 1 <= m <= limit.

    ``values`` has length ``limit + 1``; index 0 is unused and zero.
    ``support`` holds the prime powers up to ``limit`` in ascending order.
    Both arrays are read-only once the table is built.
    """

    limit: int
    values: np.ndarray
    support: np.ndarray

    def __post_init__(self) -> None:
        if self.values.shape != (self.limit + 1,):
            raise DomainError(
                f"values must have length limit + 1 = {self.limit + 1}, got {self.values.shape}"
            )
        self.values.flags.writeable = False
        self.support.flags.writeable = False

    def __getitem__(self, m: int) -> float:
        return float(self.values[m])

    def support_upto(self, n_cut: int) -> np.ndarray:
        """Prime powers m <= n_cut, ascending."""
        return self.support[: int(np.searchsorted(self.support, n_cut, side="right"))]


@dataclass(frozen=True)
class BoundParameters:
    """Zero-free width, margin and constant of the tolerance model.

    The model is ``constant_c * N**(1/2 + delta - Re a) * ln(N)**(n - 1)``.
    """

    delta: float = 0.0
    delta0: float = 1e-3
    constant_c: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.delta < 0.5:
            raise DomainError(f"delta must lie in [0, 1/2), got {self.delta}")
        if self.delta0 <= 0.0:
            raise DomainError(f"delta0 must be positive, got {self.delta0}")
        if self.delta + self.delta0 >= 0.5:
            raise DomainError(
                f"delta + delta0 must be below 1/2, got {self.delta} + {self.delta0}"
            )
        if self.constant_c <= 0.0:
            raise DomainError(f"constant_c must be positive, got {self.constant_c}")

    def bound(self, n: int, a: complex, big_n: int) -> float:
        """Evaluate the error-bound model at order n, point a and cutoff N."""
        if big_n < 1:
            raise DomainError(f"cutoff N must be >= 1, got {big_n}")
        log_n = math.log(big_n)
        return self.constant_c * big_n ** (0.5 + self.delta - complex(a).real) * log_n ** (n - 1)

    def covers(self, a: complex) -> bool:
        """Whether a lies in the region Re a >= 1/2 + delta + delta0 the bound is claimed for."""
        return complex(a).real >= 0.5 + self.delta + self.delta0


@dataclass(frozen=True)
class PrecisionConfig:
    """Tuning knobs for Euler-Maclaurin, quadrature and the Cauchy oracle."""

    em_cutoff: int = 20
    bernoulli_order: int = 10
    cauchy_points: int = 64
    cauchy_radius: float = 0.25
    quad_rel_tol: float = 1e-10
    cauchy_tol: float = 1e-9
    cauchy_max_points: int = 1024

    def __post_init__(self) -> None:
        if self.em_cutoff < 10:
            raise DomainError(f"em_cutoff must be >= 10, got {self.em_cutoff}")
        if not 1 <= self.bernoulli_order <= 15:
            raise DomainError(f"bernoulli_order must lie in 1..15, got {self.bernoulli_order}")
        if self.cauchy_points < 4:
            raise DomainError(f"cauchy_points must be >= 4, got {self.cauchy_points}")
        if self.cauchy_radius <= 0.0:
            raise DomainError(f"cauchy_radius must be positive, got {self.cauchy_radius}")
        if self.quad_rel_tol <= 0.0 or self.cauchy_tol <= 0.0:
            raise DomainError("quad_rel_tol and cauchy_tol must be positive")
        if self.cauchy_max_points < 2 * self.cauchy_points:
            raise DomainError(
                f"cauchy_max_points must be >= 2 * cauchy_points = {2 * self.cauchy_points}, "
                f"got {self.cauchy_max_points}"
            )


@dataclass(frozen=True)
class ApproxReport:
    """One approximation experiment: truncated formula vs independent reference."""

    order: int
    point: complex
    cutoff: int
    approximation: complex
    reference: complex
    residual_abs: float
    bound: float
    ratio: float


@dataclass(frozen=True)
class ScanSeries:
    """ApproxReports ordered along a grid in a or in N."""

    axis: ScanAxis
    entries: tuple[ApproxReport, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        xs = self.x_values()
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise DomainError(f"scan entries must be strictly increasing along {self.axis}")

    def x_values(self) -> list[float]:
        """The scan coordinate of each entry: Re a, or the cutoff N."""
        if self.axis == "grid-in-a":
            return [report.point.real for report in self.entries]
        return [float(report.cutoff) for report in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class LiParameters:
    """Li index n, base point a and arithmetic-side truncation N."""

    n: int
    a: complex
    N: int = 1

    def __post_init__(self) -> None:
        a = complex(self.a)
        if self.n < 1:
            raise DomainError(f"Li index n must be >= 1, got {self.n}")
        if a in (0, 0.5, 1):
            raise DomainError(f"a = {a} is a degenerate point (a must avoid 0, 1/2, 1)")
        if a.real <= 0.5:
            raise DomainError(f"Re a must exceed 1/2, got {a.real}")
        if self.N < 1:
            raise DomainError(f"truncation N must be >= 1, got {self.N}")

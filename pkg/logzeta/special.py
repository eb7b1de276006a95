"""Reference evaluators: zeta and its derivatives, Hurwitz zeta, digamma, log-gamma.

Everything here works in IEEE double precision on complex arguments and is
independent of the von Mangoldt machinery, so it can serve as the oracle the
truncated formulas are checked against.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from functools import lru_cache
from math import comb, factorial

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import integrate, special

from .errors import (
    DomainError,
    NearZeroError,
    NonConvergenceError,
    PoleError,
    UnsupportedOrderError,
)
from .types import AnalyticFunction, PrecisionConfig

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = PrecisionConfig()

MAX_ZETA_ORDER = 8
NEAR_ZERO = 1e-12
EULER_GAMMA = float(np.euler_gamma)
HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


@lru_cache(maxsize=None)
def _even_bernoulli(order: int) -> tuple[float, ...]:
    """B_2, B_4, ..., B_{2*order}."""
    numbers = special.bernoulli(2 * order)
    return tuple(float(numbers[2 * k]) for k in range(1, order + 1))


def em_cutoff_for(s: complex, cfg: PrecisionConfig) -> int:
    """Main-sum length M for Euler-Maclaurin at s."""
    return max(cfg.em_cutoff, math.ceil(2.0 * abs(complex(s).imag)) + 20)


def _correction_taylor(s: complex, order: int) -> list[np.ndarray]:
    """Taylor coefficients in h of (s+h)(s+h+1)...(s+h+2k-2) for k = 1..order."""
    return [npoly.polyfromroots(-(s + np.arange(2 * k - 1))) for k in range(1, order + 1)]


def zeta_with_derivatives(
    s: complex, n: int = 0, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> list[complex]:
    """Return [zeta(s), zeta'(s), ..., zeta^(n)(s)] by Euler-Maclaurin summation.

    The formula is sum_{m<M} m^-s + M^(1-s)/(s-1) + M^-s/2 plus Bernoulli
    corrections; each piece is differentiated in s in closed form.

    Args:
        s: Evaluation point, s != 1
        n: Highest derivative order, 0..8
        cfg: Precision settings

    Returns:
        List of n + 1 complex values

    Raises:
        PoleError: If s == 1
        UnsupportedOrderError: If n is outside 0..8
    """
    s = complex(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if not 0 <= n <= MAX_ZETA_ORDER:
        raise UnsupportedOrderError(
            f"zeta derivatives are supported up to order {MAX_ZETA_ORDER}, got {n}"
        )

    big_m = em_cutoff_for(s, cfg)
    log_big_m = math.log(big_m)
    logger.debug(f"Euler-Maclaurin at s={s}: M={big_m}, K={cfg.bernoulli_order}")

    log_m = np.log(np.arange(1, big_m, dtype=np.float64))
    powers = np.exp(-s * log_m)
    u = s - 1.0
    pole_factor = cmath.exp(-u * log_big_m)
    half_factor = cmath.exp(-s * log_big_m)

    ratios = [b / factorial(2 * k) for k, b in enumerate(_even_bernoulli(cfg.bernoulli_order), 1)]
    taylors = _correction_taylor(s, cfg.bernoulli_order)
    scales = [
        ratio * cmath.exp(-(s + 2 * k - 1) * log_big_m) for k, ratio in enumerate(ratios, 1)
    ]

    derivatives = []
    for k in range(n + 1):
        main = complex(np.sum((-log_m) ** k * powers))
        pole = pole_factor * sum(
            comb(k, i) * (-log_big_m) ** (k - i) * (-1) ** i * factorial(i) / u ** (i + 1)
            for i in range(k + 1)
        )
        half = 0.5 * (-log_big_m) ** k * half_factor
        corrections = 0j
        for scale, taylor in zip(scales, taylors):
            top = min(k, len(taylor) - 1)
            corrections += scale * sum(
                comb(k, i) * factorial(i) * taylor[i] * (-log_big_m) ** (k - i)
                for i in range(top + 1)
            )
        derivatives.append(complex(main + pole + half + corrections))
    return derivatives


def log_derivatives_from_taylor(derivatives: Sequence[complex]) -> list[complex]:
    """Turn [f, f', ..., f^(n)] into [(ln f)', ..., (ln f)^(n)].

    Solves f^(k) = sum_{j<k} C(k-1, j) g^(k-j) f^(j) for g = ln f, order by order.
    """
    f0 = complex(derivatives[0])
    n = len(derivatives) - 1
    g = [0j] * (n + 1)
    for k in range(1, n + 1):
        known = sum(comb(k - 1, j) * g[k - j] * derivatives[j] for j in range(1, k))
        g[k] = (derivatives[k] - known) / f0
    return g[1:]


def _checked_zeta_taylor(s: complex, n: int, cfg: PrecisionConfig) -> list[complex]:
    derivatives = zeta_with_derivatives(s, n, cfg)
    if abs(derivatives[0]) < NEAR_ZERO:
        raise NearZeroError(f"|zeta({s})| = {abs(derivatives[0]):.3e} is below {NEAR_ZERO}")
    return derivatives


def log_zeta_derivatives(
    s: complex, n: int, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> list[complex]:
    """Return [(ln zeta)'(s), ..., (ln zeta)^(n)(s)].

    Raises:
        DomainError: If n < 1
        NearZeroError: If |zeta(s)| < 1e-12
    """
    if n < 1:
        raise DomainError(f"order n must be >= 1, got {n}")
    return log_derivatives_from_taylor(_checked_zeta_taylor(s, n, cfg))


def log_zeta(s: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Principal logarithm of zeta(s)."""
    return cmath.log(_checked_zeta_taylor(s, 0, cfg)[0])


def hurwitz_zeta(j: int, q: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Hurwitz zeta(j, q) = sum_{m>=0} (m+q)^-j for integer j >= 2, Re q > 0."""
    q = complex(q)
    if j < 2:
        raise DomainError(f"Hurwitz order j must be an integer >= 2, got {j}")
    if q.real <= 0.0:
        raise DomainError(f"Hurwitz zeta needs Re q > 0, got q = {q}")

    big_m = em_cutoff_for(q, cfg)
    main = complex(np.sum((np.arange(big_m, dtype=np.float64) + q) ** (-j)))

    w = big_m + q
    tail = w ** (1 - j) / (j - 1) + 0.5 * w ** (-j)
    for k, b in enumerate(_even_bernoulli(cfg.bernoulli_order), 1):
        rising = math.prod(range(j, j + 2 * k - 1))
        tail += b / factorial(2 * k) * rising * w ** (-j - 2 * k + 1)
    return main + tail


def _lift(z: complex, cfg: PrecisionConfig) -> tuple[np.ndarray, complex]:
    """Points z, z+1, ..., z+shift-1 and the lifted argument z+shift."""
    shift = max(0, math.ceil(cfg.em_cutoff - z.real))
    return z + np.arange(shift), z + shift


def digamma(z: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Digamma psi(z) for Re z > 0: recurrence lift, then the asymptotic series."""
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError(f"digamma is implemented for Re z > 0, got z = {z}")
    steps, w = _lift(z, cfg)
    series = cmath.log(w) - 0.5 / w - sum(
        b / (2 * k * w ** (2 * k)) for k, b in enumerate(_even_bernoulli(cfg.bernoulli_order), 1)
    )
    return series - complex(np.sum(1.0 / steps))


def log_gamma(z: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """ln Gamma(z) for Re z > 0, on the branch that is real on the positive axis."""
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError(f"log_gamma is implemented for Re z > 0, got z = {z}")
    steps, w = _lift(z, cfg)
    stirling = (w - 0.5) * cmath.log(w) - w + HALF_LOG_TWO_PI + sum(
        b / (2 * k * (2 * k - 1) * w ** (2 * k - 1))
        for k, b in enumerate(_even_bernoulli(cfg.bernoulli_order), 1)
    )
    return stirling - complex(np.sum(np.log(steps.astype(np.complex128))))


def _on_circle(
    f: AnalyticFunction, center: complex, radius: float, theta: np.ndarray
) -> np.ndarray:
    nodes = center + radius * np.exp(1j * theta)
    return np.array([complex(f(z)) for z in nodes.tolist()], dtype=np.complex128)


def _trapezoid(values: np.ndarray, n: int, radius: float) -> complex:
    theta = 2.0 * math.pi * np.arange(len(values)) / len(values)
    return complex(np.mean(values * np.exp(-1j * n * theta))) * factorial(n) / radius**n


def cauchy_derivative(
    f: AnalyticFunction,
    center: complex,
    n: int,
    cfg: PrecisionConfig = DEFAULT_PRECISION,
    radius: float | None = None,
) -> complex:
    """n-th derivative of an analytic f at center from the Cauchy integral.

    The trapezoidal rule on the circle |z - center| = radius is applied with
    cfg.cauchy_points nodes and with twice as many; the node count keeps
    doubling until the two estimates agree to cfg.cauchy_tol relative to
    max(1, |value|).

    Raises:
        DomainError: If n < 1 or the radius is not positive
        NonConvergenceError: If doubling reaches cfg.cauchy_max_points without agreement
    """
    if n < 1:
        raise DomainError(f"derivative order must be >= 1, got {n}")
    r = cfg.cauchy_radius if radius is None else radius
    if r <= 0.0:
        raise DomainError(f"Cauchy radius must be positive, got {r}")
    center = complex(center)

    count = 2 * cfg.cauchy_points
    values = _on_circle(f, center, r, 2.0 * math.pi * np.arange(count) / count)
    estimate = _trapezoid(values[::2], n, r)
    while True:
        refined = _trapezoid(values, n, r)
        if abs(refined - estimate) <= cfg.cauchy_tol * max(1.0, abs(refined)):
            return refined
        if 2 * count > cfg.cauchy_max_points:
            raise NonConvergenceError(
                f"Cauchy derivative of order {n} at {center} (radius {r}) did not settle "
                f"with {count} points: |change| = {abs(refined - estimate):.3e}; "
                f"the disk may enclose a singularity"
            )
        logger.debug(f"Cauchy derivative at {center}: doubling to {2 * count} points")
        odd = _on_circle(f, center, r, 2.0 * math.pi * (2 * np.arange(count) + 1) / (2 * count))
        doubled = np.empty(2 * count, dtype=np.complex128)
        doubled[::2] = values
        doubled[1::2] = odd
        values, estimate, count = doubled, refined, 2 * count


def integrate_complex(
    f: Callable[[float], complex],
    lower: float,
    upper: float,
    cfg: PrecisionConfig = DEFAULT_PRECISION,
) -> complex:
    """Adaptive quadrature of a complex integrand over a real interval.

    Real and imaginary parts are integrated separately with scipy's QUADPACK
    wrapper; infinite limits are allowed.

    Raises:
        NonConvergenceError: If the error estimate is far above the requested tolerance
    """
    parts = []
    errors = []
    for component in (lambda t: complex(f(t)).real, lambda t: complex(f(t)).imag):
        value, error = integrate.quad(
            component, lower, upper, epsabs=1e-14, epsrel=cfg.quad_rel_tol, limit=500
        )
        parts.append(value)
        errors.append(error)
    result = complex(parts[0], parts[1])
    if max(errors) > 100.0 * cfg.quad_rel_tol * max(1.0, abs(result)):
        raise NonConvergenceError(
            f"quadrature over [{lower}, {upper}] reached error {max(errors):.3e}, "
            f"above the tolerance {cfg.quad_rel_tol}"
        )
    return result

"""Generalized Li sums: Mellin kernel, P-polynomials, gamma and pole terms, both sides.

The Li sum k_{n,a} = sum over zeros rho of 1 - ((rho - a)/(rho + a - 1))**n is
never formed from zeros. It is reached two ways: from truncated von Mangoldt
sums (arithmetic side) and from derivatives of ln zeta, digamma and Hurwitz
zeta at a (derivative side).
"""

from __future__ import annotations

import cmath
import logging
import math
from math import comb, factorial

from scipy.special import eval_genlaguerre

from .arithmetic import compensating_integral, lambda_weighted_sum
from .errors import DomainError, PoleError
from .special import (
    DEFAULT_PRECISION,
    cauchy_derivative,
    digamma,
    hurwitz_zeta,
    integrate_complex,
    log_gamma,
    log_zeta_derivatives,
)
from .types import LiParameters, MangoldtTable, PrecisionConfig

logger = logging.getLogger(__name__)

LOG_PI = math.log(math.pi)


def mellin_kernel(n: int, a: complex, s: complex) -> complex:
    """k_{n,a}(s) = 1 - (1 - (2a - 1)/(s + a - 1))**n.

    Raises:
        PoleError: If s + a == 1
    """
    a, s = complex(a), complex(s)
    if s + a == 1:
        raise PoleError(f"kernel has a pole at s = 1 - a = {1 - a}")
    return 1 - (1 - (2 * a - 1) / (s + a - 1)) ** n


def _binomial_log_sum(n: int, b: complex, log_x: float, sign: int) -> complex:
    """sum_{j=1..n} C(n, j) (sign)**(j-1) b**j log_x**(j-1) / (j-1)!"""
    return sum(
        comb(n, j) * sign ** (j - 1) * b**j * log_x ** (j - 1) / factorial(j - 1)
        for j in range(1, n + 1)
    )


def _check_degree(n: int) -> None:
    if n < 1:
        raise DomainError(f"order n must be >= 1, got {n}")


def _check_x(x: float) -> float:
    if x <= 0.0:
        raise DomainError(f"x must be positive, got {x}")
    return math.log(x)


def p_polynomial(n: int, a: complex, x: float) -> complex:
    """P_{n,a}(x) = x**(a-1) sum_j C(n,j) (2a-1)**j ln(x)**(j-1)/(j-1)!, for 0 < x <= 1."""
    if x > 1.0:
        raise DomainError(f"P_(n,a) is defined on (0, 1], got x = {x}")
    _check_degree(n)
    log_x = _check_x(x)
    a = complex(a)
    return cmath.exp((a - 1) * log_x) * _binomial_log_sum(n, 2 * a - 1, log_x, 1)


def p_tilde(n: int, a: complex, x: float) -> complex:
    """P~_{n,a}(x) = x**(-a) sum_j C(n,j) (-1)**(j-1) (2a-1)**j ln(x)**(j-1)/(j-1)!, for x >= 1."""
    if 0.0 < x < 1.0:
        raise DomainError(f"P~_(n,a) is defined on [1, inf), got x = {x}")
    _check_degree(n)
    log_x = _check_x(x)
    a = complex(a)
    return cmath.exp(-a * log_x) * _binomial_log_sum(n, 2 * a - 1, log_x, -1)


def p_polynomial_laguerre(n: int, a: complex, x: float) -> complex:
    """P_{n,a}(x) as x**(a-1) (2a-1) L^(1)_{n-1}(-(2a-1) ln x)."""
    _check_degree(n)
    log_x = _check_x(x)
    a = complex(a)
    b = 2 * a - 1
    laguerre = complex(eval_genlaguerre(n - 1, 1.0, -b * log_x))
    return cmath.exp((a - 1) * log_x) * b * laguerre


def p_tilde_laguerre(n: int, a: complex, x: float) -> complex:
    """P~_{n,a}(x) as x**(-a) (2a-1) L^(1)_{n-1}((2a-1) ln x)."""
    _check_degree(n)
    log_x = _check_x(x)
    a = complex(a)
    b = 2 * a - 1
    laguerre = complex(eval_genlaguerre(n - 1, 1.0, b * log_x))
    return cmath.exp(-a * log_x) * b * laguerre


def g_function(n: int, a: complex, x: float) -> complex:
    """Inverse Mellin transform of the kernel: P on (0, 1), n(2a-1)/2 at 1, zero beyond."""
    _check_x(x)
    if x < 1.0:
        return p_polynomial(n, a, x)
    if x == 1.0:
        return n * (2 * complex(a) - 1) / 2
    return 0j


def mellin_consistency(
    n: int, a: complex, s: complex, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> tuple[complex, complex]:
    """Kernel value and quadrature of the integral of P_{n,a}(x) x**(s-1) over (0, 1).

    The integral is taken after x = exp(-t), where it becomes
    exp(-(a+s-1) t) times a polynomial in t on [0, inf).

    Raises:
        DomainError: If Re(s + a) <= 1
    """
    a, s = complex(a), complex(s)
    if (s + a).real <= 1.0:
        raise DomainError(f"Mellin integral diverges for Re(s + a) <= 1, got s + a = {s + a}")
    b = 2 * a - 1
    rate = a + s - 1

    def integrand(t: float) -> complex:
        return cmath.exp(-rate * t) * _binomial_log_sum(n, b, -t, 1)

    return mellin_kernel(n, a, s), integrate_complex(integrand, 0.0, math.inf, cfg)


def _check_li_point(n: int, a: complex) -> complex:
    a = complex(a)
    if n < 1:
        raise DomainError(f"Li index n must be >= 1, got {n}")
    if a == 1:
        raise PoleError("a = 1 is a pole of every Li-sum ingredient")
    if a == 0.5:
        raise DomainError("a = 1/2 makes 2a - 1 vanish")
    return a


def _oracle_radius(cfg: PrecisionConfig, distance: float, label: str) -> float:
    radius = min(cfg.cauchy_radius, 0.5 * distance)
    if radius < cfg.cauchy_radius:
        logger.warning(
            f"Cauchy radius shrunk from {cfg.cauchy_radius} to {radius:g} "
            f"to keep the {label} singularity outside the disk"
        )
    return radius


def gamma_term_value(n: int, a: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """(1/(n-1)!) d^n/dz^n [(z+a-1)**(n-1) ln(z Gamma(z/2))] at z = a, by the Cauchy oracle.

    Raises:
        DomainError: If Re a <= 1/2 or n < 1
        NonConvergenceError: If the Cauchy refinement fails
    """
    a = _check_li_point(n, a)
    if a.real <= 0.5:
        raise DomainError(f"gamma term needs Re a > 1/2, got a = {a}")

    def integrand(z: complex) -> complex:
        return (z + a - 1) ** (n - 1) * (cmath.log(z) + log_gamma(z / 2, cfg))

    radius = _oracle_radius(cfg, a.real, "z = 0")
    return cauchy_derivative(integrand, a, n, cfg, radius=radius) / factorial(n - 1)


def _hurwitz_part(n: int, a: complex, cfg: PrecisionConfig) -> complex:
    b = 2 * a - 1
    return sum(
        comb(n, l) * (-1) ** l * 2.0 ** (-l) * b**l * hurwitz_zeta(l, a / 2, cfg)
        for l in range(2, n + 1)
    )


def gamma_term_closed_form(
    n: int, a: complex, cfg: PrecisionConfig = DEFAULT_PRECISION
) -> complex:
    """Hurwitz-form value of the gamma term.

    (1/(2a-1)) [1 - (-1 + 1/a)**n] + (n/2) psi(a/2)
        + (1/(2a-1)) sum_{l=2..n} C(n,l) (-1)**l 2**(-l) (2a-1)**l zeta(l, a/2)
    """
    a = _check_li_point(n, a)
    b = 2 * a - 1
    return (
        (1 - (-1 + 1 / a) ** n) / b
        + n / 2 * digamma(a / 2, cfg)
        + _hurwitz_part(n, a, cfg) / b
    )


def gamma_term_printed(n: int, a: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """The gamma term as originally printed, pole sum resummed into Hurwitz form.

    Matches ``gamma_term_value`` at n = 1 only.
    """
    a = _check_li_point(n, a)
    b = 2 * a - 1
    hurwitz = sum(
        comb(n, l) * 2.0 ** (-l) * (-b) ** l * hurwitz_zeta(l, a / 2, cfg)
        for l in range(2, n + 1)
    )
    return ((-1 + 1 / a) ** n - 1 - hurwitz) / (n * b) + 2 / a + digamma(a / 2, cfg) / 2


def pole_term_value(n: int, a: complex) -> complex:
    """(1/(n-1)!) d^n/dz^n [(z+a-1)**(n-1) ln(z-1)] at z = a, in closed form.

    Equal to (1/(2a-1)) (1 - (a/(1-a))**n).
    """
    a = _check_li_point(n, a)
    return (1 - (a / (1 - a)) ** n) / (2 * a - 1)


def pole_term_printed(n: int, a: complex) -> complex:
    """The pole term as originally printed: (1/(n(2a-1))) (1 - (1 + 1/(1-a))**n)."""
    a = _check_li_point(n, a)
    return (1 - (1 + 1 / (1 - a)) ** n) / (n * (2 * a - 1))


def pole_term_oracle(n: int, a: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Cauchy-oracle value of the pole term.

    Left of Re z = 1 the logarithm is taken as ln(1 - z); it differs from
    ln(z - 1) by a constant, which the n-th derivative of a degree n-1
    multiple removes.
    """
    a = _check_li_point(n, a)

    def integrand(z: complex) -> complex:
        log_part = cmath.log(z - 1) if a.real >= 1.0 else cmath.log(1 - z)
        return (z + a - 1) ** (n - 1) * log_part

    radius = _oracle_radius(cfg, abs(a - 1), "z = 1")
    return cauchy_derivative(integrand, a, n, cfg, radius=radius) / factorial(n - 1)


def _constant_part(n: int, a: complex) -> complex:
    return 2 - (-1 + 1 / a) ** n - (-1 + 1 / (1 - a)) ** n


def _gamma_part(n: int, a: complex, cfg: PrecisionConfig) -> complex:
    b = 2 * a - 1
    return n / 2 * b * (digamma(a / 2, cfg) - LOG_PI) + _hurwitz_part(n, a, cfg)


def _zeta_part(n: int, a: complex, cfg: PrecisionConfig) -> complex:
    b = 2 * a - 1
    derivatives = log_zeta_derivatives(a, n, cfg)
    return sum(
        comb(n, j) * b**j / factorial(j - 1) * derivatives[j - 1] for j in range(1, n + 1)
    )


def li_sum_derivative_side(n: int, a: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Li sum k_{n,a} from derivatives of ln zeta, digamma and Hurwitz zeta at a.

    Valid for any a with Re a > 0 other than 1/2 and 1.

    Raises:
        DomainError: If a is 1/2 or Re a <= 0
        PoleError: If a == 1
        NearZeroError: If zeta(a) is numerically zero
    """
    a = _check_li_point(n, a)
    if a.real <= 0.0:
        raise DomainError(f"derivative side needs Re a > 0, got a = {a}")
    return _constant_part(n, a) + _zeta_part(n, a, cfg) + _gamma_part(n, a, cfg)


def li_sum_arithmetic_side(
    table: MangoldtTable,
    n: int,
    a: complex,
    big_n: int,
    cfg: PrecisionConfig = DEFAULT_PRECISION,
) -> complex:
    """Li sum k_{n,a} from von Mangoldt sums truncated at N.

    In the strip each sum carries its compensating integral; for Re a > 1 the
    bare sum is used.

    Raises:
        DomainError: If the parameters violate LiParameters or Re a == 1
    """
    params = LiParameters(n=n, a=a, N=big_n)
    a = complex(params.a)
    if a.real == 1.0:
        raise DomainError(f"Re a = 1 belongs to neither regime, got a = {a}")
    b = 2 * a - 1

    arithmetic = 0j
    for j in range(1, n + 1):
        term = lambda_weighted_sum(table, a, j, big_n)
        if a.real < 1.0:
            term -= compensating_integral(a, j, big_n)
        arithmetic += comb(n, j) * b**j * (-1) ** j / factorial(j - 1) * term
    return _constant_part(n, a) + arithmetic + _gamma_part(n, a, cfg)


def li_sum_decomposed(n: int, a: complex, cfg: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Derivative side rebuilt as (2a-1) [gamma term + pole term] + zeta part - (n/2)(2a-1) ln pi.

    Agreement with ``li_sum_derivative_side`` pins the prefactor of the
    gamma and pole terms to (2a-1), without an extra factor n.
    """
    a = _check_li_point(n, a)
    b = 2 * a - 1
    return (
        b * (gamma_term_closed_form(n, a, cfg) + pole_term_value(n, a))
        + _zeta_part(n, a, cfg)
        - n / 2 * b * LOG_PI
    )

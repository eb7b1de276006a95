"""Truncated von Mangoldt approximations of the derivatives of ln zeta(s).

This package provides a numerics library and command-line tool that
approximates d^n/ds^n ln zeta(s) in the critical strip from truncated
von Mangoldt sums with closed-form compensating integrals, and checks the
results against independent evaluators.

Main features:
- Von Mangoldt table with compensated weighted prime-power sums
- Euler-Maclaurin zeta with derivatives, Hurwitz zeta, digamma, log-gamma
- Cauchy-integral differentiation oracle
- Residual scans in a and in N against a configurable error-bound model
- Both sides of the generalized Li-sum identity
- Deterministic CSV output for every experiment
"""

__version__ = "1.0.0"
__author__ = "logzeta"
__description__ = "Approximations of the derivatives of ln zeta from von Mangoldt sums"

from .arithmetic import build_mangoldt, compensating_integral, lambda_weighted_sum
from .cli import main, run
from .config import RunConfig, load_config
from .logderiv import approx_log_derivative, residual_report, scan_over_a, scan_over_n_cut
from .types import ApproxReport, BoundParameters, MangoldtTable, PrecisionConfig, ScanSeries

__all__ = [
    "main",
    "run",
    "RunConfig",
    "load_config",
    "build_mangoldt",
    "lambda_weighted_sum",
    "compensating_integral",
    "approx_log_derivative",
    "residual_report",
    "scan_over_a",
    "scan_over_n_cut",
    "ApproxReport",
    "BoundParameters",
    "MangoldtTable",
    "PrecisionConfig",
    "ScanSeries",
]

"""Tests for the truncated approximations, residual reports and scans."""

from __future__ import annotations

import cmath
import logging
import math
import statistics

import mpmath
import numpy as np
import pytest

from logzeta.arithmetic import compensating_integral
from logzeta.errors import DomainError, OutOfRangeError, PoleError
from logzeta.logderiv import (
    approx_log_derivative,
    eta_coefficient,
    eta_scan,
    line_one_oscillation,
    residual_report,
    scan_over_a,
    scan_over_n_cut,
    tail_bound,
)
from logzeta.special import (
    EULER_GAMMA,
    cauchy_derivative,
    log_zeta_derivatives,
    zeta_with_derivatives,
)
from logzeta.types import BoundParameters, ScanSeries

MILLION = 1_000_000


def test_convergent_regime_example(small_table, cfg):
    value = approx_log_derivative(small_table, 1, 2.0, 10_000)
    assert abs(value - (-0.5699610)) < 2e-3


def test_empty_sum_leaves_only_the_integral(small_table):
    for n in (1, 2, 3):
        a = 0.7 + 0.3j
        expected = -((-1) ** n) * compensating_integral(a, n, 1)
        assert approx_log_derivative(small_table, n, a, 1) == expected


def test_domain_errors(small_table):
    with pytest.raises(DomainError):
        approx_log_derivative(small_table, 1, 0.5, 100)
    with pytest.raises(DomainError):
        approx_log_derivative(small_table, 1, 0.3 + 2j, 100)
    with pytest.raises(PoleError):
        approx_log_derivative(small_table, 1, 1.0, 100)
    with pytest.raises(DomainError):
        approx_log_derivative(small_table, 1, 1 + 2j, 100)
    with pytest.raises(OutOfRangeError):
        approx_log_derivative(small_table, 1, 0.75, small_table.limit + 1)


def test_bound_magnitudes(bp):
    assert bp.bound(1, 0.55, MILLION) == pytest.approx(10**-0.3, rel=1e-12)
    assert bp.bound(1, 0.95, MILLION) == pytest.approx(10**-2.7, rel=1e-12)
    assert bp.bound(2, 0.75, MILLION) == pytest.approx(
        MILLION**-0.25 * math.log(MILLION), rel=1e-12
    )


def test_bound_parameters_validation():
    with pytest.raises(DomainError):
        BoundParameters(delta=0.5)
    with pytest.raises(DomainError):
        BoundParameters(delta=0.4, delta0=0.1)
    with pytest.raises(DomainError):
        BoundParameters(constant_c=0.0)


def test_bound_decreases_in_n_above_the_strip(bp):
    values = [bp.bound(2, 0.8, big_n) for big_n in (10**3, 10**4, 10**5, 10**6)]
    assert all(v1 > v2 > 0 for v1, v2 in zip(values, values[1:]))


def test_residual_magnitudes_at_quoted_points(big_table, bp, cfg):
    fast = residual_report(big_table, 1, 0.95, MILLION, bp, cfg)
    slow = residual_report(big_table, 1, 0.55, MILLION, bp, cfg)
    assert fast.ratio <= 10.0
    assert 0.01 <= slow.ratio <= 10.0
    assert residual_report(big_table, 1, 0.75, MILLION, bp, cfg).ratio <= 10.0


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("a", [0.6, 0.75, 0.9])
def test_residual_tracks_bound(big_table, bp, cfg, n, a):
    report = residual_report(big_table, n, a, MILLION, bp, cfg)
    assert report.residual_abs == abs(report.approximation - report.reference)
    assert report.residual_abs <= 10.0 * MILLION ** (0.5 - a) * math.log(MILLION) ** (n - 1)


def test_strip_approximation_is_real_for_real_a(big_table):
    assert approx_log_derivative(big_table, 1, 0.65, 10_000).imag == 0.0


def test_second_derivative_is_positive_in_convergent_regime(small_table):
    for big_n in (100, 1_000, 10_000):
        assert approx_log_derivative(small_table, 2, 1.5, big_n).real > 0.0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_convergent_gap_within_tail_bound(big_table, cfg, n):
    reference = log_zeta_derivatives(2.0, n, cfg)[n - 1]
    for big_n in (1_000, 100_000):
        gap = abs(approx_log_derivative(big_table, n, 2.0, big_n) - reference)
        assert gap <= tail_bound(big_table, n, 2.0, big_n) + 1e-9


def test_tail_bound_domain(small_table):
    with pytest.raises(DomainError):
        tail_bound(small_table, 1, 0.9, 100)
    with pytest.raises(DomainError):
        tail_bound(small_table, 12, 1.01, 100)


def test_residual_report_needs_positive_bound(small_table, bp, cfg):
    with pytest.raises(DomainError):
        residual_report(small_table, 2, 0.75, 1, bp, cfg)


def test_scan_over_a_singleton_matches_report(small_table, bp, cfg):
    series = scan_over_a(small_table, 1, [0.75], 10_000, bp, cfg)
    assert series.axis == "grid-in-a"
    assert len(series) == 1
    assert series.entries[0] == residual_report(small_table, 1, 0.75, 10_000, bp, cfg)


def test_scan_over_a_keeps_grid_order_with_workers(small_table, bp, cfg):
    grid = np.linspace(0.55, 0.95, 9).tolist()
    serial = scan_over_a(small_table, 1, grid, 10_000, bp, cfg, workers=1)
    pooled = scan_over_a(small_table, 1, grid, 10_000, bp, cfg, workers=4)
    assert serial == pooled
    assert serial.x_values() == grid


def test_scan_over_a_residuals_shrink_toward_one(big_table, bp, cfg):
    grid = np.linspace(0.55, 0.95, 9).tolist()
    residuals = [r.residual_abs for r in scan_over_a(big_table, 1, grid, MILLION, bp, cfg).entries]
    assert statistics.median(residuals[-3:]) < statistics.median(residuals[:3])
    assert all(math.isfinite(r) for r in residuals)


def test_scan_over_a_validates_before_computing(small_table, bp, cfg):
    with pytest.raises(DomainError):
        scan_over_a(small_table, 1, [0.75, 0.5, 0.8], 1_000, bp, cfg)
    with pytest.raises(DomainError):
        scan_over_a(small_table, 1, [0.8, 0.75], 1_000, bp, cfg)
    assert len(scan_over_a(small_table, 1, [], 1_000, bp, cfg)) == 0


def test_scan_warns_outside_zero_free_region(small_table, bp, cfg, caplog):
    with caplog.at_level(logging.WARNING, logger="logzeta.logderiv"):
        scan_over_a(small_table, 1, [0.5005, 0.75], 1_000, bp, cfg)
    assert "outside the assumed zero-free region" in caplog.text


def test_scan_over_n_cut_converges_at_095(big_table, bp, cfg):
    grid = np.unique(np.rint(np.geomspace(100, MILLION, 13)).astype(int)).tolist()
    series = scan_over_n_cut(big_table, 1, 0.95, grid, bp, cfg)
    assert series.axis == "grid-in-N"
    assert [r.cutoff for r in series.entries] == grid
    assert len({r.reference for r in series.entries}) == 1
    residuals = [r.residual_abs for r in series.entries]
    assert statistics.median(residuals[-3:]) < statistics.median(residuals[:3])


def test_scan_over_n_cut_at_055_stays_at_bound_scale(big_table, bp, cfg):
    series = scan_over_n_cut(big_table, 1, 0.55, [10_000, 100_000, MILLION], bp, cfg)
    last = series.entries[-1]
    assert 0.01 <= last.ratio <= 10.0


def test_scan_over_n_cut_convergent_tail(big_table, bp, cfg):
    grid = [100, 1_000, 10_000, 100_000, MILLION]
    for report in scan_over_n_cut(big_table, 1, 2.0, grid, bp, cfg).entries:
        assert report.residual_abs <= tail_bound(big_table, 1, 2.0, report.cutoff) + 1e-9


def test_scan_over_n_cut_matches_single_reports(small_table, bp, cfg):
    series = scan_over_n_cut(small_table, 2, 0.8 + 1j, [10, 500, 10_000], bp, cfg)
    for report in series.entries:
        single = residual_report(small_table, 2, 0.8 + 1j, report.cutoff, bp, cfg)
        assert report.approximation == pytest.approx(single.approximation, rel=1e-14)


def test_scan_series_rejects_unordered_entries(small_table, bp, cfg):
    first = residual_report(small_table, 1, 0.8, 1_000, bp, cfg)
    second = residual_report(small_table, 1, 0.7, 1_000, bp, cfg)
    with pytest.raises(DomainError):
        ScanSeries(axis="grid-in-a", entries=(first, second))


def test_eta_limits(big_table, cfg):
    assert eta_coefficient(big_table, 1, 1) == 0.0
    assert abs(eta_coefficient(big_table, 1, MILLION) - EULER_GAMMA) < 0.02

    def log_regularized(s: complex) -> complex:
        return cmath.log((s - 1) * zeta_with_derivatives(s, 0, cfg)[0])

    oracle = cauchy_derivative(log_regularized, 1.0, 2, cfg)
    assert abs(eta_coefficient(big_table, 2, MILLION) - oracle.real) < 0.1

    gamma1 = float(mpmath.stieltjes(1))
    assert oracle.real == pytest.approx(-2 * gamma1 - EULER_GAMMA**2, abs=1e-8)


def test_eta_sequence_settles(big_table):
    values = dict(eta_scan(big_table, 1, [100, 1_000, 100_000, MILLION]))
    assert abs(values[MILLION] - values[100_000]) < abs(values[1_000] - values[100])
    assert values[MILLION] == eta_coefficient(big_table, 1, MILLION)


def test_oscillation_matches_hand_enumeration(small_table, cfg):
    t = 2.0
    s = complex(1.0, t)
    prime_powers = {2: 2, 3: 3, 4: 2, 5: 5, 7: 7, 8: 2, 9: 3}
    hand = sum(math.log(p) * cmath.exp(-s * math.log(m)) for m, p in prime_powers.items())
    log_deriv = complex(mpmath.zeta(s, 1, 1) / mpmath.zeta(s))
    expected = hand + log_deriv - 1j * cmath.exp(-1j * t * math.log(10)) / t
    assert abs(line_one_oscillation(small_table, t, 10, cfg) - expected) < 1e-10


def test_oscillation_conjugate_symmetry(small_table, cfg):
    upper = line_one_oscillation(small_table, 3.0, 5_000, cfg)
    lower = line_one_oscillation(small_table, -3.0, 5_000, cfg)
    assert lower == pytest.approx(upper.conjugate(), rel=1e-12)


@pytest.mark.parametrize("t", [1.0, 2.0])
def test_oscillation_decays(big_table, cfg, t):
    magnitudes = [abs(line_one_oscillation(big_table, t, 10**k, cfg)) for k in range(1, 7)]
    assert statistics.median(magnitudes[3:]) < statistics.median(magnitudes[:3])


def test_oscillation_rejects_zero_height(small_table, cfg):
    with pytest.raises(DomainError):
        line_one_oscillation(small_table, 0.0, 10, cfg)

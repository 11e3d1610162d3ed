"""Benchmark harness: asymptotic-advantage assertions and report plumbing."""

from __future__ import annotations

import json

import pytest

from thetasums.bench import (
    FAST_EXPONENT_CEILING,
    NAIVE_EXPONENT_RANGE,
    SPEEDUP_FLOOR,
    run_bench,
)


def test_parameter_validation():
    with pytest.raises(ValueError):
        run_bench(50)
    with pytest.raises(ValueError):
        run_bench(1000, 2000)   # naive bound above the fast bound
    with pytest.raises(ValueError):
        run_bench(1000, 50)     # naive bound below the minimum


def test_moderate_scale_clears_all_floors():
    report = run_bench(20_000, 2_000, points=6)
    assert report.mismatches == ()
    lo, hi = NAIVE_EXPONENT_RANGE
    assert lo <= report.naive_exponent <= hi, report.to_text()
    assert report.fast_exponent < FAST_EXPONENT_CEILING, report.to_text()
    assert report.speedup >= SPEEDUP_FLOOR, report.to_text()
    assert report.passed

    # Report plumbing: JSON carries every headline number, text both verdicts.
    payload = json.loads(report.to_json())
    assert payload["passed"] is True
    assert payload["limit"] == 20_000 and payload["naive_limit"] == 2_000
    assert len(payload["naive_points"]) == len(report.naive_points)
    assert "PASS" in report.to_text()
    # Each timing point carries at least three repetitions.
    assert all(p.repeats >= 3 for p in report.naive_points + report.fast_points)


def test_full_scale_speedup_floor():
    # The pinned performance contract: the fast path over all primes to
    # 5*10^4 beats the direct evaluator over primes to 5*10^3 extrapolated
    # quadratically by at least 50x (measured around 300x here).
    report = run_bench(50_000, 5_000, points=6)
    assert report.mismatches == ()
    assert report.speedup >= SPEEDUP_FLOOR, report.to_text()
    lo, hi = NAIVE_EXPONENT_RANGE
    assert lo <= report.naive_exponent <= hi, report.to_text()
    assert report.fast_exponent < FAST_EXPONENT_CEILING, report.to_text()


def test_extrapolation_is_quadratic_in_prime_mass():
    report = run_bench(5_000, 500, points=4)
    # Sum of p^2 ratio for 5000/500 is around 700; demand the right regime.
    assert 300 < report.extrapolation_factor < 2000
    assert report.extrapolated_naive_total == pytest.approx(
        report.naive_total * report.extrapolation_factor)

"""Timing harness comparing the direct O(k²) S(k) evaluator with the fast path.

The comparison asserts an asymptotic advantage, not a machine-specific
wall-clock constant: per-k timings are fitted on log-spaced prime sample
points, the direct evaluator's growth exponent must land near 2, the fast
path's below 1.5, and the fast path's total over primes up to ``limit`` must
beat the direct evaluator's total over primes up to ``limit/10`` extrapolated
quadratically (cost proportional to Σ p² over the scanned primes).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._accel import s_k_batch
from .exact import s_k_naive
from .kernels import build_sieves, s_k_fast

__all__ = ["BenchReport", "TimingPoint", "run_bench"]

MIN_SAMPLE_SECONDS = 0.005
SPEEDUP_FLOOR = 50.0
NAIVE_EXPONENT_RANGE = (1.7, 2.3)
FAST_EXPONENT_CEILING = 1.5


@dataclass(frozen=True)
class TimingPoint:
    """Per-call cost of one evaluator at a single k (best of ``repeats`` calls)."""

    k: int
    seconds: float
    repeats: int


@dataclass(frozen=True)
class BenchReport:
    """Fitted growth exponents plus the extrapolated total-cost comparison.

    ``extrapolated_naive_total`` scales the measured direct-evaluator total by
    the ratio of Σ p² over primes ≤ limit to Σ p² over primes ≤ naive_limit;
    ``speedup`` divides that by the fast path's measured total.
    """

    limit: int
    naive_limit: int
    naive_points: tuple[TimingPoint, ...]
    fast_points: tuple[TimingPoint, ...]
    naive_exponent: float
    fast_exponent: float
    naive_total: float
    fast_total: float
    extrapolation_factor: float
    extrapolated_naive_total: float
    speedup: float
    mismatches: tuple[int, ...]

    @property
    def passed(self) -> bool:
        lo, hi = NAIVE_EXPONENT_RANGE
        return (
            not self.mismatches
            and lo <= self.naive_exponent <= hi
            and self.fast_exponent < FAST_EXPONENT_CEILING
            and self.speedup >= SPEEDUP_FLOOR
        )

    def to_dict(self) -> dict:
        return {
            "limit": self.limit,
            "naive_limit": self.naive_limit,
            "naive_points": [[p.k, p.seconds, p.repeats] for p in self.naive_points],
            "fast_points": [[p.k, p.seconds, p.repeats] for p in self.fast_points],
            "naive_exponent": self.naive_exponent,
            "fast_exponent": self.fast_exponent,
            "naive_total": self.naive_total,
            "fast_total": self.fast_total,
            "extrapolation_factor": self.extrapolation_factor,
            "extrapolated_naive_total": self.extrapolated_naive_total,
            "speedup": self.speedup,
            "mismatches": list(self.mismatches),
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lo, hi = NAIVE_EXPONENT_RANGE
        lines = [
            f"benchmark over primes: fast to {self.limit}, direct to {self.naive_limit}",
            f"  direct total  {self.naive_total:9.3f} s over primes <= {self.naive_limit}",
            f"  fast total    {self.fast_total:9.3f} s over primes <= {self.limit}",
            f"  extrapolated direct at {self.limit}: {self.extrapolated_naive_total:.1f} s "
            f"(x{self.extrapolation_factor:.0f} quadratic scaling)",
            f"  speedup       {self.speedup:9.1f}x  (floor {SPEEDUP_FLOOR:.0f}x)",
            f"  exponents     direct {self.naive_exponent:.3f} (expected {lo}..{hi}), "
            f"fast {self.fast_exponent:.3f} (ceiling {FAST_EXPONENT_CEILING})",
            f"  agreement     {'0 mismatches' if not self.mismatches else f'MISMATCH at {list(self.mismatches)}'}",
            f"  verdict       {'PASS' if self.passed else 'FAIL'}",
        ]
        return "\n".join(lines)


def _sample_primes(primes: np.ndarray, lo: int, hi: int, count: int) -> list[int]:
    """Deterministic log-spaced prime selection in [lo, hi], deduplicated."""
    window = primes[(primes >= lo) & (primes <= hi)]
    if len(window) == 0:
        raise ValueError(f"no primes in [{lo}, {hi}]")
    if len(window) <= count:
        return [int(p) for p in window]
    targets = np.geomspace(window[0], window[-1], count)
    picks = sorted({int(window[np.searchsorted(window, t).clip(0, len(window) - 1)])
                    for t in targets})
    return picks


def _time_best_of(fn: Callable[[int], int], k: int,
                  min_seconds: float = MIN_SAMPLE_SECONDS) -> TimingPoint:
    """Best per-call time once the accumulated measurement exceeds min_seconds."""
    best = float("inf")
    repeats = 0
    spent = 0.0
    while spent < min_seconds or repeats < 3:
        t0 = time.perf_counter()
        fn(k)
        dt = time.perf_counter() - t0
        best = min(best, dt)
        spent += dt
        repeats += 1
        if repeats >= 10_000:
            break
    return TimingPoint(k=k, seconds=best, repeats=repeats)


def _fit_exponent(points: tuple[TimingPoint, ...]) -> float:
    ks = np.log([p.k for p in points])
    ts = np.log([p.seconds for p in points])
    slope, _ = np.polyfit(ks, ts, 1)
    return float(slope)


def run_bench(limit: int = 50_000, naive_limit: int | None = None,
              points: int = 8) -> BenchReport:
    """Time both S(k) evaluators over primes and fit their growth exponents.

    ``limit`` bounds the fast path's scan; the direct evaluator runs over
    primes up to ``naive_limit`` (default ``limit // 10``).  Values from the
    two evaluators are compared on every directly-evaluated prime.
    """
    if limit < 100:
        raise ValueError("limit must be at least 100")
    naive_limit = naive_limit if naive_limit is not None else limit // 10
    if not 100 <= naive_limit <= limit:
        raise ValueError("naive_limit must be in [100, limit]")

    tables = build_sieves(limit)
    primes = tables.primes[tables.primes <= limit].astype(np.int64)
    naive_primes = primes[primes <= naive_limit]

    # Totals: direct evaluator over the small prime set, fast batch over the
    # full one; agreement is checked on every directly-evaluated prime.
    mismatches = []
    t0 = time.perf_counter()
    naive_values = [s_k_naive(int(p)).value for p in naive_primes]
    naive_total = time.perf_counter() - t0

    t0 = time.perf_counter()
    fast_all = s_k_batch(primes)
    fast_total = time.perf_counter() - t0

    fast_by_k = dict(zip(primes.tolist(), fast_all.tolist()))
    for p, nv in zip(naive_primes.tolist(), naive_values):
        if fast_by_k[p] != nv:
            mismatches.append(p)

    # Quadratic extrapolation: direct cost scales with sum of p^2.
    p_f = primes.astype(np.float64)
    factor = float(np.sum(p_f**2) / np.sum(p_f[primes <= naive_limit] ** 2))
    extrapolated = naive_total * factor
    speedup = extrapolated / fast_total if fast_total > 0 else float("inf")

    # Exponent fits on log-spaced per-k sample points.
    naive_samples = _sample_primes(naive_primes, max(101, naive_limit // 50),
                                   naive_limit, points)
    fast_samples = _sample_primes(primes, max(101, limit // 50), limit, points)
    naive_points = tuple(
        _time_best_of(lambda k: s_k_naive(k).value, k) for k in naive_samples
    )
    fast_points = tuple(
        _time_best_of(lambda k: s_k_fast(k).value, k) for k in fast_samples
    )

    return BenchReport(
        limit=limit,
        naive_limit=naive_limit,
        naive_points=naive_points,
        fast_points=fast_points,
        naive_exponent=_fit_exponent(naive_points),
        fast_exponent=_fit_exponent(fast_points),
        naive_total=naive_total,
        fast_total=fast_total,
        extrapolation_factor=factor,
        extrapolated_naive_total=extrapolated,
        speedup=speedup,
        mismatches=tuple(mismatches),
    )

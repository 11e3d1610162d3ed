"""The acceptance gate: ten criteria, one test and one PASS/FAIL line each.

Each criterion pins exact values (integer equalities, frozen counts, published
exception lists) plus its wall-clock budget.  The expensive shared artifacts
(the 5*10^4 prime scan, the 10^7 sieve) are session fixtures whose build time
is charged to the criteria that consume them.
"""

from __future__ import annotations

import io
import math
import time

import pytest

from thetasums.asymptotics import (
    compute_constants,
    dirichlet_spot_check,
    error_scan,
)
from thetasums.exact import s_k_naive, t_k_naive
from thetasums.kernels import s_k_fast, t_k_closed
from thetasums.published import (
    CENSUS_10K,
    EXCEPTIONS_2K,
    EXCEPTIONS_3K,
    EXCEPTIONS_4K,
    EXCEPTIONS_4K_WINDOW,
    S_TABLE,
    T_TABLE,
    compare_census,
    compare_s_table,
    compare_threshold_exceptions,
)
from thetasums.scanner import (
    load_checkpoint,
    negative_census,
    scan_thresholds,
    write_records_csv,
)
from thetasums.verify import (
    verify_double_sum,
    verify_fast_equivalence,
    verify_lower_bounds,
    verify_pairing,
    verify_reciprocity_dedekind,
    verify_reciprocity_theta,
)

# S(k) for k = 1..20 recomputed by direct enumeration (frozen oracle values).
S_RECOMPUTED = [0, 1, 2, 5, 4, 7, 10, 11, 8, 17, 14, 21, 20, 15, 18, 39, 24, 21, 38, 29]


def test_criterion_01():
    """Both T(k) evaluators reproduce the published 20-value table exactly; < 1 s."""
    start = time.perf_counter()
    closed = [t_k_closed(k).value for k in range(1, 21)]
    naive = [t_k_naive(k).value for k in range(1, 21)]
    published = [T_TABLE[k] for k in range(1, 21)]
    assert closed == published, f"closed-form route diverges: {closed}"
    assert naive == published, f"enumeration route diverges: {naive}"
    assert time.perf_counter() - start < 1.0


def test_criterion_02():
    """S(k) matches published for k <= 8; k = 9..20 flagged parity-inconsistent; < 1 s."""
    start = time.perf_counter()
    recomputed = {k: s_k_fast(k).value for k in range(1, 21)}
    for k in range(1, 9):
        assert recomputed[k] == S_TABLE[k], f"k={k} should match the published value"
    assert [recomputed[k] for k in range(1, 21)] == S_RECOMPUTED
    flagged = compare_s_table(recomputed)
    assert [d.k for d in flagged] == list(range(9, 21)), "exactly k = 9..20 must be flagged"
    for d in flagged:
        assert "parity" in d.note, f"k={d.k}: discrepancy must cite the parity law"
        assert d.recomputed == S_RECOMPUTED[d.k - 1], f"k={d.k}: oracle value must be emitted"
    assert time.perf_counter() - start < 1.0


def test_criterion_03():
    """Theta reciprocity to 300 and exact Dedekind reciprocity to 100; 0 failures; < 30 s."""
    start = time.perf_counter()
    theta = verify_reciprocity_theta(300)
    dede = verify_reciprocity_dedekind(100)
    assert theta.passed and theta.cases == 18_281, theta.to_text()
    assert dede.passed and dede.cases == 3_044, dede.to_text()
    assert time.perf_counter() - start < 30.0


def test_criterion_04():
    """Fast = naive exhaustively (S to 512, T to 128) plus 10^5 floor-sum tuples; < 60 s."""
    start = time.perf_counter()
    report = verify_fast_equivalence(512, 512)
    assert report.passed, report.to_text()
    assert report.cases == 254_832, "frozen case count changed — ranges drifted"
    assert time.perf_counter() - start < 60.0


def test_criterion_05():
    """Double-sum identities to 2000, pairing to 500, lower bounds to 10^4; < 5 min."""
    start = time.perf_counter()
    double = verify_double_sum(2000)
    pairing = verify_pairing(500)
    bounds = verify_lower_bounds(10**4)
    assert double.passed and double.cases == 1_208, double.to_text()
    assert pairing.passed and pairing.cases == 876_975, pairing.to_text()
    assert bounds.passed and bounds.cases == 2_893_802, bounds.to_text()
    assert time.perf_counter() - start < 300.0


def test_criterion_06(prime_scan_50k):
    """2k/3k exception lists and the 4k window match the published data; < 10 min."""
    start = time.perf_counter()
    scan = prime_scan_50k.result

    two_k = [k for k, _ in scan.exceptions["2k"]]
    assert [k for k in two_k if k < 10**4] == list(EXCEPTIONS_2K)
    assert two_k == list(EXCEPTIONS_2K), "no 2k exceptions may exist beyond 233"

    three_k = [k for k, _ in scan.exceptions["3k"]]
    assert three_k == list(EXCEPTIONS_3K)
    assert len(three_k) == 87 and max(three_k) == 3_119

    lo, hi = EXCEPTIONS_4K_WINDOW
    four_k_window = [(k, s) for k, s in scan.exceptions["4k"] if lo < k <= hi]
    assert four_k_window == list(EXCEPTIONS_4K), "4k window must equal the 8 published pairs"
    for k, s in four_k_window:
        assert (k - s) % 2 == 1, f"k={k}: S(k) must have parity opposite to k"
        assert s % 4 == (0 if k % 4 == 1 else 2), f"k={k}: mod-4 law violated"

    for threshold in ("0", "2k", "3k", "4k"):
        diffs = compare_threshold_exceptions(
            threshold, list(scan.exceptions[threshold]), scan.limit)
        assert diffs == [], [d.line() for d in diffs]

    assert prime_scan_50k.seconds + (time.perf_counter() - start) < 600.0


def test_criterion_07():
    """Census at 10^4: 151 = 39+8+104+0, plus the pinned spot values; < 15 min."""
    start = time.perf_counter()

    census = negative_census(10**4)
    assert (census.total, census.div3_not5, census.div5_not3,
            census.div15, census.other) == (151, 39, 8, 104, 0)
    assert compare_census(census) == []
    assert census.limit < 10_395, "10395 must lie outside the 10^4 run"

    spots = {945: -296, 9975: -22450, 3465: -7800}
    for k, expected in spots.items():
        assert s_k_fast(k).value == expected, f"S({k}) must equal {expected}"

    beyond = negative_census(10_395)
    assert (10_395, -40_726) in beyond.extremes
    assert s_k_fast(10_395).value == -40_726

    wide = negative_census(20_000)
    assert s_k_fast(17_017).value == -2_364
    assert s_k_fast(19_019).value == -20_578
    assert (19_019, -20_578) in wide.extremes       # below -k
    assert wide.other == 2, "exactly 17017 and 19019 avoid both 3 and 5"

    assert time.perf_counter() - start < 900.0


def test_criterion_08(sieve_10m):
    """Asymptotics at sieve 10^7: constants, T-link, Dirichlet, error decay; < 5 min."""
    start = time.perf_counter()
    tables = sieve_10m.tables
    consts = compute_constants()

    # (a) closed-form constant identity at double precision.
    assert abs(consts.A - (12 * consts.gamma - 3 + 10 * math.log(2))) < 1e-12

    # (b) T(k) = 2k - 1 - 2*a_k for every odd k <= 10^4, two independent
    # a_k routes (linear sieve vs per-k factorization inside t_k_closed).
    for k in range(1, 10**4, 2):
        assert t_k_closed(k).value == 2 * k - 1 - 2 * int(tables.a[k]), k
    for k in range(1, 1002, 100):   # spot the enumeration oracle on the same law
        assert t_k_naive(k).value == 2 * k - 1 - 2 * int(tables.a[k]), k

    # (c) Dirichlet spot checks within 10^-3 of the zeta closed forms.
    check = dirichlet_spot_check(4.0, 10**5, tables)
    assert abs(check.f_series - check.f_closed) < 1e-3
    assert abs(check.g_series - check.g_closed) < 1e-3

    # (d) relative error below 0.05 at 10^6 and decreasing across decades.
    xs = [10**3, 10**4, 10**5, 10**6, 10**7]
    samples, slope = error_scan(xs, tables, consts)
    rels = [s.rel_err for s in samples]
    assert rels[3] < 0.05
    assert all(a > b for a, b in zip(rels, rels[1:])), rels

    # (e) fitted error exponent at most 1.7.
    assert slope is not None and slope <= 1.7, slope

    assert sieve_10m.seconds + (time.perf_counter() - start) < 300.0


def test_criterion_09(prime_scan_50k):
    """No prime counterexamples beyond the published frontiers up to 5*10^4."""
    scan = prime_scan_50k.result
    # Positivity: no prime with S(k) < 0 at all (even below k = 5).
    assert scan.exceptions["0"] == ()
    assert all(k <= 233 for k, _ in scan.exceptions["2k"])
    assert all(k <= 3_119 for k, _ in scan.exceptions["3k"])
    # Consistency confirmations only — the scan proves nothing beyond 5*10^4.
    assert scan.limit == 50_000


class _Abort(Exception):
    pass


def test_criterion_10(tmp_path):
    """Byte-identical output across thread counts and across interrupt/resume; < 5 min."""
    start = time.perf_counter()
    limit = 5_000

    single = scan_thresholds(limit, primes_only=True, workers=1)
    threaded = scan_thresholds(limit, primes_only=True, workers=4)
    buf_single, buf_threaded = io.StringIO(), io.StringIO()
    write_records_csv(single.records, buf_single)
    write_records_csv(threaded.records, buf_threaded)
    assert buf_single.getvalue() == buf_threaded.getvalue(), "thread count changed the bytes"

    calls = {"n": 0}

    def interrupter(done, total):
        calls["n"] += 1
        if calls["n"] == 1:
            raise _Abort

    path = str(tmp_path / "resume.ckpt")
    with pytest.raises(_Abort):
        scan_thresholds(limit, primes_only=True, workers=4,
                        checkpoint_path=path, progress=interrupter)
    partial = load_checkpoint(path)
    n_primes = len(single.records)
    assert 0 < len(partial.completed_ks()) < n_primes, "interrupt must leave a partial state"

    resumed = scan_thresholds(limit, primes_only=True, workers=4, checkpoint_path=path)
    buf_resumed = io.StringIO()
    write_records_csv(resumed.records, buf_resumed)
    assert buf_resumed.getvalue() == buf_single.getvalue(), "resume changed the bytes"
    assert resumed.exceptions == single.exceptions

    assert time.perf_counter() - start < 300.0

"""Fast-path kernels against the enumeration oracles, plus sieve tables."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetasums.exact import s_hk_naive, s_k_naive, t_hk_naive, t_k_naive
from thetasums.kernels import (
    SieveTables,
    a_n_single,
    build_sieves,
    gcd_sum_odd,
    r_jk,
    s_hk_fast,
    s_k_fast,
    t_hk_closed,
    t_k_closed,
)


def test_s_hk_fast_equals_naive_small():
    for k in range(1, 200):
        for h in range(1, k + 1):
            assert s_hk_fast(h, k).value == s_hk_naive(h, k).value, (h, k)


def test_s_hk_fast_h_above_k():
    for k in range(1, 60):
        for h in range(k + 1, 4 * k + 1):
            assert s_hk_fast(h, k).value == s_hk_naive(h, k).value, (h, k)


@settings(derandomize=True, max_examples=150, deadline=None)
@given(h=st.integers(1, 10**6), k=st.integers(1, 10**5))
def test_s_hk_fast_random_pairs(h, k):
    assert s_hk_fast(h, k).value == s_hk_naive(h, k).value


def test_s_hk_fast_beyond_jit_guard():
    # h*k >= 2^62 forces the exact big-integer route; values must still agree.
    k = 101
    h = (1 << 62) // k + 12345
    assert s_hk_fast(h, k).value == s_hk_naive(h, k).value


def test_aggregates_match_naive():
    for k in range(1, 300):
        assert s_k_fast(k).value == s_k_naive(k).value, k
        assert t_k_closed(k).value == t_k_naive(k).value, k


def test_t_hk_closed_full_h_range():
    for k in range(1, 64):
        for h in range(1, 2 * k):
            assert t_hk_closed(h, k).value == t_hk_naive(h, k).value, (h, k)


def test_t_hk_closed_methods():
    assert t_hk_closed(3, 5).method == "closed-form"   # both odd
    assert t_hk_closed(3, 8).method == "closed-form"   # k even, h odd
    assert t_hk_closed(4, 8).method == "naive"         # doubly even, v2 differs
    assert t_hk_closed(4, 4).method == "closed-form"   # doubly even, v2 equal
    assert t_hk_closed(4, 8).value == 1                # the closed form 1-2*gcd would give -7


def test_r_jk_counts():
    for k in range(2, 80):
        for j in range(1, k):
            brute = sum(1 for h in range(1, k) if ((h * j) // k) % 2 == 1)
            assert r_jk(j, k) == brute, (j, k)


def test_gcd_sum_odd_and_a_n():
    for k in range(1, 200, 2):
        brute = sum(math.gcd(k, h) for h in range(1, 2 * k, 2))
        assert gcd_sum_odd(k) == brute, k
    with pytest.raises(ValueError):
        gcd_sum_odd(2)
    # a_n: zero at even n, divisor-totient sum at odd n.
    assert [a_n_single(n) for n in range(1, 10)] == [1, 0, 5, 0, 9, 0, 13, 0, 21]
    assert a_n_single(15) == a_n_single(3) * a_n_single(5) == 45
    for n in range(1, 400, 2):
        assert a_n_single(n) == gcd_sum_odd(n), n


def test_build_sieves_tables():
    tables = build_sieves(2000)
    assert isinstance(tables, SieveTables)
    assert tables.limit == 2000
    # Euler phi and smallest prime factor against direct computation.
    for n in range(2, 400):
        assert tables.phi[n] == sum(1 for m in range(1, n + 1) if math.gcd(m, n) == 1)
        assert tables.spf[n] == min(p for p in range(2, n + 1) if n % p == 0)
    for n in range(1, 2001):
        assert tables.a[n] == a_n_single(n), n
    primes = [p for p in range(2, 2001)
              if all(p % q for q in range(2, int(p**0.5) + 1))]
    assert tables.primes.tolist() == primes
    assert [int(n) for n in np.nonzero(tables.prime_flags)[0]] == primes


def test_sieve_tables_read_only():
    tables = build_sieves(100)
    with pytest.raises(ValueError):
        tables.phi[3] = 99


def test_t_k_closed_odd_link_to_a_n():
    for k in range(1, 500, 2):
        assert t_k_closed(k).value == 2 * k - 1 - 2 * a_n_single(k), k

"""Exact-value and property tests for the Euclidean floor-sum kernel."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetasums.floorsum import floor_sum


def brute(n: int, m: int, a: int, b: int) -> int:
    return sum((a * i + b) // m for i in range(n))


def test_empty_and_single_term():
    assert floor_sum(0, 7, 3, 5) == 0
    assert floor_sum(1, 7, 3, 5) == 5 // 7
    assert floor_sum(1, 7, 3, -5) == -5 // 7 == -1


def test_known_small_values():
    # Σ_{i=0}^{9} ⌊(3i+1)/4⌋ = 0+1+1+2+3+4+4+5+6+7 = 33
    assert floor_sum(10, 4, 3, 1) == brute(10, 4, 3, 1) == 33
    assert floor_sum(6, 5, 4, 3) == brute(6, 5, 4, 3) == 13


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        floor_sum(5, 0, 1, 1)
    with pytest.raises(ValueError):
        floor_sum(5, -3, 1, 1)
    with pytest.raises(ValueError):
        floor_sum(-1, 3, 1, 1)


@settings(derandomize=True, max_examples=400, deadline=None)
@given(
    n=st.integers(0, 80),
    m=st.integers(1, 60),
    a=st.integers(-150, 150),
    b=st.integers(-150, 150),
)
def test_matches_brute_force(n, m, a, b):
    assert floor_sum(n, m, a, b) == brute(n, m, a, b)


@settings(derandomize=True, max_examples=100, deadline=None)
@given(
    n=st.integers(1, 50),
    m=st.integers(1, 50),
    a=st.integers(0, 100),
    b=st.integers(0, 100),
    shift=st.integers(-5, 5),
)
def test_slope_shift_identity(n, m, a, b, shift):
    # Adding shift*m to the slope adds shift * Σ i analytically.
    lhs = floor_sum(n, m, a + shift * m, b)
    rhs = floor_sum(n, m, a, b) + shift * (n * (n - 1) // 2)
    assert lhs == rhs


def test_large_arguments_exact():
    # Cross-check one big case against the direct big-integer sum.
    n, m, a, b = 10**5, 998_244_353, 10**12 + 7, -(10**9)
    assert floor_sum(n, m, a, b) == brute(n, m, a, b)


def test_huge_case_closed_form():
    # With m = 1 the sum telescopes to a*n(n-1)/2 + b*n regardless of size.
    n, a, b = 10**9, 10**9, -(10**15)
    assert floor_sum(n, 1, a, b) == a * n * (n - 1) // 2 + b * n

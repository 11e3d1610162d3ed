"""Euclidean kernel for sums of floor((a*i + b) / m).

``floor_sum(n, m, a, b)`` evaluates Σ_{i=0}^{n-1} ⌊(a·i+b)/m⌋ exactly in
O(log max(a, m)) arithmetic operations, for arbitrary (including negative)
integer slope ``a`` and offset ``b``.  This is the workhorse behind the fast
evaluation of S(h,k): the alternating sign (−1)^⌊x⌋ is rewritten through
⌊x⌋ − 2⌊x/2⌋ and each resulting progression collapses to one kernel call.

All arithmetic is exact Python integers, so there is no overflow; a JIT
int64 twin for the hot paths lives in ``_accel``.
"""

from __future__ import annotations

__all__ = ["floor_sum"]


def floor_sum(n: int, m: int, a: int, b: int) -> int:
    """Return Σ_{i=0}^{n-1} ⌊(a·i + b) / m⌋ with mathematical floor.

    Negative ``a``/``b`` are shifted into [0, m) first; the linear
    correction the shift introduces is added analytically, so the main
    Euclidean loop only ever sees nonnegative parameters.

    Raises ValueError for n < 0 and a domain error for m < 1.
    """
    if m <= 0:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if n < 0:
        raise ValueError(f"term count must be >= 0, got {n}")
    total = 0
    if a < 0:
        a2 = a % m
        total -= n * (n - 1) // 2 * ((a2 - a) // m)
        a = a2
    if b < 0:
        b2 = b % m
        total -= n * ((b2 - b) // m)
        b = b2
    # Classic Euclidean descent: strip whole quotients, then swap the
    # roles of slope and modulus, like the gcd algorithm.
    while True:
        if a >= m:
            total += n * (n - 1) // 2 * (a // m)
            a %= m
        if b >= m:
            total += n * (b // m)
            b %= m
        y_max = a * n + b
        if y_max < m:
            return total
        n, b = divmod(y_max, m)
        m, a = a, m

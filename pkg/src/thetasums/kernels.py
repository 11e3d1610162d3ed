"""Sub-quadratic kernels for the theta sums and their supporting tables.

* ``s_hk_fast`` — O(log(h+k)) evaluation of S(h,k).  Split the alternating
  sum over j into the odd progression j = 2i+1 and the even progression
  j = 2i+2; on each, (−1)^⌊hj/k⌋ = 1 − 2(⌊hj/k⌋ − 2⌊hj/(2k)⌋) turns the
  sign sum into four Euclidean floor sums.
* ``s_k_fast`` — O(k log k) composition of per-h fast sums (valid for every
  k, prime or not; equivalence with the enumeration oracle is a tested
  contract, since no closed form exists for general k).
* ``t_hk_closed`` / ``t_k_closed`` — gcd/totient closed forms by residue
  class, with the enumeration fallback for the uncovered classes.
* ``r_jk`` — #{h < k : ⌊hj/k⌋ odd}: coprime arguments use the closed
  first moment (j−1)(k−1)/2 minus a floor-sum correction; non-coprime
  arguments are counted directly.
* ``build_sieves`` — linear sieve for φ, smallest prime factor, primality,
  and the odd-n divisor–totient convolution a_n (multiplicative fill,
  a(p^e) = p^e + e·p^{e−1}(p−1), verified against ``a_n_single`` in tests).

Accumulators: exact Python ints on the portable paths; the JIT twins are
used only where products provably fit int64 (h·k < 2^62, k ≤ 2^31), so no
route can wrap around silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .exact import MAX_MODULUS, SumValue, _check_hk
from .floorsum import floor_sum

__all__ = [
    "SieveTables",
    "s_hk_fast",
    "s_k_fast",
    "r_jk",
    "gcd_sum_odd",
    "t_hk_closed",
    "t_k_closed",
    "a_n_single",
    "build_sieves",
]

_JIT_GUARD = 1 << 62


def s_hk_fast(h: int, k: int) -> SumValue:
    """S(h,k) in O(log(h+k)) via the four-floor-sum decomposition."""
    _check_hk(h, k)
    if h * k < _JIT_GUARD:
        return SumValue(int(_accel.s_hk_i64(h, k)), "fast")
    n_odd = k // 2
    n_even = (k - 1) // 2
    odd = (
        n_odd
        - 2 * floor_sum(n_odd, k, 2 * h, h)
        + 4 * floor_sum(n_odd, 2 * k, 2 * h, h)
    )
    even = (
        n_even
        - 2 * floor_sum(n_even, k, 2 * h, 2 * h)
        + 4 * floor_sum(n_even, 2 * k, 2 * h, 2 * h)
    )
    return SumValue(odd - even, "fast")


def s_k_fast(k: int) -> SumValue:
    """S(k) = Σ_h S(h,k) with every term on the fast path; O(k log k)."""
    _check_hk(1, k)
    return SumValue(int(_accel.s_k_i64(k)), "fast")


def r_jk(j: int, k: int) -> int:
    """#{h : 1 ≤ h ≤ k−1, ⌊hj/k⌋ odd}.

    Coprime (j,k) admit the closed first moment Σ_h ⌊hj/k⌋ = (j−1)(k−1)/2,
    leaving one floor-sum call; otherwise the count is taken directly from
    the definition (the closed moment needs coprimality).
    """
    if k < 2 or not 1 <= j <= k - 1:
        raise ValueError(f"need 1 <= j <= k-1, got j={j}, k={k}")
    if math.gcd(j, k) == 1:
        return (j - 1) * (k - 1) // 2 - 2 * floor_sum(k - 1, 2 * k, j, j)
    h = np.arange(1, k, dtype=np.int64)
    return int((((h * j) // k) & 1).sum())


def gcd_sum_odd(k: int) -> int:
    """Σ gcd(k,h) over odd h in [1, 2k−1]; equals Σ_{d|k} d·φ(k/d)."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"k must be odd and positive, got {k}")
    h = np.arange(1, 2 * k, 2, dtype=np.int64)
    return int(np.gcd(h, k).sum())


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _phi_from_factors(factors: list[tuple[int, int]]) -> int:
    phi = 1
    for p, e in factors:
        phi *= (p - 1) * p ** (e - 1)
    return phi


def a_n_single(n: int) -> int:
    """a_n: 0 for even n, else the divisor sum Σ_{d|n} d·φ(n/d).

    This is the definitional reference the sieve's multiplicative fill is
    verified against; it enumerates divisors explicitly.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n % 2 == 0:
        return 0
    factors = _factorize(n)
    divisors = [1]
    for p, e in factors:
        divisors = [d * p**i for d in divisors for i in range(e + 1)]
    total = 0
    for d in divisors:
        m = n // d
        total += d * _phi_from_factors(_factorize(m))
    return total


def t_hk_closed(h: int, k: int) -> SumValue:
    """T(h,k) by residue-class closed forms, enumeration fallback otherwise.

    Covered classes: both odd → 1 − 2·gcd(h,k); k even, h odd → 1;
    k≡2, h≡0 (mod 4) → 1; k≡2, h≡2 (mod 4) → 1 − 2·gcd;
    k≡0, h≡0 (mod 4) with equal 2-adic valuation → 1 − 2·gcd;
    k odd, h even coprime → 1.

    The doubly-even class carries the valuation restriction because the
    unrestricted form is simply false off it: with d = gcd(h,k), pairing
    j ↔ 2k−j cancels everything except multiples of k/d, which force
    T = 1 − 2d exactly when h/d and k/d are both odd and T = 1 otherwise
    (witness T(4,8) = 1, consistent with T(8) = −1, not 1 − 2·4).
    Everything else (k≡0 mod 4 with v₂(h) ≠ v₂(k) or h≡2 mod 4; k odd
    with even non-coprime h) delegates to the enumeration oracle and is
    tagged method="naive".
    """
    _check_hk(h, k)
    if k % 2 == 1:
        if h % 2 == 1:
            return SumValue(1 - 2 * math.gcd(h, k), "closed-form")
        if math.gcd(h, k) == 1:
            return SumValue(1, "closed-form")
    else:
        if h % 2 == 1:
            return SumValue(1, "closed-form")
        km, hm = k % 4, h % 4
        if km == 2 and hm == 0:
            return SumValue(1, "closed-form")
        if km == 2 and hm == 2:
            return SumValue(1 - 2 * math.gcd(h, k), "closed-form")
        if km == 0 and hm == 0 and (h & -h) == (k & -k):
            return SumValue(1 - 2 * math.gcd(h, k), "closed-form")
    from .exact import t_hk_naive

    return SumValue(t_hk_naive(h, k).value, "naive")


def t_k_closed(k: int) -> SumValue:
    """T(k) closed form: divisor–totient sum for odd k, gcd sweep for even.

    odd k:  T(k) = 2k − 1 − 2·Σ_{d|k} d·φ(k/d)
    even k: T(k) = 2k − 1 − Σ_{h ≡ 2 (mod 4), h < 2k} 2·gcd(h,k)
    """
    _check_hk(1, k)
    if k % 2 == 1:
        return SumValue(2 * k - 1 - 2 * a_n_single(k), "closed-form")
    h = np.arange(2, 2 * k, 4, dtype=np.int64)
    return SumValue(2 * k - 1 - 2 * int(np.gcd(h, k).sum()), "closed-form")


@dataclass(frozen=True)
class SieveTables:
    """Immutable number-theoretic tables up to ``limit`` (shared read-only).

    ``phi[n]`` = Euler totient, ``spf[n]`` = smallest prime factor,
    ``a[n]`` = odd-n divisor–totient convolution (0 for even n),
    ``prime_flags[n]`` = primality, ``primes`` = ascending prime list.
    Index 0 of each table is unused padding.
    """

    limit: int
    phi: np.ndarray = field(repr=False)
    spf: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)
    prime_flags: np.ndarray = field(repr=False)
    primes: np.ndarray = field(repr=False)

    def __post_init__(self):
        for arr in (self.phi, self.spf, self.a, self.prime_flags, self.primes):
            arr.setflags(write=False)


def build_sieves(limit: int) -> SieveTables:
    """Linear-sieve construction of all tables in one O(limit) pass."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit > MAX_MODULUS:
        raise ValueError(f"limit={limit} exceeds the supported range")
    phi, spf, a, flags, primes = _accel.sieve_fill(limit)
    return SieveTables(limit=limit, phi=phi, spf=spf, a=a,
                       prime_flags=flags, primes=primes)

"""numba int64 kernels for the hot paths.

Pure-Python exact twins of everything here live in ``floorsum``/``kernels``;
callers route into this module only when the relevant products provably fit
int64 (the wrappers guard h·k < 2^62 and k ≤ 2^31).  All kernels release the
GIL so scan workers can overlap, and are cached to keep repeat start-up cheap.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = [
    "floor_sum_i64",
    "s_hk_i64",
    "s_k_i64",
    "s_k_batch",
    "s_hk_batch",
    "r_jk_i64",
    "r_block_check",
    "chain_sums",
    "pairing_scan",
    "sieve_fill",
]


@njit("i8(i8,i8,i8,i8)", cache=True, nogil=True)
def floor_sum_i64(n, m, a, b):
    """int64 twin of floorsum.floor_sum (caller guarantees no overflow)."""
    total = 0
    if a < 0:
        a2 = a % m
        total -= n * (n - 1) // 2 * ((a2 - a) // m)
        a = a2
    if b < 0:
        b2 = b % m
        total -= n * ((b2 - b) // m)
        b = b2
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
        n = y_max // m
        b = y_max - n * m
        t = m
        m = a
        a = t


@njit("i8(i8,i8)", cache=True, nogil=True)
def s_hk_i64(h, k):
    """S(h,k) via four floor-sum calls (odd/even j progressions)."""
    n_odd = k // 2          # count of odd j in [1, k-1]
    n_even = (k - 1) // 2   # count of even j in [1, k-1]
    odd = (
        n_odd
        - 2 * floor_sum_i64(n_odd, k, 2 * h, h)
        + 4 * floor_sum_i64(n_odd, 2 * k, 2 * h, h)
    )
    even = (
        n_even
        - 2 * floor_sum_i64(n_even, k, 2 * h, 2 * h)
        + 4 * floor_sum_i64(n_even, 2 * k, 2 * h, 2 * h)
    )
    return odd - even


@njit("i8(i8)", cache=True, nogil=True)
def s_k_i64(k):
    total = 0
    for h in range(1, k):
        total += s_hk_i64(h, k)
    return total


@njit("i8[:](i8[:])", cache=True, nogil=True)
def s_k_batch(ks):
    out = np.empty(ks.size, np.int64)
    for i in range(ks.size):
        out[i] = s_k_i64(ks[i])
    return out


@njit("i8[:](i8[:],i8[:])", cache=True, nogil=True)
def s_hk_batch(hs, ks):
    out = np.empty(ks.size, np.int64)
    for i in range(ks.size):
        out[i] = s_hk_i64(hs[i], ks[i])
    return out


@njit("i8(i8,i8)", cache=True, nogil=True)
def r_jk_i64(j, k):
    """Count of h in [1,k-1] with ⌊hj/k⌋ odd, for gcd(j,k)=1 (closed path)."""
    return (j - 1) * (k - 1) // 2 - 2 * floor_sum_i64(k - 1, 2 * k, j, j)


@njit("i8[:](i8)", cache=True, nogil=True)
def r_block_check(k):
    """Per-odd-prime bound sweep used by the lower-bound suite.

    For odd k (prime in the callers), over all odd j in [1, k-1]:
      * accumulates Σ r(j,k),
      * records the first j violating 2j·r(j,k) ≤ jk − k + j² − j (0 if none).
    Returns [r_total, first_bad_j, first_bad_r].
    """
    out = np.zeros(3, np.int64)
    for j in range(1, k, 2):
        r = (j - 1) * (k - 1) // 2 - 2 * floor_sum_i64(k - 1, 2 * k, j, j)
        out[0] += r
        if 2 * j * r > j * k - k + j * j - j and out[1] == 0:
            out[1] = j
            out[2] = r
    return out


@njit("i8[:](i8)", cache=True, nogil=True)
def chain_sums(k):
    """Exact building blocks of the odd-count chain for odd k.

    Returns [msum, B, N] where, with half = (k-1)/2:
      msum = Σ_{j=1}^{k-1} #{h ≤ half : ⌊(2h+k)j/k⌋ odd}
      B    = Σ_{ℓ,h=1}^{half} ( ⌊2hℓ/k⌋ + ⌊(2h(2ℓ−1) − k)/(2k)⌋ )
      N    = Σ_{ℓ,h=1}^{half} ( 2·((2hℓ) mod k) + ((2h(2ℓ−1) − k) mod 2k) )

    N is the fractional-part double sum scaled by the common denominator 2k.
    All three are definitional enumerations (no floor-sum shortcuts), so they
    independently witness the identities tying them to S(k).
    """
    half = (k - 1) // 2
    out = np.zeros(3, np.int64)
    for j in range(1, k):
        cnt = 0
        for h in range(1, half + 1):
            if (((2 * h + k) * j) // k) & 1:
                cnt += 1
        out[0] += cnt
    two_k = 2 * k
    for l in range(1, half + 1):
        for h in range(1, half + 1):
            u = (2 * h * l) % k
            w = 2 * h * (2 * l - 1) - k
            v = w % two_k
            out[1] += (2 * h * l) // k + (w - v) // two_k
            out[2] += 2 * u + v
    return out


@njit("i8[:](i8)", cache=True, nogil=True)
def pairing_scan(k):
    """Classify every paired fractional-part term for odd prime k.

    For 1 ≤ m < (k+1)/4 and 1 ≤ h ≤ (k-1)/2, with f(ℓ,h) scaled by 2k:
    g(m,h) = f(m,h) + f((k-1)/2 − m + 1, h) must be an integer in {1,2,3}
    and must match the comparison-based case prediction
    (B→1, A1→2, A2→3, A3→2).  The k ≡ 3 (mod 4) unpaired column must equal
    2{h/2} + 1/2.

    Returns [violations, countB, countA1, countA2, countA3,
             first_bad_m, first_bad_h, unpaired_violations].
    """
    out = np.zeros(8, np.int64)
    half = (k - 1) // 2
    two_k = 2 * k
    # exclusive bound for m < (k+1)/4: the cutoff is fractional when k = 1 (mod 4)
    m_top = (k + 1) // 4 + (1 if k % 4 == 1 else 0)
    for m in range(1, m_top):
        l2 = half - m + 1
        for h in range(1, half + 1):
            f1 = 2 * ((2 * h * m) % k) + ((2 * h * (2 * m - 1) - k) % two_k)
            f2 = 2 * ((2 * h * l2) % k) + ((2 * h * (2 * l2 - 1) - k) % two_k)
            tot = f1 + f2
            g = tot // two_k
            ok = tot % two_k == 0
            u = h                  # k·{h/k}
            v = (2 * m * h) % k    # k·{2mh/k}
            if u > v:
                out[1] += 1
                ok = ok and g == 1
            elif 2 * (v - u) > k:
                out[2] += 1
                ok = ok and g == 2
            elif 2 * v > k:
                out[3] += 1
                ok = ok and g == 3
            else:
                out[4] += 1
                ok = ok and g == 2
            if not ok:
                out[0] += 1
                if out[5] == 0:
                    out[5] = m
                    out[6] = h
    if k % 4 == 3:
        l_un = (k + 1) // 4
        for h in range(1, half + 1):
            f = 2 * ((2 * h * l_un) % k) + ((2 * h * (2 * l_un - 1) - k) % two_k)
            want = 3 * k if h & 1 else k  # (2{h/2} + 1/2) · 2k
            if f != want:
                out[7] += 1
    return out


@njit(cache=True, nogil=True)
def sieve_fill(limit):
    """Linear sieve: φ, smallest prime factor, odd-n divisor convolution a_n.

    a_n = Σ_{d|n} d·φ(n/d) for odd n, 0 for even n; filled multiplicatively
    with a(p^e) = p^e + e·p^(e-1)·(p-1).  Returns
    (phi int32, spf int32, a int64, is_prime bool, primes int32).
    """
    phi = np.zeros(limit + 1, np.int32)
    spf = np.zeros(limit + 1, np.int32)
    a = np.zeros(limit + 1, np.int64)
    is_prime = np.zeros(limit + 1, np.bool_)
    pw = np.zeros(limit + 1, np.int32)  # spf-power part of n
    ex = np.zeros(limit + 1, np.uint8)  # exponent of spf in n
    primes = np.empty(limit + 1, np.int32)
    np_count = 0
    if limit >= 1:
        phi[1] = 1
        a[1] = 1
        pw[1] = 1
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            phi[i] = i - 1
            pw[i] = i
            ex[i] = 1
            a[i] = 2 * i - 1  # a(p) = p + (p-1)
            is_prime[i] = True
            primes[np_count] = i
            np_count += 1
        ii = np.int64(i)
        for idx in range(np_count):
            p = np.int64(primes[idx])
            j = ii * p
            if p > spf[i] or j > limit:
                break
            spf[j] = p
            if i % p == 0:
                phi[j] = phi[i] * p
                pw[j] = pw[i] * p
                ex[j] = ex[i] + 1
                e = np.int64(ex[j])
                pe = np.int64(pw[j])
                apw = pe + e * (pe // p) * (p - 1)
                a[j] = apw * a[j // pe]
            else:
                phi[j] = phi[i] * (p - 1)
                pw[j] = p
                ex[j] = 1
                a[j] = (2 * p - 1) * a[i]
    for n in range(2, limit + 1, 2):
        a[n] = 0
    return phi, spf, a, is_prime, primes[:np_count].copy()

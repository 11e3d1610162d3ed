"""Reference (oracle) implementations of the alternating theta sums.

Everything here evaluates the defining sums by direct enumeration:

    S(h,k) = Σ_{j=1}^{k-1}  (−1)^{j+1+⌊hj/k⌋}
    S(k)   = Σ_{h=1}^{k-1}  S(h,k)
    T(h,k) = Σ_{j=1}^{2k-1} (−1)^{j+1+⌊hj/k⌋}
    T(k)   = Σ_{h=1}^{2k-1} T(h,k)

plus the exact-rational sawtooth ((x)) and the Dedekind sum s(d,c).

These are the ground truth the accelerated kernels are tested against, so
they stay deliberately literal: enumeration is vectorized with numpy for
usable sweep speed but never reuses the Euclidean floor-sum machinery of
the fast path.  Integer arithmetic is exact everywhere (numpy is only used
where products provably fit int64; otherwise we fall back to Python ints).
Rational results are `fractions.Fraction` values, normalized by
construction, with denominators dividing 4c² for s(d,c).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "MAX_MODULUS",
    "SumValue",
    "s_hk_naive",
    "s_k_naive",
    "t_hk_naive",
    "t_k_naive",
    "sawtooth",
    "dedekind_s",
]

# Inputs with k above this are refused (range error) so that every code
# path, including the int64 JIT kernels, stays provably exact.
MAX_MODULUS = 1 << 31

# numpy enumeration is used only while h * j_max stays below this; the
# margin under 2^63 keeps intermediate sums safe as well.
_I64_GUARD = 1 << 62

# Row block for the h×j outer-product sweeps (bounds peak memory).
_BLOCK_ELEMS = 1 << 22


@dataclass(frozen=True)
class SumValue:
    """Exact signed result of an S/T evaluation plus the producing method."""

    value: int
    method: str  # one of {"naive", "fast", "closed-form"}

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SumValue):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)


def _check_hk(h: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"modulus k must be >= 1, got {k}")
    if h < 1:
        raise ValueError(f"argument h must be >= 1, got {h}")
    if k > MAX_MODULUS:
        raise ValueError(f"k={k} exceeds the supported range (k <= 2^31)")


def _alternating_sum(h: int, k: int, j_upper: int) -> int:
    """Σ_{j=1}^{j_upper} (−1)^{j+1+⌊hj/k⌋}, exact."""
    if j_upper <= 0:
        return 0
    if h * j_upper < _I64_GUARD:
        total = 0
        for lo in range(1, j_upper + 1, _BLOCK_ELEMS):
            hi = min(lo + _BLOCK_ELEMS, j_upper + 1)
            j = np.arange(lo, hi, dtype=np.int64)
            e = (j + 1 + (h * j) // k) & 1
            total += int(e.size - 2 * int(e.sum()))
        return total
    # Exact big-integer fallback; only reachable for enormous h.
    return sum(-1 if (j + 1 + (h * j) // k) & 1 else 1 for j in range(1, j_upper + 1))


def s_hk_naive(h: int, k: int) -> SumValue:
    """S(h,k) by direct enumeration of the k−1 alternating terms."""
    _check_hk(h, k)
    return SumValue(_alternating_sum(h, k, k - 1), "naive")


def t_hk_naive(h: int, k: int) -> SumValue:
    """T(h,k) by direct enumeration of the 2k−1 alternating terms."""
    _check_hk(h, k)
    return SumValue(_alternating_sum(h, k, 2 * k - 1), "naive")


def _grid_sum(k: int, h_upper: int, j_upper: int) -> int:
    """Σ_{h=1}^{h_upper} Σ_{j=1}^{j_upper} (−1)^{j+1+⌊hj/k⌋} via blocked numpy."""
    if h_upper <= 0 or j_upper <= 0:
        return 0
    if h_upper * j_upper >= _I64_GUARD:
        return sum(_alternating_sum(h, k, j_upper) for h in range(1, h_upper + 1))
    j = np.arange(1, j_upper + 1, dtype=np.int64)
    rows = max(1, _BLOCK_ELEMS // j_upper)
    total = 0
    for lo in range(1, h_upper + 1, rows):
        hi = min(lo + rows, h_upper + 1)
        hcol = np.arange(lo, hi, dtype=np.int64)[:, None]
        e = (j[None, :] + 1 + (hcol * j[None, :]) // k) & 1
        total += int(e.size - 2 * int(e.sum()))
    return total


def s_k_naive(k: int) -> SumValue:
    """S(k) = Σ_h S(h,k), the O(k²) ground-truth oracle."""
    _check_hk(1, k)
    return SumValue(_grid_sum(k, k - 1, k - 1), "naive")


def t_k_naive(k: int) -> SumValue:
    """T(k) = Σ_{h=1}^{2k-1} T(h,k), direct O(k²) enumeration."""
    _check_hk(1, k)
    return SumValue(_grid_sum(k, 2 * k - 1, 2 * k - 1), "naive")


def sawtooth(p: int, q: int) -> Fraction:
    """((p/q)): 0 at integers, else p/q − ⌊p/q⌋ − 1/2, exact.

    The residue form (2·(p mod q) − q) / (2q) realizes both branches at
    once except at integers, where it must be forced to 0.
    """
    if q < 1:
        raise ValueError(f"denominator must be >= 1, got {q}")
    r = p % q
    if r == 0:
        return Fraction(0)
    return Fraction(2 * r - q, 2 * q)


def dedekind_s(d: int, c: int) -> Fraction:
    """Dedekind sum s(d,c) = Σ_{j=1}^{c-1} ((dj/c)) ((j/c)), exact.

    Accumulates the integer numerator over the common denominator 4c²
    (each nonzero term is (2(dj mod c) − c)(2j − c) / 4c²), so the result
    is a single normalized Fraction with denominator dividing 4c².
    """
    if c < 1:
        raise ValueError(f"modulus must be >= 1, got {c}")
    if d < 1:
        raise ValueError(f"argument must be >= 1, got {d}")
    if c == 1:
        return Fraction(0)
    # Vector path is safe while the c-term sum of c²-sized products fits
    # int64 (c³ < 2^63) and d·j stays an exact int64 product.
    if c <= 10**6 and d * (c - 1) < _I64_GUARD:
        j = np.arange(1, c, dtype=np.int64)
        r = (d * j) % c
        terms = (2 * r - c) * (2 * j - c)
        num = int(terms[r != 0].sum())
    else:  # pragma: no cover - exact big-integer fallback for huge inputs
        num = 0
        for jj in range(1, c):
            rr = (d * jj) % c
            if rr:
                num += (2 * rr - c) * (2 * jj - c)
    return Fraction(num, 4 * c * c)

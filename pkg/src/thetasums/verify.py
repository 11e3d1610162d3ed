"""Property suites for the theta-sum identities, bounds, and algorithm equivalences.

Each suite sweeps a stated hypothesis set over a configurable range in exact
arithmetic (floats appear only in the explicitly numeric harmonic-asymptotic
check), counts the cases it examined, and reports every counterexample found.
Suites are deterministic: identical inputs always produce identical reports.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, log
from typing import Callable

import numpy as np

from ._accel import chain_sums, pairing_scan, r_block_check, s_k_batch
from .asymptotics import compute_constants
from .exact import (
    dedekind_s,
    s_hk_naive,
    s_k_naive,
    t_hk_naive,
    t_k_naive,
)
from .floorsum import floor_sum
from .kernels import (
    a_n_single,
    build_sieves,
    gcd_sum_odd,
    r_jk,
    s_hk_fast,
    s_k_fast,
    t_hk_closed,
    t_k_closed,
)

__all__ = [
    "BoundWitness",
    "Failure",
    "VerificationReport",
    "SUITE_DEFAULTS",
    "SUITES",
    "make_bound_witness",
    "run_all",
    "run_suite",
    "verify_double_sum",
    "verify_elementary",
    "verify_fast_equivalence",
    "verify_lower_bounds",
    "verify_pairing",
    "verify_reciprocity_dedekind",
    "verify_reciprocity_theta",
]


@dataclass(frozen=True)
class Failure:
    """One counterexample: the inputs checked, what was expected, what came out."""

    inputs: tuple
    expected: str
    actual: str


@dataclass
class VerificationReport:
    """Outcome of one property suite over one range."""

    suite: str
    range: str
    cases: int
    failures: list[Failure] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "range": self.range,
            "cases": self.cases,
            "failures": [
                {
                    "inputs": list(f.inputs),
                    "expected": f.expected,
                    "actual": f.actual,
                }
                for f in self.failures
            ],
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"[{status}] {self.suite}: {self.cases} cases over {self.range} "
            f"({self.elapsed_ms:.1f} ms, {len(self.failures)} failures)"
        ]
        for f in self.failures[:20]:
            lines.append(f"  counterexample inputs={f.inputs} expected={f.expected} actual={f.actual}")
        if len(self.failures) > 20:
            lines.append(f"  ... and {len(self.failures) - 20} more")
        return "\n".join(lines)


@dataclass(frozen=True)
class BoundWitness:
    """Exact quantities entering the lower-bound and pairing arguments at (k, j, h, m).

    r counts indices h with floor(hj/k) odd; m counts h <= (k-1)/2 with
    floor((2h+k)j/k) odd; eps = r/k - (j-1)/(2j) exactly; H is the exact odd
    harmonic sum over odd indices below k; f = f(m, h) over denominator 2k;
    g = f(m, h) + f((k-1)/2 - m + 1, h), an integer in {1, 2, 3} whenever the
    pairing applies (1 <= m < (k+1)/4).
    """

    k: int
    j: int
    r: int
    m: int
    eps: Fraction
    H: Fraction
    f: Fraction
    g: int


def _m_jk(j: int, k: int) -> int:
    """#{h : 1 <= h <= (k-1)/2, floor((2h+k)j/k) odd}, by direct enumeration."""
    half = (k - 1) // 2
    return sum(1 for h in range(1, half + 1) if (((2 * h + k) * j) // k) & 1)


def _f_scaled(ell: int, h: int, k: int) -> int:
    """2k * ({2h*ell/k} + {h(2*ell - 1)/k - 1/2}) as an exact integer."""
    return 2 * ((2 * h * ell) % k) + ((2 * h * (2 * ell - 1) - k) % (2 * k))


def _odd_harmonic(k: int) -> Fraction:
    """H(k) = sum of 1/j over odd j <= k-1, exact."""
    return sum((Fraction(1, j) for j in range(1, k, 2)), Fraction(0))


def make_bound_witness(k: int, j: int, h: int = 1, m: int = 1) -> BoundWitness:
    """Assemble the exact bound quantities for odd k at index j and pair (m, h)."""
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be an odd integer >= 3")
    if not 1 <= j <= k - 1:
        raise ValueError("j must lie in [1, k-1]")
    r = r_jk(j, k)
    eps = Fraction(r, k) - Fraction(j - 1, 2 * j)
    half = (k - 1) // 2
    partner = half - m + 1
    g_scaled = _f_scaled(m, h, k) + _f_scaled(partner, h, k)
    if g_scaled % (2 * k) != 0:
        raise ValueError(f"pair sum at (m={m}, h={h}) is not an integer multiple of 2k")
    return BoundWitness(
        k=k,
        j=j,
        r=r,
        m=_m_jk(j, k),
        eps=eps,
        H=_odd_harmonic(k),
        f=Fraction(_f_scaled(m, h, k), 2 * k),
        g=g_scaled // (2 * k),
    )


def _timed(suite: str, rng: str, body: Callable[[list[Failure]], int]) -> VerificationReport:
    failures: list[Failure] = []
    start = time.perf_counter()
    cases = body(failures)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return VerificationReport(suite=suite, range=rng, cases=cases, failures=failures, elapsed_ms=elapsed_ms)


# ---------------------------------------------------------------------------
# reciprocity suites
# ---------------------------------------------------------------------------

def verify_reciprocity_theta(limit: int = 300) -> VerificationReport:
    """S(d,c) + S(c,d) = 1 for every coprime opposite-parity pair c, d <= limit."""
    if limit < 2:
        raise ValueError("limit must be at least 2")

    def body(failures: list[Failure]) -> int:
        cases = 0
        for c in range(1, limit + 1):
            for d in range(c + 1, limit + 1):
                if (c + d) % 2 == 0 or gcd(c, d) != 1:
                    continue
                cases += 1
                total = s_hk_fast(d, c).value + s_hk_fast(c, d).value
                if total != 1:
                    failures.append(Failure((c, d), "1", str(total)))
        return cases

    return _timed("reciprocity-theta", f"coprime opposite-parity pairs <= {limit}", body)


def verify_reciprocity_dedekind(limit: int = 100) -> VerificationReport:
    """s(c,d) + s(d,c) = -1/4 + (c/d + 1/(cd) + d/c)/12, exactly, for coprime pairs."""
    if limit < 1:
        raise ValueError("limit must be at least 1")

    def body(failures: list[Failure]) -> int:
        cases = 0
        quarter = Fraction(-1, 4)
        for c in range(1, limit + 1):
            for d in range(c, limit + 1):
                if gcd(c, d) != 1:
                    continue
                cases += 1
                lhs = dedekind_s(c, d) + dedekind_s(d, c)
                rhs = quarter + (Fraction(c, d) + Fraction(1, c * d) + Fraction(d, c)) / 12
                if lhs != rhs:
                    failures.append(Failure((c, d), str(rhs), str(lhs)))
        return cases

    return _timed("reciprocity-dedekind", f"coprime pairs <= {limit}", body)


# ---------------------------------------------------------------------------
# elementary propositions
# ---------------------------------------------------------------------------

def _is_prime_small(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def verify_elementary(limit: int = 200) -> VerificationReport:
    """Sweep the elementary S/T propositions over their stated hypothesis sets.

    Covers: opposite parity of k and S(k); S(k-1, k) = k-1; vanishing for odd
    coprime pairs; T(h,k) = (1 + (-1)^(h+k)) S(h,k) + (-1)^(h+k+1) for coprime
    pairs; T(h,k) = 1 for coprime opposite-parity pairs; the three-case
    S(qh, qk) evaluation for coprime h, k and q <= 8; and the implication that
    prime k with prime S(k) forces (k, S(k)) = (3, 2).
    """
    if limit < 2:
        raise ValueError("limit must be at least 2")

    def body(failures: list[Failure]) -> int:
        cases = 0

        # S(k) and k have opposite parity, for every k.
        ks = np.arange(1, limit + 1, dtype=np.int64)
        s_vals = s_k_batch(ks)
        for k, s in zip(ks.tolist(), s_vals.tolist()):
            cases += 1
            if (k + s) % 2 == 0:
                failures.append(Failure(("parity", k), "opposite parity", f"S={s}"))

        # S(k-1, k) = k-1.
        for k in range(2, limit + 1):
            cases += 1
            got = s_hk_fast(k - 1, k).value
            if got != k - 1:
                failures.append(Failure(("h=k-1", k), str(k - 1), str(got)))

        # S(h,k) = 0 for odd coprime h < k.
        for k in range(3, limit + 1, 2):
            for h in range(1, k, 2):
                if gcd(h, k) != 1:
                    continue
                cases += 1
                got = s_hk_fast(h, k).value
                if got != 0:
                    failures.append(Failure(("odd-coprime", h, k), "0", str(got)))

        # T(h,k) against S(h,k) for coprime pairs, h over the full T range;
        # and T = 1 when the parities differ.
        for k in range(1, limit + 1):
            for h in range(1, 2 * k):
                if gcd(h, k) != 1:
                    continue
                cases += 1
                t = t_hk_closed(h, k).value
                s = s_hk_fast(h, k).value
                sign = -1 if (h + k) % 2 else 1
                expected = (1 + sign) * s - sign
                if t != expected:
                    failures.append(Failure(("S-T relation", h, k), str(expected), str(t)))
                if (h + k) % 2 == 1:
                    cases += 1
                    if t != 1:
                        failures.append(Failure(("T coprime opposite parity", h, k), "1", str(t)))

        # S(qh, qk) three-case evaluation, coprime h, k, all q <= 8.
        for k in range(1, limit + 1):
            for h in range(1, limit + 1):
                if gcd(h, k) != 1:
                    continue
                base = s_hk_fast(h, k).value
                for q in range(1, 9):
                    cases += 1
                    got = s_hk_fast(q * h, q * k).value
                    if (h + k) % 2 == 1:
                        expected = base if q % 2 == 1 else 1
                    else:
                        expected = -(q - 1)
                    if got != expected:
                        failures.append(Failure(("scaled", h, k, q), str(expected), str(got)))

        # Prime k with prime S(k) happens only at (3, 2).
        tables = build_sieves(limit)
        for k in tables.primes.tolist():
            cases += 1
            s = int(s_vals[k - 1])
            if _is_prime_small(s) and (k, s) != (3, 2):
                failures.append(Failure(("prime-pair", k), "(3, 2) only", f"S={s}"))
        return cases

    return _timed("elementary", f"k <= {limit} (hypothesis sets per proposition)", body)


# ---------------------------------------------------------------------------
# double-sum and pairing suites
# ---------------------------------------------------------------------------

def double_sum_check(k: int) -> tuple[int, int, int, int]:
    """Exact chain linking the fractional-part double sum to S(k) at odd prime k.

    Returns (S, msum, B, N) after asserting the four identities:
      (1) 2N = k (S + (k-1)^2)           -- the double-sum evaluation of S(k)
      (2) 2 msum - (k-1)^2 / 2 = S       -- odd-count expression of S(k)
      (3) 8 msum = (k-1)^2 (k-3) - 16 B  -- msum reduced to the floor double sum
      (4) 16 k B = k (k-1)^3 - 8 N       -- floor sum tied back to the fractional one
    Raises ValueError on composite or even input, AssertionError on violation.
    """
    if k < 3 or k % 2 == 0 or not _is_prime_small(k):
        raise ValueError("k must be an odd prime")
    msum, b_sum, n_sum = (int(v) for v in chain_sums(k))
    s = s_k_fast(k).value
    sq = (k - 1) * (k - 1)
    if 2 * n_sum != k * (s + sq):
        raise AssertionError(f"double-sum identity fails at k={k}")
    if 2 * msum - sq // 2 != s:
        raise AssertionError(f"odd-count expression fails at k={k}")
    if 8 * msum != sq * (k - 3) - 16 * b_sum:
        raise AssertionError(f"floor reduction fails at k={k}")
    if 16 * k * b_sum != k * (k - 1) ** 3 - 8 * n_sum:
        raise AssertionError(f"floor/fractional link fails at k={k}")
    return s, msum, b_sum, n_sum


def verify_double_sum(prime_limit: int = 2000) -> VerificationReport:
    """Exact double-sum evaluation of S(k) and its odd-count chain, odd primes <= limit."""
    if prime_limit < 3:
        raise ValueError("prime_limit must be at least 3")

    def body(failures: list[Failure]) -> int:
        cases = 0
        tables = build_sieves(prime_limit)
        for k in tables.primes.tolist():
            if k == 2:
                continue
            cases += 4
            try:
                double_sum_check(k)
            except AssertionError as exc:
                failures.append(Failure(("chain", k), "all four identities", str(exc)))
        return cases

    return _timed("double-sum", f"odd primes <= {prime_limit}", body)


def verify_pairing(prime_limit: int = 500) -> VerificationReport:
    """Pairing classification of the fractional-part terms for odd primes.

    For each odd prime k, every pair (m, h) with 1 <= m < (k+1)/4 and
    1 <= h <= (k-1)/2 must give an integer g(m,h) in {1,2,3} matching the
    four-way comparison classification, the four classes must partition the
    pairs, and for k = 3 (mod 4) the unpaired middle column must equal
    2{h/2} + 1/2.
    """
    if prime_limit < 7:
        raise ValueError("prime_limit must be at least 7")

    def body(failures: list[Failure]) -> int:
        cases = 0
        tables = build_sieves(prime_limit)
        for k in tables.primes.tolist():
            if k == 2:
                continue
            res = pairing_scan(k)
            violations, count_b, count_a1, count_a2, count_a3 = (int(v) for v in res[:5])
            unpaired_violations = int(res[7])
            half = (k - 1) // 2
            m_count = (k - 1) // 4 if k % 4 == 1 else (k + 1) // 4 - 1
            paired = m_count * half
            cases += paired
            if violations:
                failures.append(
                    Failure(
                        ("pairing", k, int(res[5]), int(res[6])),
                        "g integer in {1,2,3} matching its class",
                        f"{violations} violations",
                    )
                )
            cases += 1
            if count_b + count_a1 + count_a2 + count_a3 != paired:
                failures.append(
                    Failure(
                        ("partition", k),
                        f"{paired} classified pairs",
                        str(count_b + count_a1 + count_a2 + count_a3),
                    )
                )
            if k % 4 == 3:
                cases += half
                if unpaired_violations:
                    failures.append(
                        Failure(
                            ("unpaired", k),
                            "f = 2{h/2} + 1/2 for the middle column",
                            f"{unpaired_violations} violations",
                        )
                    )
        return cases

    return _timed("pairing", f"odd primes <= {prime_limit}", body)


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def verify_lower_bounds(prime_limit: int = 10**4) -> VerificationReport:
    """Trivial and harmonic lower bounds on S(k), the r(j,k) bound, and the H(k) asymptotic.

    Checks |S(k)| <= (k-1)^2 for every k <= limit and the halved bound
    2|S(k)| <= (k-1)^2 for odd k (the halved form comes from the odd-k
    expression of S(k) through r(j,k) and indeed fails at the even values
    k = 2 and k = 4, where S is 1 and 5); for odd primes k the exact bound
    S(k) >= -(k-1)/2 + k H(k) - (k-1)(k+1)/4 with H(k) an exact rational;
    2 j r(j,k) <= jk - k + j^2 - j for every odd j < k; and numerically
    |H(k) - log(2k)/2 - gamma/2| <= 1/k for every k >= 10 (the threshold 1/k
    was confirmed by a scan of all k up to 10^6, worst case 0.52/k at k=11).
    """
    if prime_limit < 3:
        raise ValueError("prime_limit must be at least 3")
    gamma = compute_constants().gamma

    def body(failures: list[Failure]) -> int:
        cases = 0
        ks = np.arange(1, prime_limit + 1, dtype=np.int64)
        s_vals = s_k_batch(ks)

        # trivial bounds: |S| <= (k-1)^2 everywhere, halved for odd k
        squares = (ks - 1) * (ks - 1)
        bad = np.nonzero(np.abs(s_vals) > squares)[0]
        cases += int(ks.size)
        for i in bad.tolist():
            failures.append(
                Failure(("trivial", int(ks[i])), f"|S| <= {int(squares[i])}", str(int(s_vals[i])))
            )
        odd = ks % 2 == 1
        bad = np.nonzero(odd & (2 * np.abs(s_vals) > squares))[0]
        cases += int(odd.sum())
        for i in bad.tolist():
            failures.append(
                Failure(("trivial-odd", int(ks[i])), f"2|S| <= {int(squares[i])}", str(int(s_vals[i])))
            )

        # harmonic lower bound (exact) and r-bound sweep, odd primes
        tables = build_sieves(prime_limit)
        h_exact = Fraction(0)
        h_float = 0.0
        next_odd = 1
        for k in tables.primes.tolist():
            if k == 2:
                continue
            while next_odd < k:
                h_exact += Fraction(1, next_odd)
                h_float += 1.0 / next_odd
                next_odd += 2
            s = int(s_vals[k - 1])
            cases += 1
            lhs = Fraction(s + (k - 1) // 2 + (k * k - 1) // 4)
            if lhs < k * h_exact:
                failures.append(
                    Failure(("harmonic-bound", k), f"S >= {float(k * h_exact - lhs + s):.3f}", str(s))
                )
            res = r_block_check(k)
            cases += (k - 1) // 2
            if int(res[1]):
                failures.append(
                    Failure(
                        ("r-bound", k, int(res[1])),
                        "2jr <= jk - k + j^2 - j",
                        f"r={int(res[2])}",
                    )
                )

        # numeric H(k) asymptotic for all k >= 10
        h_run = 0.0
        next_odd = 1
        for k in range(2, prime_limit + 1):
            while next_odd < k:
                h_run += 1.0 / next_odd
                next_odd += 2
            if k < 10:
                continue
            cases += 1
            diff = abs(h_run - 0.5 * log(2.0 * k) - gamma / 2.0)
            if diff > 1.0 / k:
                failures.append(
                    Failure(("H-asymptotic", k), f"<= {1.0 / k:.3e}", f"{diff:.3e}")
                )
        return cases

    return _timed("lower-bounds", f"k <= {prime_limit} (primes for the sharp bound)", body)


# ---------------------------------------------------------------------------
# fast-vs-naive equivalence
# ---------------------------------------------------------------------------

def verify_fast_equivalence(
    limit_pairs: int = 512,
    limit_k: int = 512,
    *,
    floor_tuples: int = 10**5,
    random_pairs: int = 10**3,
    random_k_max: int = 10**6,
    gcd_limit: int = 10**4,
    seed: int = 20260825,
) -> VerificationReport:
    """Agreement of every accelerated path with its direct-enumeration oracle.

    Exhaustive S(h,k) for h <= k <= limit_pairs plus seeded random pairs with k
    up to random_k_max; S(k) and T(k) for k <= limit_k; closed-form T(h,k) for
    k <= min(limit_pairs, 128) over the full h range; floor_sum against brute
    force on random tuples (negative slopes and offsets included); the odd
    gcd-sum against the divisor form; and the prime-only expression
    S(k) = (k-1)^2/2 - 2 sum_{odd j} r(j,k).
    """
    if limit_pairs < 1 or limit_k < 1:
        raise ValueError("limits must be positive")

    def body(failures: list[Failure]) -> int:
        cases = 0
        rng = np.random.default_rng(seed)

        # floor_sum vs brute force
        ns = rng.integers(0, 1001, size=floor_tuples)
        ms = rng.integers(1, 1001, size=floor_tuples)
        slopes = rng.integers(-1000, 1001, size=floor_tuples)
        offs = rng.integers(-1000, 1001, size=floor_tuples)
        for n, m, a, b in zip(ns.tolist(), ms.tolist(), slopes.tolist(), offs.tolist()):
            cases += 1
            want = int(((a * np.arange(n, dtype=np.int64) + b) // m).sum()) if n else 0
            got = floor_sum(n, m, a, b)
            if got != want:
                failures.append(Failure(("floor_sum", n, m, a, b), str(want), str(got)))

        # S(h,k): exhaustive h <= k
        for k in range(1, limit_pairs + 1):
            for h in range(1, k + 1):
                cases += 1
                naive = s_hk_naive(h, k).value
                fast = s_hk_fast(h, k).value
                if naive != fast:
                    failures.append(Failure(("s_hk", h, k), str(naive), str(fast)))

        # S(h,k): random pairs with large k
        hs = rng.integers(1, random_k_max, size=random_pairs)
        ks = rng.integers(2, random_k_max + 1, size=random_pairs)
        for h, k in zip(hs.tolist(), ks.tolist()):
            h = 1 + h % k
            cases += 1
            naive = s_hk_naive(h, k).value
            fast = s_hk_fast(h, k).value
            if naive != fast:
                failures.append(Failure(("s_hk-random", h, k), str(naive), str(fast)))

        # S(k) and T(k)
        for k in range(1, limit_k + 1):
            cases += 2
            sn, sf = s_k_naive(k).value, s_k_fast(k).value
            if sn != sf:
                failures.append(Failure(("s_k", k), str(sn), str(sf)))
            tn, tc = t_k_naive(k).value, t_k_closed(k).value
            if tn != tc:
                failures.append(Failure(("t_k", k), str(tn), str(tc)))

        # T(h,k) closed forms over the full h range
        for k in range(1, min(limit_pairs, 128) + 1):
            for h in range(1, 2 * k):
                cases += 1
                tn = t_hk_naive(h, k).value
                tc = t_hk_closed(h, k).value
                if tn != tc:
                    failures.append(Failure(("t_hk", h, k), str(tn), str(tc)))

        # gcd sum vs divisor form (a_n_single enumerates divisors directly)
        for k in range(1, gcd_limit + 1, 2):
            cases += 1
            got = gcd_sum_odd(k)
            want = a_n_single(k)
            if got != want:
                failures.append(Failure(("gcd_sum_odd", k), str(want), str(got)))

        # prime-only expression of S(k) through r(j,k)
        tables = build_sieves(max(limit_k, 3))
        for k in tables.primes.tolist():
            if k == 2:
                continue
            cases += 1
            r_total = int(r_block_check(k)[0])
            expr = (k - 1) * (k - 1) // 2 - 2 * r_total
            s = s_k_fast(k).value
            if expr != s:
                failures.append(Failure(("s_k-expression", k), str(s), str(expr)))
        return cases

    return _timed(
        "fast-equivalence",
        f"pairs <= {limit_pairs}, aggregates <= {limit_k}, {floor_tuples} floor tuples",
        body,
    )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITE_DEFAULTS: dict[str, int] = {
    "reciprocity-theta": 300,
    "reciprocity-dedekind": 100,
    "elementary": 200,
    "double-sum": 2000,
    "pairing": 500,
    "lower-bounds": 10**4,
    "fast-equivalence": 512,
}

SUITES: dict[str, Callable[[int], VerificationReport]] = {
    "reciprocity-theta": verify_reciprocity_theta,
    "reciprocity-dedekind": verify_reciprocity_dedekind,
    "elementary": verify_elementary,
    "double-sum": verify_double_sum,
    "pairing": verify_pairing,
    "lower-bounds": verify_lower_bounds,
    "fast-equivalence": lambda limit: verify_fast_equivalence(limit, limit),
}


def run_suite(name: str, limit: int | None = None) -> VerificationReport:
    """Run one suite by name, at its default range when limit is None."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](limit if limit is not None else SUITE_DEFAULTS[name])


def run_all(limit: int | None = None) -> list[VerificationReport]:
    """Run every suite (each at its default range when limit is None)."""
    return [run_suite(name, limit) for name in SUITES]

"""Partial-sum asymptotics for the divisor-totient convolution a_n.

For odd n, a_n = sum_{d|n} d*phi(n/d) (and a_n = 0 for even n).  The primed
partial sum counts only half of the last term:

    sum'_{n <= x} a_n = sum_{n < x} a_n + a_x / 2.

Its main term is x^2*log(x)/pi^2 + c_quad*x^2, where c_quad combines
A = 12*gamma - 3 + 10*log(2) with the derivative of the zeta function at 2:

    c_quad = (A*pi^2 - 36*zeta'(2)) / (6*pi^4).

Everything on the integer side is exact; partial sums are doubled so that the
half-term convention stays integral.  Floats enter only in the comparison
against the main term and in the constants, which are computed here from
scratch via Euler-Maclaurin summation to at least 12 correct digits.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .kernels import SieveTables

__all__ = [
    "AsymptoticConstants",
    "AsymptoticSample",
    "DirichletCheck",
    "compute_constants",
    "dirichlet_spot_check",
    "error_scan",
    "euler_gamma",
    "fit_error_exponent",
    "main_term",
    "partial_sum_a",
    "write_samples_csv",
    "zeta",
    "zeta_prime_at_2",
]


@dataclass(frozen=True)
class AsymptoticConstants:
    """High-precision constants entering the partial-sum main term."""

    gamma: float
    zeta_prime_2: float
    A: float
    c_log: float
    c_quad: float


@dataclass(frozen=True)
class AsymptoticSample:
    """One comparison of the exact primed partial sum against the main term.

    ``twice_partial`` stores 2*sum'_{n<=x} a_n, which is always an integer
    (it is even unless x is odd with a_x odd).  ``abs_err`` is
    |twice_partial/2 - main| and ``rel_err`` is abs_err/main.
    """

    x: int
    twice_partial: int
    main: float
    abs_err: float
    rel_err: float


@dataclass(frozen=True)
class DirichletCheck:
    """Truncated Dirichlet series against their zeta closed forms.

    ``f_*`` is the odd-only series sum a_n/n^s with closed form
    (1-2^(1-s))^2/(1-2^(-s)) * zeta(s-1)^2/zeta(s); ``g_*`` is the all-n
    multiplicative extension with closed form zeta(s-1)^2/zeta(s).
    """

    s: float
    truncation: int
    f_series: float
    f_closed: float
    g_series: float
    g_closed: float


def euler_gamma(terms: int = 10**6) -> float:
    """Euler's constant via Euler-Maclaurin correction of the harmonic sum."""
    if terms < 10:
        raise ValueError("terms must be at least 10")
    n = float(terms)
    harmonic = math.fsum(1.0 / i for i in range(1, terms + 1))
    return harmonic - math.log(n) - 1.0 / (2.0 * n) + 1.0 / (12.0 * n * n) - 1.0 / (120.0 * n**4)


def zeta(s: float, terms: int = 10**5) -> float:
    """zeta(s) for s > 1 by direct summation plus Euler-Maclaurin tail."""
    if s <= 1.0:
        raise ValueError("zeta(s) is computed only for s > 1")
    if terms < 10:
        raise ValueError("terms must be at least 10")
    n = float(terms)
    head = math.fsum(i ** (-s) for i in range(1, terms + 1))
    tail = (
        n ** (1.0 - s) / (s - 1.0)
        - n ** (-s) / 2.0
        + s * n ** (-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n ** (-s - 3.0) / 720.0
    )
    return head + tail


def zeta_prime_at_2(terms: int = 10**5) -> float:
    """zeta'(2) = -sum log(n)/n^2, with an Euler-Maclaurin tail for the cutoff."""
    if terms < 10:
        raise ValueError("terms must be at least 10")
    n = float(terms)
    head = math.fsum(math.log(i) / (i * i) for i in range(2, terms + 1))
    log_n = math.log(n)
    tail = (log_n + 1.0) / n - log_n / (2.0 * n * n) - (1.0 - 2.0 * log_n) / (12.0 * n**3)
    return -(head + tail)


@lru_cache(maxsize=1)
def compute_constants() -> AsymptoticConstants:
    """Compute gamma and zeta'(2) from scratch and derive the main-term coefficients."""
    gamma = euler_gamma()
    zp2 = zeta_prime_at_2()
    a_const = 12.0 * gamma - 3.0 + 10.0 * math.log(2.0)
    pi2 = math.pi * math.pi
    c_log = 1.0 / pi2
    c_quad = (a_const * pi2 - 36.0 * zp2) / (6.0 * pi2 * pi2)
    return AsymptoticConstants(
        gamma=gamma, zeta_prime_2=zp2, A=a_const, c_log=c_log, c_quad=c_quad
    )


def main_term(x: int, consts: AsymptoticConstants | None = None) -> float:
    """Main term c_log*x^2*log(x) + c_quad*x^2 of the primed partial sum."""
    if x < 1:
        raise ValueError("x must be a positive integer")
    if consts is None:
        consts = compute_constants()
    xf = float(x)
    return consts.c_log * xf * xf * math.log(xf) + consts.c_quad * xf * xf


def _twice_partial_from_prefix(prefix: np.ndarray, a: np.ndarray, x: int) -> int:
    # prefix[i] = sum of a_1..a_i; doubled sum counts a_x once, earlier terms twice.
    return 2 * int(prefix[x - 1]) + int(a[x])


def _make_sample(x: int, twice_partial: int, consts: AsymptoticConstants) -> AsymptoticSample:
    main = main_term(x, consts)
    abs_err = abs(twice_partial / 2.0 - main)
    rel_err = abs_err / main if main != 0.0 else math.inf
    return AsymptoticSample(
        x=x, twice_partial=twice_partial, main=main, abs_err=abs_err, rel_err=rel_err
    )


def partial_sum_a(
    x: int, tables: SieveTables, consts: AsymptoticConstants | None = None
) -> AsymptoticSample:
    """Exact doubled primed partial sum 2*sum'_{n<=x} a_n, compared to the main term."""
    if x < 1 or x > tables.limit:
        raise ValueError(f"x must satisfy 1 <= x <= {tables.limit}, got {x}")
    if consts is None:
        consts = compute_constants()
    twice = 2 * int(tables.a[1:x].sum(dtype=np.int64)) + int(tables.a[x])
    return _make_sample(x, twice, consts)


def fit_error_exponent(
    xs: Sequence[float], errors: Sequence[float]
) -> float | None:
    """Least-squares slope of log|error| against log x; None when degenerate."""
    if len(xs) != len(errors):
        raise ValueError("xs and errors must have equal length")
    if len(xs) < 2:
        raise ValueError("need at least two points to fit a slope")
    if any(e <= 0.0 for e in errors):
        return None
    log_x = np.log(np.asarray(xs, dtype=np.float64))
    log_e = np.log(np.asarray(errors, dtype=np.float64))
    return float(np.polyfit(log_x, log_e, 1)[0])


def error_scan(
    xs: Sequence[int],
    tables: SieveTables,
    consts: AsymptoticConstants | None = None,
) -> tuple[list[AsymptoticSample], float | None]:
    """Sample the partial-sum error at each x and fit its growth exponent.

    Requires at least four ascending sample points spanning two decades, all
    within the sieve limit.  Returns the samples and the fitted slope of
    log|abs_err| against log x (None if any error vanishes exactly).
    """
    xs = [int(x) for x in xs]
    if len(xs) < 4:
        raise ValueError("need at least 4 sample points")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("sample points must be strictly ascending")
    if xs[-1] < 100 * xs[0]:
        raise ValueError("sample points must span at least two decades")
    if xs[0] < 1 or xs[-1] > tables.limit:
        raise ValueError(f"sample points must lie in [1, {tables.limit}]")
    if consts is None:
        consts = compute_constants()
    prefix = np.cumsum(tables.a[1:].astype(np.int64))
    samples = [
        _make_sample(x, _twice_partial_from_prefix(prefix, tables.a, x), consts)
        for x in xs
    ]
    slope = fit_error_exponent([s.x for s in samples], [s.abs_err for s in samples])
    return samples, slope


def _all_n_convolution(a: np.ndarray, limit: int) -> np.ndarray:
    """Multiplicative extension of a_n to even n: b(2^e * m) = (2^e + e*2^(e-1)) * a_m."""
    b = np.zeros(limit + 1, dtype=np.float64)
    for n in range(1, limit + 1):
        m = n
        e = 0
        while m % 2 == 0:
            m //= 2
            e += 1
        factor = (1 << e) + e * (1 << (e - 1)) if e else 1
        b[n] = float(factor) * float(a[m])
    return b


def dirichlet_spot_check(
    s: float, truncation: int, tables: SieveTables
) -> DirichletCheck:
    """Compare truncated Dirichlet series of a_n against their zeta closed forms."""
    if s <= 2.0:
        raise ValueError("s must exceed 2 (the series diverges for s <= 2)")
    if truncation < 10**3:
        raise ValueError("truncation must be at least 10^3")
    if truncation > tables.limit:
        raise ValueError(f"truncation exceeds sieve limit {tables.limit}")
    ns = np.arange(1, truncation + 1, dtype=np.float64)
    weights = ns**-s
    f_series = float(np.dot(tables.a[1 : truncation + 1].astype(np.float64), weights))
    b = _all_n_convolution(tables.a, truncation)
    g_series = float(np.dot(b[1:], weights))
    g_closed = zeta(s - 1.0) ** 2 / zeta(s)
    f_closed = (1.0 - 2.0 ** (1.0 - s)) ** 2 / (1.0 - 2.0**-s) * g_closed
    return DirichletCheck(
        s=s,
        truncation=truncation,
        f_series=f_series,
        f_closed=f_closed,
        g_series=g_series,
        g_closed=g_closed,
    )


def write_samples_csv(samples: Sequence[AsymptoticSample], sink) -> int:
    """Write samples as CSV rows (floats at 15 significant digits); returns row count."""
    own = isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__")
    handle = open(sink, "w", newline="") if own else sink
    try:
        writer = csv.writer(handle)
        writer.writerow(["x", "partial_sum_times_two", "main_term", "abs_err", "rel_err"])
        for s in samples:
            writer.writerow(
                [
                    s.x,
                    s.twice_partial,
                    format(s.main, ".15g"),
                    format(s.abs_err, ".15g"),
                    format(s.rel_err, ".15g"),
                ]
            )
    finally:
        if own:
            handle.close()
    return len(samples)

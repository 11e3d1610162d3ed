"""Exact and accelerated arithmetic for alternating theta sums.

Public layout:

* ``exact``      — enumeration oracles S(h,k), S(k), T(h,k), T(k), the
                   sawtooth ((x)), and the Dedekind sum (exact rationals).
* ``floorsum``   — the Euclidean kernel Σ ⌊(a·i+b)/m⌋.
* ``kernels``    — fast S paths, closed-form T, r(j,k), linear sieves.
* ``verify``     — identity/bound suites with structured reports.
* ``asymptotics``— partial-sum vs main-term checks and constants.
* ``scanner``    — threshold scans, negative census, checkpointing.
* ``published``  — literature reference values and discrepancy diffing.
* ``cli``        — the ``thetasums`` command.
"""

from .asymptotics import (
    AsymptoticConstants,
    AsymptoticSample,
    compute_constants,
    dirichlet_spot_check,
    error_scan,
    main_term,
    partial_sum_a,
    write_samples_csv,
)
from .exact import (
    MAX_MODULUS,
    SumValue,
    dedekind_s,
    s_hk_naive,
    s_k_naive,
    sawtooth,
    t_hk_naive,
    t_k_naive,
)
from .floorsum import floor_sum
from .kernels import (
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
from .scanner import (
    IntegrityError,
    Mod4Distribution,
    NegativeCensus,
    ScanRecord,
    ScanResult,
    mod4_distribution,
    negative_census,
    scan_thresholds,
)
from .verify import (
    BoundWitness,
    VerificationReport,
    run_all,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticConstants",
    "AsymptoticSample",
    "BoundWitness",
    "IntegrityError",
    "MAX_MODULUS",
    "Mod4Distribution",
    "NegativeCensus",
    "ScanRecord",
    "ScanResult",
    "SumValue",
    "SieveTables",
    "VerificationReport",
    "__version__",
    "a_n_single",
    "build_sieves",
    "compute_constants",
    "dedekind_s",
    "dirichlet_spot_check",
    "error_scan",
    "floor_sum",
    "gcd_sum_odd",
    "main_term",
    "mod4_distribution",
    "negative_census",
    "partial_sum_a",
    "r_jk",
    "run_all",
    "run_suite",
    "s_hk_fast",
    "s_hk_naive",
    "s_k_fast",
    "s_k_naive",
    "sawtooth",
    "scan_thresholds",
    "t_hk_closed",
    "t_hk_naive",
    "t_k_closed",
    "t_k_naive",
    "write_samples_csv",
]

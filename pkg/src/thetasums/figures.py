"""Matplotlib renderers for scan, census, table, asymptotic, and benchmark reports.

Every function takes the already-computed report object plus an output path,
draws one figure with the file-only Agg backend, and returns the path it
wrote.  Nothing here recomputes mathematics; the CLI calls these right after
writing the corresponding delimited output so the figure and the data file
always describe the same run.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "plot_bench",
    "plot_census",
    "plot_error_scan",
    "plot_scan",
    "plot_table",
]

_DPI = 150


def plot_scan(result, path: str) -> str:
    """Scatter S(k)/k against k with the 0/2/3/4 threshold lines marked.

    Primes are drawn as points; strict threshold exceptions get highlighted
    markers so the handful of failures stand out against the bulk.
    """
    ks = np.array([r.k for r in result.records if r.is_prime], dtype=np.int64)
    ratios = np.array([r.ratio for r in result.records if r.is_prime])
    fig, ax = plt.subplots(figsize=(9, 5.5))
    ax.scatter(ks, ratios, s=4, alpha=0.35, linewidths=0, label="primes")
    for level, style in ((0, ":"), (2, "--"), (3, "-."), (4, "-")):
        ax.axhline(level, linestyle=style, linewidth=0.9, color="gray")
        ax.annotate(f"{level}k" if level else "0", xy=(1.0, level),
                    xycoords=("axes fraction", "data"),
                    xytext=(4, 0), textcoords="offset points",
                    va="center", fontsize=8, color="gray")
    exc = result.exceptions.get("4k", ())
    if exc:
        ek = np.array([k for k, _ in exc], dtype=np.int64)
        es = np.array([s / k for k, s in exc])
        ax.scatter(ek, es, s=18, marker="x", color="crimson",
                   label="below 4k (strict)")
    ax.set_xlabel("k")
    ax.set_ylabel("S(k) / k")
    ax.set_title(f"S(k)/k over primes up to {result.limit}")
    ax.legend(loc="upper left", fontsize=8)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_census(census, path: str) -> str:
    """Bar chart of negative-S(k) counts split by divisibility by 3 and 5."""
    labels = ["3 | k only", "5 | k only", "15 | k", "neither"]
    counts = [census.div3_not5, census.div5_not3, census.div15, census.other]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    bars = ax.bar(labels, counts, color=["#4c72b0", "#55a868", "#c44e52", "#8172b2"])
    ax.bar_label(bars, padding=2, fontsize=9)
    ax.set_ylabel("count of k with S(k) < 0")
    ax.set_title(
        f"Negative S(k) for k ≤ {census.limit}: "
        f"{census.total} values, {len(census.extremes)} with S(k) < -k"
    )
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_table(ks: Sequence[int], s_vals: Sequence[int], t_vals: Sequence[int],
               path: str) -> str:
    """Side-by-side stem plots of S(k) and T(k) for small k."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.2), sharex=True)
    for ax, vals, name in ((ax1, s_vals, "S(k)"), (ax2, t_vals, "T(k)")):
        ax.stem(ks, vals, basefmt="gray")
        ax.set_xlabel("k")
        ax.set_ylabel(name)
        ax.set_title(name)
        ax.set_xticks(list(ks))
    fig.suptitle(f"Double theta sums for k ≤ {max(ks)}")
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_error_scan(samples, slope: float | None, path: str) -> str:
    """Log-log relative error of the main-term approximation, with fitted slope."""
    xs = np.array([s.x for s in samples], dtype=float)
    errs = np.array([s.rel_err for s in samples], dtype=float)
    fig, ax = plt.subplots(figsize=(7.5, 5))
    ax.loglog(xs, errs, "o-", label="relative error")
    if slope is not None and np.all(errs > 0):
        anchor = errs[0] * (xs / xs[0]) ** slope
        ax.loglog(xs, anchor, "--", color="gray",
                  label=f"slope {slope:.3f} reference")
    ax.set_xlabel("x")
    ax.set_ylabel("|2·partial − main| / main")
    ax.set_title("Main-term relative error against the partial sums")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_bench(report, path: str) -> str:
    """Log-log per-k timing comparison of the direct and fast S(k) evaluators."""
    fig, ax = plt.subplots(figsize=(7.5, 5))
    for points, marker, label in (
        (report.naive_points, "o-", f"direct (fit {report.naive_exponent:.2f})"),
        (report.fast_points, "s-", f"fast (fit {report.fast_exponent:.2f})"),
    ):
        ks = [p.k for p in points]
        ts = [p.seconds for p in points]
        ax.loglog(ks, ts, marker, label=label)
    ax.set_xlabel("k")
    ax.set_ylabel("seconds per S(k) call")
    ax.set_title(f"S(k) evaluation cost (speedup x{report.speedup:.0f} at {report.limit})")
    ax.legend(fontsize=9)
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(path, dpi=_DPI, bbox_inches="tight")
    plt.close(fig)
    return path

"""Command-line entry point: tables, verification, scans, census, asymptotics, bench.

Subcommands write delimited data (CSV or JSON) to ``--out`` and, when
``--plot`` is given, render the matching matplotlib figure next to it.  Exit
codes: 0 all checks pass, 1 a verification failure or a published-value
discrepancy was found (the two are distinguished in the report body), 2 usage
error, 3 I/O or checkpoint-integrity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Sequence

from . import figures
from .asymptotics import (
    compute_constants,
    dirichlet_spot_check,
    error_scan,
    write_samples_csv,
)
from .bench import run_bench
from .exact import s_k_naive
from .kernels import build_sieves, s_k_fast, t_k_closed
from .published import (
    CENSUS_10K,
    compare_census,
    compare_s_table,
    compare_t_table,
    compare_threshold_exceptions,
)
from .scanner import (
    THRESHOLDS,
    IntegrityError,
    negative_census,
    scan_thresholds,
    write_records_csv,
)
from .verify import SUITES, run_all, run_suite

__all__ = ["main", "emit_table", "read_table_csv"]

TABLE_FIELDS = ("k", "s_k", "t_k")


# ---------------------------------------------------------------------------
# table subcommand
# ---------------------------------------------------------------------------

def emit_table(limit: int, sink, fmt: str = "csv") -> tuple[int, list]:
    """Write k, S(k), T(k) rows for k = 1..limit plus a discrepancy footnote.

    S(k) comes from the fast evaluator, cross-checked against direct
    enumeration for k <= 64.  Rows whose recomputed S(k) differs from the
    published small-k table are listed in a footnote block (lines starting
    with '#' in CSV).  Returns (row count, discrepancy list).
    """
    rows = []
    for k in range(1, limit + 1):
        s = s_k_fast(k).value
        if k <= 64 and s != s_k_naive(k).value:
            raise AssertionError(f"fast/naive S(k) disagreement at k={k}")
        rows.append((k, s, t_k_closed(k).value))
    disc = compare_s_table({k: s for k, s, _ in rows})
    disc += compare_t_table({k: t for k, _, t in rows})

    own = isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__")
    handle = open(sink, "w", newline="") if own else sink
    try:
        if fmt == "csv":
            writer = csv.writer(handle)
            writer.writerow(TABLE_FIELDS)
            writer.writerows(rows)
            if disc:
                handle.write("# published-table discrepancies (recomputed values are authoritative):\n")
                for d in disc:
                    handle.write(f"# {d.line()}\n")
        else:
            handle.write(f"{'k':>4} {'S(k)':>8} {'T(k)':>8}\n")
            for k, s, t in rows:
                handle.write(f"{k:>4} {s:>8} {t:>8}\n")
            if disc:
                handle.write("published-table discrepancies (recomputed values are authoritative):\n")
                for d in disc:
                    handle.write(f"  {d.line()}\n")
    finally:
        if own:
            handle.close()
    return len(rows), disc


def read_table_csv(source) -> list[tuple[int, int, int]]:
    """Parse an emit_table CSV back into (k, S, T) rows, skipping footnotes."""
    own = isinstance(source, (str, bytes)) or hasattr(source, "__fspath__")
    handle = open(source, newline="") if own else source
    try:
        rows = []
        reader = csv.reader(line for line in handle if not line.startswith("#"))
        header = next(reader)
        if tuple(header) != TABLE_FIELDS:
            raise ValueError(f"unexpected CSV header {header!r}")
        for row in reader:
            rows.append((int(row[0]), int(row[1]), int(row[2])))
        return rows
    finally:
        if own:
            handle.close()


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

def _write_text(path: str, text: str) -> None:
    with open(path, "w") as handle:
        handle.write(text if text.endswith("\n") else text + "\n")


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _progress(args):
    if args.quiet or not sys.stderr.isatty():
        return None

    def report(done: int, total: int) -> None:
        print(f"\r  {done}/{total} values", file=sys.stderr, end="", flush=True)
        if done == total:
            print(file=sys.stderr)

    return report


# ---------------------------------------------------------------------------
# subcommand handlers (each returns the exit code)
# ---------------------------------------------------------------------------

def _cmd_table(args) -> int:
    buf = io.StringIO()
    count, disc = emit_table(args.max, buf, args.format)
    text = buf.getvalue()
    if args.out:
        _write_text(args.out, text)
        _say(args, f"wrote {count} rows to {args.out}")
    else:
        _say(args, text.rstrip("\n"))
    if args.plot:
        ks = list(range(1, args.max + 1))
        rows = [(s_k_fast(k).value, t_k_closed(k).value) for k in ks]
        figures.plot_table(ks, [r[0] for r in rows], [r[1] for r in rows], args.plot)
        _say(args, f"figure written to {args.plot}")
    if disc:
        _say(args, f"{len(disc)} published values flagged; recomputed values emitted")
        return 1
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "all":
        reports = run_all(args.max)
    else:
        reports = [run_suite(args.suite, args.max)]
    text = "\n".join(r.to_text() for r in reports)
    if args.format == "json":
        import json

        payload = json.dumps([r.to_dict() for r in reports], indent=2)
    else:
        payload = text
    if args.out:
        _write_text(args.out, payload)
    _say(args, text)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_scan(args) -> int:
    result = scan_thresholds(
        args.max,
        primes_only=args.primes,
        workers=args.threads,
        checkpoint_path=args.checkpoint,
        progress=_progress(args),
    )
    chosen = [args.threshold] if args.threshold else list(THRESHOLDS)
    lines = []
    discrepancies = []
    for t in chosen:
        exc = result.exceptions[t]
        lines.append(f"threshold {t}: {len(exc)} strict exceptions over primes <= {args.max}")
        lines.extend(f"  k={k} S(k)={s}" for k, s in exc)
        eq = result.equalities[t]
        if eq:
            lines.append(f"  boundary S(k) = {t.rstrip('k') or '0'}*k at: "
                         + ", ".join(f"({k},{s})" for k, s in eq))
        for d in compare_threshold_exceptions(t, list(exc), args.max):
            discrepancies.append((t, d))
    if discrepancies:
        lines.append("published-list discrepancies:")
        lines.extend(f"  [{t}] {d.line()}" for t, d in discrepancies)
    text = "\n".join(lines)

    if args.out:
        if args.format == "csv":
            count = write_records_csv(result.records, args.out)
            _say(args, f"wrote {count} records to {args.out}")
        elif args.format == "json":
            import json

            payload = {
                "limit": result.limit,
                "primes_only": result.primes_only,
                "exceptions": {t: [list(p) for p in result.exceptions[t]] for t in chosen},
                "equalities": {t: [list(p) for p in result.equalities[t]] for t in chosen},
                "discrepancies": [f"[{t}] {d.line()}" for t, d in discrepancies],
            }
            _write_text(args.out, json.dumps(payload, indent=2))
        else:
            _write_text(args.out, text)
    _say(args, text)
    if args.plot:
        figures.plot_scan(result, args.plot)
        _say(args, f"figure written to {args.plot}")
    return 1 if discrepancies else 0


def _cmd_census(args) -> int:
    census = negative_census(
        args.max,
        workers=args.threads,
        checkpoint_path=args.checkpoint,
        progress=_progress(args),
    )
    discrepancies = compare_census(census) if args.max == CENSUS_10K["limit"] else []
    lines = [
        f"negative S(k) for k <= {census.limit}: {census.total} values",
        f"  divisible by 3 only: {census.div3_not5}",
        f"  divisible by 5 only: {census.div5_not3}",
        f"  divisible by 15:     {census.div15}",
        f"  neither:             {census.other}",
    ]
    if census.extremes:
        lines.append("  S(k) < -k at: " + ", ".join(f"({k},{s})" for k, s in census.extremes))
    if discrepancies:
        lines.append("published-census discrepancies:")
        lines.extend(f"  {d.line()}" for d in discrepancies)
    text = "\n".join(lines)

    if args.out:
        if args.format == "json":
            _write_text(args.out, census.to_json())
        else:
            _write_text(args.out, text)
    _say(args, text)
    if args.plot:
        figures.plot_census(census, args.plot)
        _say(args, f"figure written to {args.plot}")
    return 1 if discrepancies else 0


def _cmd_asympt(args) -> int:
    if args.max < 10**6:
        raise ValueError("asympt needs --max >= 1000000 (four decades from 10^3)")
    xs = []
    x = 10**3
    while x <= args.max:
        xs.append(x)
        x *= 10
    tables = build_sieves(args.max)
    consts = compute_constants()
    samples, slope = error_scan(xs, tables, consts)
    trunc = min(10**5, args.max)
    f_check = dirichlet_spot_check(4.0, trunc, tables)
    g_diff = abs(f_check.g_series - f_check.g_closed)
    f_diff = abs(f_check.f_series - f_check.f_closed)

    rels = [s.rel_err for s in samples]
    decreasing = all(a > b for a, b in zip(rels, rels[1:]))
    checks = {
        "final_rel_err_below_0.05": rels[-1] < 0.05,
        "rel_err_decreasing": decreasing,
        "slope_at_most_1.7": slope is not None and slope <= 1.7,
        "dirichlet_within_1e-3": g_diff < 1e-3 and f_diff < 1e-3,
    }
    lines = [
        f"constants: gamma={consts.gamma:.15g} zeta'(2)={consts.zeta_prime_2:.15g} "
        f"A={consts.A:.15g}",
        f"main term: x^2 ({consts.c_log:.15g} log x + {consts.c_quad:.15g})",
        f"{'x':>10} {'partial_sum_times_two':>22} {'main_term':>22} {'rel_err':>12}",
    ]
    lines.extend(
        f"{s.x:>10} {s.twice_partial:>22} {s.main:>22.6f} {s.rel_err:>12.3e}"
        for s in samples
    )
    lines.append(f"fitted error exponent: {slope:.4f}" if slope is not None
                 else "fitted error exponent: n/a (non-positive errors)")
    lines.append(f"Dirichlet spot check at s=4: F diff {f_diff:.3e}, G diff {g_diff:.3e}")
    lines.extend(f"[{'PASS' if ok else 'FAIL'}] {name}" for name, ok in checks.items())
    text = "\n".join(lines)

    if args.out:
        if args.format == "csv":
            write_samples_csv(samples, args.out)
        elif args.format == "json":
            import json

            payload = {
                "constants": {
                    "gamma": consts.gamma,
                    "zeta_prime_2": consts.zeta_prime_2,
                    "A": consts.A,
                    "c_log": consts.c_log,
                    "c_quad": consts.c_quad,
                },
                "samples": [
                    {"x": s.x, "twice_partial": s.twice_partial, "main": s.main,
                     "abs_err": s.abs_err, "rel_err": s.rel_err}
                    for s in samples
                ],
                "slope": slope,
                "checks": checks,
            }
            _write_text(args.out, json.dumps(payload, indent=2))
        else:
            _write_text(args.out, text)
    _say(args, text)
    if args.plot:
        figures.plot_error_scan(samples, slope, args.plot)
        _say(args, f"figure written to {args.plot}")
    return 0 if all(checks.values()) else 1


def _cmd_bench(args) -> int:
    report = run_bench(args.max)
    if args.out:
        if args.format == "json":
            _write_text(args.out, report.to_json())
        else:
            _write_text(args.out, report.to_text())
    _say(args, report.to_text())
    if args.plot:
        figures.plot_bench(report, args.plot)
        _say(args, f"figure written to {args.plot}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetasums",
        description="Exact and accelerated theta-sum arithmetic: tables, "
                    "verification suites, conjecture scans, and asymptotics.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, formats, default_fmt):
        p.add_argument("--out", metavar="PATH", help="write the report/data file here")
        p.add_argument("--format", choices=formats, default=default_fmt)
        p.add_argument("--plot", metavar="PATH",
                       help="render the matching figure to this file")
        p.add_argument("--quiet", action="store_true",
                       help="suppress informational output")

    p = sub.add_parser("table", help="emit k, S(k), T(k) rows with errata footnote")
    p.add_argument("--max", type=int, default=20, metavar="N")
    common(p, ("csv", "text"), "csv")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("verify", help="run identity-verification suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=sorted(SUITES) + ["all"])
    p.add_argument("--max", type=int, default=None, metavar="N",
                   help="override the suite's default range limit")
    common(p, ("text", "json"), "text")
    p.set_defaults(handler=_cmd_verify, plot=None)

    p = sub.add_parser("scan", help="scan S(k) thresholds over primes")
    p.add_argument("--max", type=int, required=True, metavar="N")
    p.add_argument("--threshold", choices=THRESHOLDS, default=None,
                   help="restrict the exception report to one threshold")
    p.add_argument("--primes", action="store_true",
                   help="evaluate S(k) at primes only")
    p.add_argument("--threads", type=int, default=1, metavar="T")
    p.add_argument("--checkpoint", metavar="PATH",
                   help="persist/resume scan state at this path")
    common(p, ("csv", "json", "text"), "csv")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("census", help="count k with S(k) < 0 by divisibility class")
    p.add_argument("--max", type=int, required=True, metavar="N")
    p.add_argument("--threads", type=int, default=1, metavar="T")
    p.add_argument("--checkpoint", metavar="PATH")
    common(p, ("json", "text"), "json")
    p.set_defaults(handler=_cmd_census)

    p = sub.add_parser("asympt", help="check the partial-sum main term across decades")
    p.add_argument("--max", type=int, default=10**6, metavar="N",
                   help="sieve limit; samples run over decades 10^3..N")
    common(p, ("csv", "json", "text"), "csv")
    p.set_defaults(handler=_cmd_asympt)

    p = sub.add_parser("bench", help="time the direct vs fast S(k) evaluators")
    p.add_argument("--max", type=int, default=50_000, metavar="N")
    common(p, ("text", "json"), "text")
    p.set_defaults(handler=_cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    for attr in ("max", "threads"):
        value = getattr(args, attr, None)
        if value is not None and value < 1:
            parser.error(f"--{attr} must be at least 1")
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

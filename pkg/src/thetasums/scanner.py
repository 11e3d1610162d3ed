"""Parallel, resumable scans of S(k): threshold exceptions, censuses, distributions.

Work is split into fixed chunks of k values; each chunk is evaluated with the
accelerated S(k) kernel (which releases the GIL, so a thread pool scales), and
results are merged in ascending k order so output never depends on the worker
count.  A checkpoint file persists completed chunks with an integrity checksum;
interrupting a scan and resuming from its checkpoint yields output
byte-identical to an uninterrupted run.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from ._accel import s_k_batch
from .kernels import build_sieves

__all__ = [
    "CHUNK_SIZE",
    "Checkpoint",
    "IntegrityError",
    "Mod4Distribution",
    "NegativeCensus",
    "ScanRecord",
    "ScanResult",
    "THRESHOLDS",
    "load_checkpoint",
    "mod4_distribution",
    "negative_census",
    "read_records_csv",
    "save_checkpoint",
    "scan_thresholds",
    "write_records_csv",
]

CHUNK_SIZE = 256
THRESHOLDS = ("0", "2k", "3k", "4k")
_MULTIPLIER = {"0": 0, "2k": 2, "3k": 3, "4k": 4}

RECORD_FIELDS = (
    "k", "s_k", "is_prime", "k_mod4", "s_mod4", "ratio",
    "gt_0", "gt_2k", "gt_3k", "gt_4k",
)


class IntegrityError(Exception):
    """A checkpoint file is corrupted, incomplete, or from a different scan."""


@dataclass(frozen=True)
class ScanRecord:
    """Outcome of one S(k) evaluation with threshold and residue annotations."""

    k: int
    s_k: int
    is_prime: bool
    k_mod4: int
    s_mod4: int
    ratio: float
    gt_0: bool
    gt_2k: bool
    gt_3k: bool
    gt_4k: bool


@dataclass(frozen=True)
class ScanResult:
    """Ascending records plus per-threshold strict exceptions and equalities.

    Exceptions for threshold t are primes with S(k) < t*k strictly; boundary
    cases S(k) = t*k are reported separately so either reading of "fails
    S(k) > t*k" can be reconstructed.
    """

    limit: int
    primes_only: bool
    records: tuple[ScanRecord, ...]
    exceptions: dict[str, tuple[tuple[int, int], ...]]
    equalities: dict[str, tuple[tuple[int, int], ...]]


@dataclass(frozen=True)
class NegativeCensus:
    """Counts of k <= limit with S(k) < 0, split by divisibility by 3 and 5."""

    limit: int
    total: int
    div3_not5: int
    div5_not3: int
    div15: int
    other: int
    extremes: tuple[tuple[int, int], ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "limit": self.limit,
                "total": self.total,
                "div3_not5": self.div3_not5,
                "div5_not3": self.div5_not3,
                "div15": self.div15,
                "other": self.other,
                "extremes": [list(e) for e in self.extremes],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "NegativeCensus":
        data = json.loads(text)
        return cls(
            limit=data["limit"],
            total=data["total"],
            div3_not5=data["div3_not5"],
            div5_not3=data["div5_not3"],
            div15=data["div15"],
            other=data["other"],
            extremes=tuple((k, s) for k, s in data["extremes"]),
        )


@dataclass(frozen=True)
class Mod4Distribution:
    """S(k) mod 4 tallies over odd primes, with the k mod 4 correspondence."""

    prime_limit: int
    count_0: int
    count_2: int
    violations: tuple[tuple[int, int], ...]      # (k, S(k) mod 4) outside {0, 2}
    correspondence: dict[tuple[int, int], int]   # (k mod 4, S mod 4) -> count
    mismatches: tuple[int, ...]                  # primes where (k%4, S%4) is not (1,0)/(3,2)

    @property
    def imbalance(self) -> float:
        total = self.count_0 + self.count_2
        return abs(self.count_0 - self.count_2) / total if total else 0.0


# ---------------------------------------------------------------------------
# checkpointing
# ---------------------------------------------------------------------------

@dataclass
class Checkpoint:
    """Completed chunks of a scan, persisted as JSON lines with a checksum.

    The file layout is: a header line carrying the scan parameters, one line
    per completed chunk (ascending start k, with its (k, S(k)) pairs), and a
    final checksum line covering everything above it.
    """

    kind: str
    limit: int
    primes_only: bool
    chunk_size: int = CHUNK_SIZE
    version: int = 1
    chunks: dict[int, list[tuple[int, int]]] = field(default_factory=dict)

    def payload_lines(self) -> list[str]:
        header = {
            "version": self.version,
            "kind": self.kind,
            "limit": self.limit,
            "primes_only": self.primes_only,
            "chunk_size": self.chunk_size,
        }
        lines = [json.dumps(header, sort_keys=True)]
        for start in sorted(self.chunks):
            lines.append(
                json.dumps(
                    {"start": start, "pairs": [list(p) for p in self.chunks[start]]},
                    sort_keys=True,
                )
            )
        return lines

    def completed_ks(self) -> set[int]:
        return {k for pairs in self.chunks.values() for k, _ in pairs}


def save_checkpoint(state: Checkpoint, path: str) -> None:
    """Atomically persist a checkpoint (write to a temp file, then rename)."""
    lines = state.payload_lines()
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    content = body + json.dumps({"sha256": digest}) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".checkpoint-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(content)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str) -> Checkpoint:
    """Load and validate a checkpoint; raises IntegrityError on any corruption."""
    with open(path) as handle:
        text = handle.read()
    lines = text.splitlines()
    if len(lines) < 2:
        raise IntegrityError("checkpoint is truncated: header or checksum line missing")
    try:
        trailer = json.loads(lines[-1])
    except json.JSONDecodeError as exc:
        raise IntegrityError(f"checksum line is not valid JSON: {exc}") from exc
    if "sha256" not in trailer:
        raise IntegrityError("final line carries no sha256 checksum")
    body = "\n".join(lines[:-1]) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    if digest != trailer["sha256"]:
        raise IntegrityError("sha256 checksum mismatch: payload was altered")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise IntegrityError(f"header line is not valid JSON: {exc}") from exc
    if header.get("version") != 1:
        raise IntegrityError(f"unsupported checkpoint version {header.get('version')!r}")
    for key in ("kind", "limit", "primes_only", "chunk_size"):
        if key not in header:
            raise IntegrityError(f"header field {key!r} missing")
    state = Checkpoint(
        kind=header["kind"],
        limit=header["limit"],
        primes_only=header["primes_only"],
        chunk_size=header["chunk_size"],
        version=header["version"],
    )
    for line in lines[1:-1]:
        try:
            entry = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IntegrityError(f"chunk line is not valid JSON: {exc}") from exc
        if "start" not in entry or "pairs" not in entry:
            raise IntegrityError("chunk line missing 'start' or 'pairs'")
        state.chunks[entry["start"]] = [(k, s) for k, s in entry["pairs"]]
    return state


# ---------------------------------------------------------------------------
# scanning
# ---------------------------------------------------------------------------

def _scan_ks(limit: int, primes_only: bool) -> np.ndarray:
    if primes_only:
        tables = build_sieves(limit)
        return tables.primes[tables.primes <= limit].astype(np.int64)
    return np.arange(1, limit + 1, dtype=np.int64)


def _compute_pairs(
    ks: np.ndarray,
    workers: int,
    checkpoint_path: str | None,
    kind: str,
    limit: int,
    primes_only: bool,
    progress: Callable[[int, int], None] | None,
) -> dict[int, int]:
    """Evaluate S(k) for every k in ks, chunked, threaded, and checkpointed."""
    state: Checkpoint | None = None
    done: dict[int, int] = {}
    if checkpoint_path is not None:
        if os.path.exists(checkpoint_path):
            state = load_checkpoint(checkpoint_path)
            if (state.kind, state.limit, state.primes_only, state.chunk_size) != (
                kind, limit, primes_only, CHUNK_SIZE,
            ):
                raise IntegrityError(
                    "checkpoint belongs to a different scan: "
                    f"kind={state.kind!r} limit={state.limit} primes_only={state.primes_only}"
                )
            done = {k: s for pairs in state.chunks.values() for k, s in pairs}
        else:
            state = Checkpoint(kind=kind, limit=limit, primes_only=primes_only)

    todo = ks[~np.isin(ks, np.fromiter(done.keys(), dtype=np.int64, count=len(done)))] if done else ks
    chunks = [todo[i : i + CHUNK_SIZE] for i in range(0, len(todo), CHUNK_SIZE)]
    total = int(len(ks))
    completed = len(done)

    def work(chunk: np.ndarray) -> tuple[int, np.ndarray]:
        return int(chunk[0]), s_k_batch(chunk)

    results: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    if chunks:
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            futures = [pool.submit(work, c) for c in chunks]
            # Commit in ascending chunk order regardless of completion order.
            for chunk, fut in zip(chunks, futures):
                start, values = fut.result()
                results[start] = (chunk, values)
                pairs = [(int(k), int(s)) for k, s in zip(chunk, values)]
                done.update(pairs)
                completed += len(pairs)
                if state is not None:
                    state.chunks[start] = pairs
                    save_checkpoint(state, checkpoint_path)
                if progress is not None:
                    progress(completed, total)
    return done


def scan_thresholds(
    limit: int,
    primes_only: bool = False,
    workers: int = 1,
    checkpoint_path: str | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> ScanResult:
    """Scan S(k) up to limit and collect strict threshold exceptions over primes.

    Records are emitted for every scanned k in ascending order.  For each
    threshold t in {0, 2k, 3k, 4k}, the exception list holds (k, S(k)) for
    primes with S(k) < t*k strictly, and the equality list those with
    S(k) = t*k exactly; both are independent of the worker count.
    """
    if limit < 2:
        raise ValueError("limit must be at least 2")
    ks = _scan_ks(limit, primes_only)
    pairs = _compute_pairs(
        ks, workers, checkpoint_path, "threshold-scan", limit, primes_only, progress
    )
    prime_flags = build_sieves(limit).prime_flags

    records = []
    exceptions: dict[str, list[tuple[int, int]]] = {t: [] for t in THRESHOLDS}
    equalities: dict[str, list[tuple[int, int]]] = {t: [] for t in THRESHOLDS}
    for k in ks.tolist():
        s = pairs[k]
        is_prime = bool(prime_flags[k])
        records.append(
            ScanRecord(
                k=k,
                s_k=s,
                is_prime=is_prime,
                k_mod4=k % 4,
                s_mod4=s % 4,
                ratio=s / k,
                gt_0=s > 0,
                gt_2k=s > 2 * k,
                gt_3k=s > 3 * k,
                gt_4k=s > 4 * k,
            )
        )
        if is_prime:
            for t in THRESHOLDS:
                bound = _MULTIPLIER[t] * k
                if s < bound:
                    exceptions[t].append((k, s))
                elif s == bound:
                    equalities[t].append((k, s))
    return ScanResult(
        limit=limit,
        primes_only=primes_only,
        records=tuple(records),
        exceptions={t: tuple(v) for t, v in exceptions.items()},
        equalities={t: tuple(v) for t, v in equalities.items()},
    )


def negative_census(
    limit: int,
    workers: int = 1,
    checkpoint_path: str | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> NegativeCensus:
    """Count k <= limit with S(k) < 0, partitioned by divisibility by 3 and 5.

    The extremes list collects every (k, S(k)) with S(k) < -k, ascending in k.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    ks = np.arange(1, limit + 1, dtype=np.int64)
    pairs = _compute_pairs(
        ks, workers, checkpoint_path, "negative-census", limit, False, progress
    )
    div3_not5 = div5_not3 = div15 = other = 0
    extremes = []
    for k in ks.tolist():
        s = pairs[k]
        if s >= 0:
            continue
        if k % 15 == 0:
            div15 += 1
        elif k % 3 == 0:
            div3_not5 += 1
        elif k % 5 == 0:
            div5_not3 += 1
        else:
            other += 1
        if s < -k:
            extremes.append((k, s))
    return NegativeCensus(
        limit=limit,
        total=div3_not5 + div5_not3 + div15 + other,
        div3_not5=div3_not5,
        div5_not3=div5_not3,
        div15=div15,
        other=other,
        extremes=tuple(extremes),
    )


def mod4_distribution(
    prime_limit: int,
    workers: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> Mod4Distribution:
    """Tally S(k) mod 4 over odd primes k and its correspondence with k mod 4."""
    if prime_limit < 5:
        raise ValueError("prime_limit must be at least 5")
    tables = build_sieves(prime_limit)
    ks = tables.primes[(tables.primes <= prime_limit) & (tables.primes > 2)].astype(np.int64)
    pairs = _compute_pairs(ks, workers, None, "mod4", prime_limit, True, progress)
    count = {0: 0, 2: 0}
    violations = []
    correspondence: dict[tuple[int, int], int] = {}
    mismatches = []
    for k in ks.tolist():
        s4 = pairs[k] % 4
        if s4 in count:
            count[s4] += 1
        else:
            violations.append((k, s4))
        key = (k % 4, s4)
        correspondence[key] = correspondence.get(key, 0) + 1
        if key not in ((1, 0), (3, 2)):
            mismatches.append(k)
    return Mod4Distribution(
        prime_limit=prime_limit,
        count_0=count[0],
        count_2=count[2],
        violations=tuple(violations),
        correspondence=correspondence,
        mismatches=tuple(mismatches),
    )


# ---------------------------------------------------------------------------
# CSV round-trip
# ---------------------------------------------------------------------------

def write_records_csv(records: Iterable[ScanRecord], sink) -> int:
    """Write scan records as CSV; booleans as 1/0, ratio as shortest round-trip repr."""
    own = isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__")
    handle = open(sink, "w", newline="") if own else sink
    count = 0
    try:
        writer = csv.writer(handle)
        writer.writerow(RECORD_FIELDS)
        for r in records:
            writer.writerow(
                [
                    r.k,
                    r.s_k,
                    int(r.is_prime),
                    r.k_mod4,
                    r.s_mod4,
                    repr(r.ratio),
                    int(r.gt_0),
                    int(r.gt_2k),
                    int(r.gt_3k),
                    int(r.gt_4k),
                ]
            )
            count += 1
    finally:
        if own:
            handle.close()
    return count


def read_records_csv(source) -> list[ScanRecord]:
    """Parse a records CSV back into ScanRecord objects (exact round-trip)."""
    own = isinstance(source, (str, bytes)) or hasattr(source, "__fspath__")
    handle = open(source, newline="") if own else source
    try:
        reader = csv.reader(handle)
        header = next(reader)
        if tuple(header) != RECORD_FIELDS:
            raise ValueError(f"unexpected CSV header {header!r}")
        out = []
        for row in reader:
            out.append(
                ScanRecord(
                    k=int(row[0]),
                    s_k=int(row[1]),
                    is_prime=bool(int(row[2])),
                    k_mod4=int(row[3]),
                    s_mod4=int(row[4]),
                    ratio=float(row[5]),
                    gt_0=bool(int(row[6])),
                    gt_2k=bool(int(row[7])),
                    gt_3k=bool(int(row[8])),
                    gt_4k=bool(int(row[9])),
                )
            )
        return out
    finally:
        if own:
            handle.close()

"""Scanner behavior: scans, census, mod-4 tallies, checkpoints, CSV round-trip."""

from __future__ import annotations

import io
import os

import pytest

from thetasums.published import EXCEPTIONS_2K, EXCEPTIONS_3K
from thetasums.scanner import (
    CHUNK_SIZE,
    Checkpoint,
    IntegrityError,
    NegativeCensus,
    load_checkpoint,
    mod4_distribution,
    negative_census,
    read_records_csv,
    save_checkpoint,
    scan_thresholds,
    write_records_csv,
)


@pytest.fixture(scope="module")
def scan_3k():
    return scan_thresholds(3000, primes_only=True, workers=2)


def test_scan_records_small():
    result = scan_thresholds(100)
    assert [r.k for r in result.records] == list(range(1, 101))
    by_k = {r.k: r for r in result.records}
    assert by_k[2].s_k == 1 and by_k[3].s_k == 2 and by_k[19].s_k == 38
    assert by_k[19].is_prime and not by_k[20].is_prime
    assert by_k[19].ratio == 2.0 and by_k[19].k_mod4 == 3 and by_k[19].s_mod4 == 2
    assert result.equalities["2k"] == ((19, 38),)
    assert result.exceptions["0"] == ()
    with pytest.raises(ValueError):
        scan_thresholds(1)


def test_scan_exception_lists_match_published(scan_3k):
    got_2k = [k for k, _ in scan_3k.exceptions["2k"]]
    got_3k = [k for k, _ in scan_3k.exceptions["3k"]]
    assert got_2k == [k for k in EXCEPTIONS_2K if k <= 3000]
    assert got_3k == [k for k in EXCEPTIONS_3K if k <= 3000]
    assert all(r.is_prime for r in scan_3k.records)


def test_scan_worker_independence(scan_3k):
    again = scan_thresholds(3000, primes_only=True, workers=5)
    assert again.records == scan_3k.records
    assert again.exceptions == scan_3k.exceptions
    assert again.equalities == scan_3k.equalities


def test_records_csv_round_trip(scan_3k):
    buf = io.StringIO()
    count = write_records_csv(scan_3k.records, buf)
    assert count == len(scan_3k.records)
    buf.seek(0)
    assert tuple(read_records_csv(buf)) == scan_3k.records
    bad = io.StringIO("wrong,header\n1,2\n")
    with pytest.raises(ValueError):
        read_records_csv(bad)


def test_negative_census_small():
    census = negative_census(1000)
    assert census == NegativeCensus(
        limit=1000, total=1, div3_not5=0, div5_not3=0, div15=1, other=0,
        extremes=(),
    )
    assert NegativeCensus.from_json(census.to_json()) == census


def test_mod4_distribution_small():
    dist = mod4_distribution(1000)
    assert dist.count_0 == 80 and dist.count_2 == 87
    assert dist.violations == () and dist.mismatches == ()
    assert 0 < dist.imbalance < 0.05
    # Every odd prime lands in one of the two admissible residues.
    assert dist.count_0 + dist.count_2 == sum(dist.correspondence.values())
    assert set(dist.correspondence) == {(1, 0), (3, 2)}


def test_checkpoint_round_trip(tmp_path):
    path = str(tmp_path / "state.ckpt")
    state = Checkpoint(kind="threshold-scan", limit=500, primes_only=True)
    state.chunks[2] = [(2, 1), (3, 2)]
    state.chunks[5] = [(5, 4)]
    save_checkpoint(state, path)
    back = load_checkpoint(path)
    assert back.chunks == state.chunks
    assert (back.kind, back.limit, back.primes_only, back.chunk_size) == (
        "threshold-scan", 500, True, CHUNK_SIZE,
    )
    assert back.completed_ks() == {2, 3, 5}


def test_checkpoint_detects_corruption(tmp_path):
    path = str(tmp_path / "state.ckpt")
    state = Checkpoint(kind="threshold-scan", limit=500, primes_only=True)
    state.chunks[2] = [(2, 1)]
    save_checkpoint(state, path)
    raw = open(path).read()

    flipped = raw.replace("[[2, 1]]", "[[2, 7]]")
    assert flipped != raw
    open(path, "w").write(flipped)
    with pytest.raises(IntegrityError):
        load_checkpoint(path)

    open(path, "w").write("\n".join(raw.splitlines()[:-1]) + "\n")
    with pytest.raises(IntegrityError):
        load_checkpoint(path)

    open(path, "w").write("not json\n" + raw)
    with pytest.raises(IntegrityError):
        load_checkpoint(path)


def test_checkpoint_scan_mismatch_rejected(tmp_path):
    path = str(tmp_path / "state.ckpt")
    state = Checkpoint(kind="threshold-scan", limit=500, primes_only=True)
    save_checkpoint(state, path)
    with pytest.raises(IntegrityError):
        scan_thresholds(1000, primes_only=True, checkpoint_path=path)
    with pytest.raises(IntegrityError):
        negative_census(500, checkpoint_path=path)   # kind differs


class _Abort(Exception):
    pass


def test_interrupt_resume_identical(tmp_path):
    full = scan_thresholds(10_000, primes_only=True, workers=3)

    calls = {"n": 0}

    def interrupter(done, total):
        calls["n"] += 1
        if calls["n"] == 2:
            raise _Abort

    path = str(tmp_path / "scan.ckpt")
    with pytest.raises(_Abort):
        scan_thresholds(10_000, primes_only=True, workers=3,
                        checkpoint_path=path, progress=interrupter)
    partial = load_checkpoint(path)
    assert 0 < len(partial.completed_ks()) < 1229

    resumed = scan_thresholds(10_000, primes_only=True, workers=3,
                              checkpoint_path=path)
    assert resumed.records == full.records
    assert resumed.exceptions == full.exceptions
    # Byte-level identity of the delimited output.
    bf, br = io.StringIO(), io.StringIO()
    write_records_csv(full.records, bf)
    write_records_csv(resumed.records, br)
    assert bf.getvalue() == br.getvalue()


def test_completed_checkpoint_reused(tmp_path):
    path = str(tmp_path / "census.ckpt")
    first = negative_census(1200, checkpoint_path=path)
    assert os.path.exists(path)
    again = negative_census(1200, checkpoint_path=path)
    assert again == first == negative_census(1200)


def test_progress_reports_totals():
    seen = []
    scan_thresholds(600, primes_only=True,
                    progress=lambda done, total: seen.append((done, total)))
    assert seen[-1][0] == seen[-1][1] == 109   # primes below 600
    assert [d for d, _ in seen] == sorted({d for d, _ in seen})

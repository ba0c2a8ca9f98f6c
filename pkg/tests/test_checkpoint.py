"""Tests for checkpointing and resuming a scan"""

import pytest

from src.errors import CorruptCheckpointError, InputError
from src.group.params import make_group
from src.search import verify
from src.search.checkpoint import (
    CheckpointWriter,
    ScanState,
    checkpoint_resume,
    checkpoint_save,
    decode_checkpoint,
    encode_checkpoint,
)
from src.search.report import NRecord
from src.search.verify import scan_shard


def make_state():
    record = NRecord(n=5, floor=10, min_card=10, witnesses=[(1, 1, 1, 1, 5)], orbits_scanned=7,
                     pruned_counts={"canonical": 40, "validity": 3}, elapsed=0.25)
    return ScanState(p=5, m=2, n_values=(5, 6), shards=1, shard_id=0,
                     records={5: record}, frontiers={5: (1, 1, 1, 2, 7)})


def interrupt_after(monkeypatch, calls):
    real = verify.sumset_card
    seen = {"calls": 0}

    def flaky(A):
        seen["calls"] += 1
        if seen["calls"] > calls:
            raise KeyboardInterrupt
        return real(A)

    monkeypatch.setattr(verify, "sumset_card", flaky)
    return real


def strip_timing(records):
    G = make_group(5, 2)
    return [rec.body(G) for rec in records]


def test_encode_decode():
    state = make_state()
    again = decode_checkpoint(encode_checkpoint(state))
    assert again == state


def test_save_and_resume(tmp_path):
    path = tmp_path / "scan.ckpt"
    checkpoint_save(make_state(), path)
    state = checkpoint_resume(path, 5, 2, [5, 6])
    assert state.frontiers[5] == (1, 1, 1, 2, 7)
    assert state.records[5].orbits_scanned == 7
    assert not (tmp_path / "scan.ckpt.tmp").exists()


def test_resume_rejects_other_scan(tmp_path):
    path = tmp_path / "scan.ckpt"
    checkpoint_save(make_state(), path)
    with pytest.raises(CorruptCheckpointError):
        checkpoint_resume(path, 5, 2, [6])
    with pytest.raises(CorruptCheckpointError):
        checkpoint_resume(path, 5, 2, [5, 6], shards=2, shard_id=1)
    with pytest.raises(CorruptCheckpointError):
        checkpoint_resume(tmp_path / "missing.ckpt", 5, 2, [5, 6])


def test_flipped_byte_is_detected(tmp_path):
    data = bytearray(encode_checkpoint(make_state()))
    data[-1] ^= 0xFF
    with pytest.raises(CorruptCheckpointError, match="hash"):
        decode_checkpoint(bytes(data))

    with pytest.raises(CorruptCheckpointError):
        decode_checkpoint(b"no header here")
    with pytest.raises(CorruptCheckpointError):
        decode_checkpoint(b"{not json\n")
    with pytest.raises(CorruptCheckpointError):
        decode_checkpoint(b'{"magic": "other"}\n')


def test_writer_context_manager(tmp_path):
    path = tmp_path / "scan.ckpt"
    state = make_state()
    with CheckpointWriter(path) as writer:
        writer.submit(state)
        state.frontiers[5] = (1, 1, 1, 3, 3)
        writer.submit(state)
    assert decode_checkpoint(path.read_bytes()).frontiers[5] == (1, 1, 1, 3, 3)


def test_interrupt_and_resume_matches_straight_run(tmp_path, monkeypatch):
    G = make_group(5, 2)
    straight, _ = scan_shard(G, [5, 6], 1, 0, max_witnesses=5)
    first_size = straight[0].orbits_scanned

    path = tmp_path / "scan.ckpt"
    for stop in (3, first_size + 2):
        if path.exists():
            path.unlink()
        real = interrupt_after(monkeypatch, stop)
        with pytest.raises(KeyboardInterrupt):
            scan_shard(G, [5, 6], 1, 0, max_witnesses=5, checkpoint_path=path, checkpoint_every=1)
        monkeypatch.setattr(verify, "sumset_card", real)

        state = checkpoint_resume(path, 5, 2, [5, 6])
        scanned = sum(rec.orbits_scanned for rec in state.records.values())
        assert scanned == stop

        resumed, _ = scan_shard(G, [5, 6], 1, 0, max_witnesses=5, checkpoint_path=path,
                                resume=True, checkpoint_every=1)
        assert strip_timing(resumed) == strip_timing(straight)


def test_resume_of_finished_scan_rescans_nothing(tmp_path, monkeypatch):
    G = make_group(5, 2)
    path = tmp_path / "scan.ckpt"
    done, _ = scan_shard(G, [5], 1, 0, max_witnesses=5, checkpoint_path=path)
    interrupt_after(monkeypatch, 0)
    again, _ = scan_shard(G, [5], 1, 0, max_witnesses=5, checkpoint_path=path, resume=True)
    assert strip_timing(again) == strip_timing(done)


def test_resume_needs_a_checkpoint_path():
    G = make_group(5, 2)
    with pytest.raises(InputError, match="checkpoint"):
        scan_shard(G, [5], 1, 0, max_witnesses=5, resume=True)

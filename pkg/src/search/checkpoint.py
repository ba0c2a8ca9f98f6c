"""Scan checkpoints: JSON header line plus binary frontier, written by a background thread"""

import hashlib
import json
import logging
import os
import queue
import threading
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import CorruptCheckpointError
from .report import NRecord

logger = logging.getLogger(__name__)

MAGIC = "sumset-checkpoint/1"

PathLike = Union[str, os.PathLike]


@dataclass
class ScanState:
    """
    Everything needed to continue a scan

    ``frontiers[n]`` is the last orbit tag fully processed for n; sizes in
    ``completed`` are finished and are not rescanned.
    """

    p: int
    m: int
    n_values: Tuple[int, ...]
    shards: int
    shard_id: int
    records: Dict[int, NRecord] = field(default_factory=dict)
    frontiers: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    completed: Tuple[int, ...] = ()


def _digest(header: Dict, payload: bytes) -> str:
    text = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(text + payload).hexdigest()


def encode_checkpoint(state: ScanState) -> bytes:
    """Serialize a scan state to the on-disk format"""
    ns = [n for n in state.n_values if n in state.frontiers]
    tags = [tag for n in ns for tag in state.frontiers[n]]
    payload = np.asarray(tags, dtype="<u4").tobytes()
    header = {
        "magic": MAGIC,
        "p": state.p,
        "m": state.m,
        "n_values": list(state.n_values),
        "shards": state.shards,
        "shard_id": state.shard_id,
        "completed": list(state.completed),
        "records": [
            {
                "n": rec.n,
                "floor": rec.floor,
                "min_card": rec.min_card,
                "witnesses": [list(w) for w in rec.witnesses],
                "orbits_scanned": rec.orbits_scanned,
                "pruned_counts": dict(rec.pruned_counts),
                "elapsed": rec.elapsed,
            }
            for rec in (state.records[n] for n in state.n_values if n in state.records)
        ],
        "frontiers": [[n, len(state.frontiers[n])] for n in ns],
    }
    header["sha256"] = _digest(header, payload)
    return json.dumps(header, sort_keys=True).encode("utf-8") + b"\n" + payload


def decode_checkpoint(data: bytes) -> ScanState:
    """
    Parse and verify a checkpoint

    Raises:
        CorruptCheckpointError: If the header is unreadable or the content hash does not match
    """
    head, sep, payload = data.partition(b"\n")
    if not sep:
        raise CorruptCheckpointError("checkpoint has no header line")
    try:
        header = json.loads(head.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CorruptCheckpointError(f"checkpoint header is not JSON: {e}") from e
    if not isinstance(header, dict) or header.get("magic") != MAGIC:
        raise CorruptCheckpointError("not a sumset checkpoint")
    expected = header.pop("sha256", None)
    if expected != _digest(header, payload):
        raise CorruptCheckpointError("checkpoint content hash mismatch")

    try:
        tags = np.frombuffer(payload, dtype="<u4")
        frontiers = {}
        offset = 0
        for n, length in header["frontiers"]:
            frontiers[int(n)] = tuple(int(i) for i in tags[offset:offset + length])
            offset += length
        if offset != len(tags):
            raise CorruptCheckpointError("frontier payload length does not match the header")
        records = {
            int(r["n"]): NRecord(
                n=int(r["n"]),
                floor=int(r["floor"]),
                min_card=r["min_card"],
                witnesses=[tuple(w) for w in r["witnesses"]],
                orbits_scanned=int(r["orbits_scanned"]),
                pruned_counts={k: int(v) for k, v in r["pruned_counts"].items()},
                elapsed=float(r["elapsed"]),
            )
            for r in header["records"]
        }
        return ScanState(
            p=int(header["p"]),
            m=int(header["m"]),
            n_values=tuple(int(n) for n in header["n_values"]),
            shards=int(header["shards"]),
            shard_id=int(header["shard_id"]),
            records=records,
            frontiers=frontiers,
            completed=tuple(int(n) for n in header["completed"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise CorruptCheckpointError(f"malformed checkpoint header: {e}") from e


def _write_atomic(path: PathLike, data: bytes):
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def checkpoint_save(state: ScanState, path: PathLike):
    """Write a checkpoint, replacing any previous one atomically"""
    _write_atomic(path, encode_checkpoint(state))
    logger.debug(f"Checkpoint written to {path}")


def checkpoint_resume(
    path: PathLike,
    p: int,
    m: int,
    n_values: Sequence[int],
    shards: int = 1,
    shard_id: int = 0,
) -> ScanState:
    """
    Load a checkpoint for the scan described by the arguments

    Raises:
        CorruptCheckpointError: If the file is damaged or was written for another scan
    """
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise CorruptCheckpointError(f"cannot read checkpoint {path}: {e}") from e
    state = decode_checkpoint(data)
    wanted = (p, m, tuple(n_values), shards, shard_id)
    found = (state.p, state.m, state.n_values, state.shards, state.shard_id)
    if wanted != found:
        raise CorruptCheckpointError(
            f"checkpoint is for (p, m, n, shards, shard_id) = {found}, not {wanted}"
        )
    logger.info(f"Resuming from checkpoint {path}: completed sizes {list(state.completed)}")
    return state


class CheckpointWriter:
    """Serializes checkpoint writes through one background thread"""

    def __init__(self, path: PathLike):
        """
        Initialize checkpoint writer

        Args:
            path: Checkpoint file, replaced on every write
        """
        self.path = path
        self._queue: "queue.Queue[Optional[bytes]]" = queue.Queue()
        self._latest: Optional[bytes] = None
        self._running = True
        self._thread = threading.Thread(target=self._write_loop, daemon=True)
        self._thread.start()

    def submit(self, state: ScanState):
        """Queue a snapshot (thread-safe); the state is serialized immediately"""
        data = encode_checkpoint(state)
        self._latest = data
        if self._running:
            self._queue.put(data)

    def _write_loop(self):
        """Write queued snapshots in background thread"""
        while True:
            data = self._queue.get()
            if data is None:
                break
            try:
                _write_atomic(self.path, data)
                logger.debug(f"Checkpoint written to {self.path}")
            except OSError as e:
                logger.warning(f"Error writing checkpoint: {e}")

    def flush(self):
        """Write the latest snapshot synchronously"""
        if self._latest is not None:
            _write_atomic(self.path, self._latest)

    def close(self):
        """Drain pending writes and stop the thread"""
        if not self._running:
            return
        self._running = False
        self._queue.put(None)
        self._thread.join()
        logger.info(f"Checkpoint writer for {self.path} closed")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
        return False

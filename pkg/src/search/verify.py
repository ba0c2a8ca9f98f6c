"""Exhaustive verification of the conjectured floor, shard by shard"""

import hashlib
import logging
import math
import multiprocessing
import time
from collections import Counter
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..bounds.floor import conjecture_floor
from ..errors import BudgetExceededError, InputError, ShardOutOfRangeError
from ..group.automorphisms import gl_order
from ..group.params import GroupParams, make_group
from ..multiset.multiset import Multiset
from ..sumset.engine import sumset_card
from ..utils.settings import Settings, get_settings
from .checkpoint import CheckpointWriter, ScanState, checkpoint_resume
from .enumerate import iter_valid_sequences
from .report import NRecord, SearchReport, merge_reports, verify_witnesses

logger = logging.getLogger(__name__)

# Canonical leaves between two checkpoint snapshots.
CHECKPOINT_EVERY = 2000


def shard_of(tag: Sequence[int], shards: int) -> int:
    """Stable shard of an orbit tag: 64-bit blake2b of the uint32 sequence, mod shards"""
    if shards == 1:
        return 0
    digest = hashlib.blake2b(np.asarray(tag, dtype="<u4").tobytes(), digest_size=8).digest()
    return int.from_bytes(digest, "little") % shards


def estimate_orbits(p: int, m: int, n: int) -> float:
    """Multisets of size n on the p^m - 1 nonzero elements, divided by |GL_m(F_p)|"""
    return math.comb(p ** m - 2 + n, n) / gl_order(p, m)


def check_budget(p: int, m: int, n_values: Iterable[int], budget: int):
    """
    Every shard walks the whole canonical tree and only keeps its own leaves,
    so the estimate is not divided by the shard count.

    Raises:
        BudgetExceededError: If some size needs more orbits than the budget
    """
    for n in n_values:
        orbits = estimate_orbits(p, m, n)
        if orbits > budget:
            raise BudgetExceededError(
                f"Z_{p}^{m}, n={n}: about {orbits:.3g} orbits exceeds the budget "
                f"{budget}; raise SUMSET_ORBIT_BUDGET or pass --allow-large"
            )


def _scan_size(
    G: GroupParams,
    state: ScanState,
    n: int,
    max_witnesses: int,
    writer: Optional[CheckpointWriter],
    checkpoint_every: int,
) -> NRecord:
    record = state.records.get(n)
    if record is None:
        record = NRecord(n=n, floor=conjecture_floor(G.p, G.m, n))
        state.records[n] = record
    stats: Counter = Counter(record.pruned_counts)
    frontier = state.frontiers.get(n)
    started = time.perf_counter()
    base_elapsed = record.elapsed
    since_snapshot = 0
    logger.info(f"Scanning Z_{G.p}^{G.m}, n={n}, shard {state.shard_id}/{state.shards}")

    for tag in iter_valid_sequences(G, n, canonical_only=True, start_after=frontier, stats=stats):
        if shard_of(tag, state.shards) == state.shard_id:
            card = sumset_card(Multiset.from_elements(G, tag))
            record.observe(tag, card, max_witnesses)
        state.frontiers[n] = tag
        since_snapshot += 1
        if writer is not None and since_snapshot >= checkpoint_every:
            record.pruned_counts = dict(stats)
            record.elapsed = base_elapsed + time.perf_counter() - started
            writer.submit(state)
            since_snapshot = 0

    record.pruned_counts = dict(stats)
    record.elapsed = base_elapsed + time.perf_counter() - started
    state.completed = state.completed + (n,)
    state.frontiers.pop(n, None)
    if writer is not None:
        writer.submit(state)
    logger.info(
        f"n={n}: {record.orbits_scanned} orbits, min #Sigma = {record.min_card}, "
        f"floor {record.floor}, {record.verdict.value}"
    )
    return record


def scan_shard(
    G: GroupParams,
    n_values: Sequence[int],
    shards: int,
    shard_id: int,
    max_witnesses: int,
    checkpoint_path=None,
    resume: bool = False,
    checkpoint_every: int = CHECKPOINT_EVERY,
) -> Tuple[List[NRecord], float]:
    """
    Scan every size for one shard, optionally checkpointing and resuming

    Returns:
        The records in n order and the wall-clock seconds spent
    """
    if resume and checkpoint_path is None:
        raise InputError("resume needs a checkpoint path")
    if resume:
        state = checkpoint_resume(checkpoint_path, G.p, G.m, n_values, shards, shard_id)
    else:
        state = ScanState(p=G.p, m=G.m, n_values=tuple(n_values), shards=shards, shard_id=shard_id)

    started = time.perf_counter()
    writer = CheckpointWriter(checkpoint_path) if checkpoint_path is not None else None
    try:
        for n in n_values:
            if n in state.completed:
                logger.info(f"n={n} already complete in checkpoint")
                continue
            _scan_size(G, state, n, max_witnesses, writer, checkpoint_every)
    except KeyboardInterrupt:
        if writer is not None:
            writer.close()
            writer.flush()
            logger.warning(f"Interrupted; checkpoint flushed to {checkpoint_path}")
        raise
    finally:
        if writer is not None:
            writer.close()
    return [state.records[n] for n in n_values], time.perf_counter() - started


def _config(p, m, n_values, shards, shard_id, max_witnesses):
    return {
        "command": "verify",
        "p": p,
        "m": m,
        "n_values": list(n_values),
        "shards": shards,
        "shard_id": shard_id,
        "max_witnesses": max_witnesses,
    }


def _run_shard(args) -> SearchReport:
    p, m, n_values, shards, shard_id, settings = args
    G = make_group(p, m, dense_cap=settings.dense_cap)
    records, wall = scan_shard(G, n_values, shards, shard_id, settings.max_witnesses)
    return SearchReport(
        p=p,
        m=m,
        records=records,
        config=_config(p, m, n_values, shards, shard_id, settings.max_witnesses),
        wall_clock=wall,
    )


def verify_conjecture(
    p: int,
    m: int,
    n_values: Sequence[int],
    shards: int = 1,
    shard_id: int = 0,
    workers: int = 1,
    allow_large: bool = False,
    checkpoint_path=None,
    resume: bool = False,
    settings: Optional[Settings] = None,
) -> SearchReport:
    """
    Minimum #Sigma(A) over valid multisets of each size, compared with the conjectured floor

    Args:
        p: Odd prime
        m: Rank
        n_values: Multiset sizes, each in [0, mp-1]
        shards: Number of disjoint orbit shards
        shard_id: Shard scanned by this call (ignored when workers > 1)
        workers: With more than one worker every shard is scanned on a process
            pool and the reports are merged
        allow_large: Skip the orbit budget check
        checkpoint_path: Checkpoint file for a single-process run
        resume: Continue from checkpoint_path
        settings: Limits (default: environment settings)

    Returns:
        SearchReport with one record per size

    Raises:
        BudgetExceededError: If the estimated work is over budget
        InputError: If resume is set without a checkpoint path
        ShardOutOfRangeError: Unless 0 <= shard_id < shards
    """
    settings = settings or get_settings()
    n_values = tuple(int(n) for n in n_values)
    G = make_group(p, m, dense_cap=settings.dense_cap)
    if shards < 1 or not 0 <= shard_id < shards:
        raise ShardOutOfRangeError(f"shard_id={shard_id} outside [0, {shards})")
    if resume and checkpoint_path is None:
        raise InputError("resume needs a checkpoint path")
    for n in n_values:
        conjecture_floor(p, m, n)
    if not allow_large:
        check_budget(p, m, n_values, settings.orbit_budget)

    if workers > 1:
        if checkpoint_path is not None:
            raise ValueError("checkpointing is only supported for single-process runs")
        total = max(shards, workers)
        jobs = [(p, m, n_values, total, sid, settings) for sid in range(total)]
        logger.info(f"Scanning {total} shards of Z_{p}^{m} on {workers} workers")
        with multiprocessing.Pool(workers) as pool:
            reports = pool.map(_run_shard, jobs)
        report = merge_reports(reports, settings.max_witnesses)
    else:
        records, wall = scan_shard(
            G, n_values, shards, shard_id, settings.max_witnesses,
            checkpoint_path=checkpoint_path, resume=resume,
        )
        report = SearchReport(
            p=p,
            m=m,
            records=records,
            config=_config(p, m, n_values, shards, shard_id, settings.max_witnesses),
            wall_clock=wall,
        )
    verify_witnesses(report)
    return report


def verify_peng(p: int, settings: Optional[Settings] = None, **kwargs) -> SearchReport:
    """Every valid multiset of size 2p-1 in Z_p^2 has full sumset"""
    report = verify_conjecture(p, 2, [2 * p - 1], settings=settings, **kwargs)
    report.config["command"] = "peng"
    rec = report.records[0]
    holds = rec.min_card == p * p
    logger.info(f"Peng check at p={p}: min #Sigma = {rec.min_card}, {'holds' if holds else 'fails'}")
    return report

"""Search reports: per-size minima, witnesses and verdicts"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .. import __version__
from ..errors import GroupMismatchError
from ..group.params import GroupParams, make_group
from ..multiset.multiset import Multiset
from ..multiset.validity import is_valid
from ..sumset.engine import sumset_card

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    CONFIRMED = "CONFIRMED"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    EMPTY = "EMPTY"


@dataclass
class NRecord:
    """Scan outcome for one multiset size n"""

    n: int
    floor: int
    min_card: Optional[int] = None
    witnesses: List[Tuple[int, ...]] = field(default_factory=list)
    orbits_scanned: int = 0
    pruned_counts: Dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def verdict(self) -> Verdict:
        if self.min_card is None:
            return Verdict.EMPTY
        if self.min_card < self.floor:
            return Verdict.COUNTEREXAMPLE
        return Verdict.CONFIRMED

    def observe(self, tag: Tuple[int, ...], card: int, max_witnesses: int):
        """Account for one scanned orbit representative"""
        self.orbits_scanned += 1
        if self.min_card is None or card < self.min_card:
            self.min_card = card
            self.witnesses = [tag]
        elif card == self.min_card and len(self.witnesses) < max_witnesses:
            self.witnesses.append(tag)

    def body(self, group: GroupParams) -> Dict[str, Any]:
        return {
            "n": self.n,
            "floor": self.floor,
            "min_card": self.min_card,
            "verdict": self.verdict.value,
            "witnesses": [
                {"multiset": Multiset.from_elements(group, tag).to_literal(), "orbit_tag": list(tag)}
                for tag in self.witnesses
            ],
            "orbits_scanned": self.orbits_scanned,
            "pruned_counts": dict(sorted(self.pruned_counts.items())),
        }

    @classmethod
    def from_body(cls, data: Dict[str, Any], elapsed: float = 0.0) -> "NRecord":
        return cls(
            n=int(data["n"]),
            floor=int(data["floor"]),
            min_card=None if data["min_card"] is None else int(data["min_card"]),
            witnesses=[tuple(int(i) for i in w["orbit_tag"]) for w in data["witnesses"]],
            orbits_scanned=int(data["orbits_scanned"]),
            pruned_counts={k: int(v) for k, v in data["pruned_counts"].items()},
            elapsed=elapsed,
        )


def merge_records(a: NRecord, b: NRecord, max_witnesses: int) -> NRecord:
    """
    Fold two records for the same n from disjoint shards

    Witnesses are the smallest tags attaining the joint minimum. Prune counts
    take the maximum since every shard walks the same tree.
    """
    if (a.n, a.floor) != (b.n, b.floor):
        raise ValueError(f"cannot merge records for n={a.n} and n={b.n}")
    cards = [r.min_card for r in (a, b) if r.min_card is not None]
    low = min(cards) if cards else None
    tags = sorted({t for r in (a, b) if r.min_card == low and low is not None for t in r.witnesses})
    pruned = {k: max(a.pruned_counts.get(k, 0), b.pruned_counts.get(k, 0))
              for k in set(a.pruned_counts) | set(b.pruned_counts)}
    return NRecord(
        n=a.n,
        floor=a.floor,
        min_card=low,
        witnesses=tags[:max_witnesses],
        orbits_scanned=a.orbits_scanned + b.orbits_scanned,
        pruned_counts=pruned,
        elapsed=a.elapsed + b.elapsed,
    )


@dataclass
class SearchReport:
    """Result of an exhaustive scan over one or more multiset sizes"""

    p: int
    m: int
    records: List[NRecord]
    config: Dict[str, Any] = field(default_factory=dict)
    artifact_version: str = __version__
    wall_clock: float = 0.0

    @property
    def group(self) -> GroupParams:
        return make_group(self.p, self.m)

    def record(self, n: int) -> NRecord:
        for rec in self.records:
            if rec.n == n:
                return rec
        raise KeyError(f"no record for n={n}")

    @property
    def verdict(self) -> Verdict:
        """COUNTEREXAMPLE if any size has one, EMPTY if every size is empty"""
        verdicts = {rec.verdict for rec in self.records}
        if Verdict.COUNTEREXAMPLE in verdicts:
            return Verdict.COUNTEREXAMPLE
        if verdicts and verdicts <= {Verdict.EMPTY}:
            return Verdict.EMPTY
        return Verdict.CONFIRMED

    def body(self) -> Dict[str, Any]:
        G = self.group
        return {
            "artifact_version": self.artifact_version,
            "config": self.config,
            "p": self.p,
            "m": self.m,
            "records": [rec.body(G) for rec in self.records],
        }

    def body_sha256(self) -> str:
        """Hash of the report without timing"""
        text = json.dumps(self.body(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        data = self.body()
        data["body_sha256"] = self.body_sha256()
        data["timing"] = {
            "elapsed_seconds": {str(rec.n): rec.elapsed for rec in self.records},
            "wall_clock_seconds": self.wall_clock,
        }
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SearchReport":
        timing = data.get("timing", {})
        elapsed = timing.get("elapsed_seconds", {})
        report = cls(
            p=int(data["p"]),
            m=int(data["m"]),
            records=[NRecord.from_body(r, elapsed.get(str(r["n"]), 0.0)) for r in data["records"]],
            config=data.get("config", {}),
            artifact_version=data.get("artifact_version", __version__),
            wall_clock=timing.get("wall_clock_seconds", 0.0),
        )
        expected = data.get("body_sha256")
        if expected is not None and expected != report.body_sha256():
            raise ValueError("report body does not match its body_sha256")
        return report

    @classmethod
    def from_json(cls, text: str) -> "SearchReport":
        return cls.from_dict(json.loads(text))


def merge_reports(reports: Iterable[SearchReport], max_witnesses: int = 5) -> SearchReport:
    """
    Associative, order-independent fold of shard reports over the same group and sizes

    The merged config drops the shard id.
    """
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    merged = {rec.n: rec for rec in first.records}
    for other in reports[1:]:
        if (other.p, other.m) != (first.p, first.m):
            raise GroupMismatchError(
                f"cannot merge reports over Z_{first.p}^{first.m} and Z_{other.p}^{other.m}"
            )
        if set(merged) != {rec.n for rec in other.records}:
            raise ValueError("reports cover different sizes")
        for rec in other.records:
            merged[rec.n] = merge_records(merged[rec.n], rec, max_witnesses)
    config = {k: v for k, v in first.config.items() if k != "shard_id"}
    logger.info(f"Merged {len(reports)} shard reports for Z_{first.p}^{first.m}")
    return SearchReport(
        p=first.p,
        m=first.m,
        records=[merged[n] for n in sorted(merged)],
        config=config,
        artifact_version=first.artifact_version,
        wall_clock=max(r.wall_clock for r in reports),
    )


def verify_witnesses(report: SearchReport):
    """
    Recheck that every witness is valid and attains its record's minimum

    Raises:
        RuntimeError: If a witness fails either check
    """
    G = report.group
    for rec in report.records:
        for tag in rec.witnesses:
            A = Multiset.from_elements(G, tag)
            if not is_valid(A).valid:
                raise RuntimeError(f"witness {A.to_literal()} for n={rec.n} is not valid")
            card = sumset_card(A)
            if card != rec.min_card or A.total != rec.n:
                raise RuntimeError(
                    f"witness {A.to_literal()} has #Sigma = {card}, record says {rec.min_card}"
                )

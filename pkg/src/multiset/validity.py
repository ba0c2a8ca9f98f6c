"""Validity of multisets: no zero, fewer than d*p points in every rank-d subgroup"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..errors import EvenPrimeUnsupportedError
from ..group.subgroups import Subgroup, span
from .multiset import Multiset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """A subgroup holding too many points"""

    rank: int
    count: int
    limit: int
    subgroup: str

    def to_dict(self) -> Dict:
        return {"rank": self.rank, "count": self.count, "limit": self.limit, "subgroup": self.subgroup}


@dataclass(frozen=True)
class ValidityReport:
    """
    Outcome of the validity check

    ``clauses`` names every clause that fired ("zero", "rank-1", ...).
    ``planar_agreement`` is only set for m = 2: it is True when |A| < 2p, the
    range in which the rank-by-rank definition coincides with the planar one.
    """

    valid: bool
    violations: Tuple[Violation, ...] = ()
    zero_present: bool = False
    clauses: Tuple[str, ...] = ()
    planar_agreement: Optional[bool] = None

    def to_dict(self) -> Dict:
        return {
            "valid": self.valid,
            "zero_present": self.zero_present,
            "violations": [v.to_dict() for v in self.violations],
            "clauses": list(self.clauses),
            "planar_agreement": self.planar_agreement,
        }


def subgroup_count(A: Multiset, H: Subgroup) -> int:
    """Number of points of A in H, counting multiplicity"""
    return sum(count for index, count in A.items() if index in H)


def is_valid(A: Multiset) -> ValidityReport:
    """
    Check that 0 is absent and every rank-d subgroup holds fewer than d*p points

    A subgroup with too many points contains a subgroup spanned by points of A
    that also has too many, so only spans of support elements are examined for
    intermediate ranks. Rank 1 is checked by normalizing directions and rank m
    by the total.

    The verdict covers every subgroup, but `violations` lists only the lines,
    the spans of support elements and the whole group. An overfull subgroup that
    merely contains one of those is not listed again.

    Args:
        A: Multiset over Z_p^m with p odd

    Returns:
        ValidityReport

    Raises:
        EvenPrimeUnsupportedError: If p = 2
    """
    G = A.group
    p, m = G.p, G.m
    if p == 2:
        raise EvenPrimeUnsupportedError()

    zero_present = A.mult(0) > 0
    violations: List[Violation] = []
    nonzero = [(i, c) for i, c in A.items() if i != 0]

    lines: Counter = Counter()
    for index, count in nonzero:
        lines[G.line_key(index)] += count
    for key, count in sorted(lines.items()):
        if count >= p:
            violations.append(Violation(1, count, p, str(Subgroup(G, (key,)))))

    for d in range(2, m):
        seen = set()
        for chosen in itertools.combinations([i for i, _ in nonzero], d):
            H = span(G, chosen)
            if H.rank != d or H.basis in seen:
                continue
            seen.add(H.basis)
            count = subgroup_count(A, H)
            if count >= d * p:
                violations.append(Violation(d, count, d * p, str(H)))

    if m >= 2:
        total = sum(c for _, c in nonzero)
        if total >= m * p:
            violations.append(Violation(m, total, m * p, f"Z_{p}^{m}"))

    clauses = (("zero",) if zero_present else ()) + tuple(
        sorted({f"rank-{v.rank}" for v in violations}, key=lambda s: int(s.split("-")[1]))
    )
    planar = (A.total < 2 * p) if m == 2 else None
    report = ValidityReport(
        valid=not zero_present and not violations,
        violations=tuple(violations),
        zero_present=zero_present,
        clauses=clauses,
        planar_agreement=planar,
    )
    if not report.valid:
        logger.debug(f"{A.to_literal()} is invalid: {', '.join(clauses)}")
    return report

"""Depth-first enumeration of valid multisets of a given size"""

import logging
from collections import Counter
from typing import Iterator, List, MutableMapping, Optional, Sequence, Tuple

from ..errors import EvenPrimeUnsupportedError
from ..group.params import GroupParams, make_group
from ..group.subgroups import enumerate_subgroups
from ..multiset.multiset import Multiset
from .canonical import get_canonicalizer

logger = logging.getLogger(__name__)


class SubgroupCounters:
    """
    Points of the current DFS prefix in every subgroup of rank 1 .. m-1

    For m = 1 the single line is the whole group, which gives the |A| < p
    clause. Rank m is handled by the size check before the walk starts.
    """

    def __init__(self, group: GroupParams):
        p, m = group.p, group.m
        self.limits: List[int] = []
        self.members: List[List[int]] = [[] for _ in range(group.order)]
        for d in range(1, max(m - 1, 1) + 1):
            for H in enumerate_subgroups(group, d):
                sid = len(self.limits)
                self.limits.append(d * p)
                for index in H.elements():
                    if index:
                        self.members[int(index)].append(sid)
        self.counts = [0] * len(self.limits)

    def push(self, index: int) -> bool:
        """Add one copy of ``index``; False (and no change) if a subgroup would fill up"""
        counts, limits = self.counts, self.limits
        ids = self.members[index]
        for sid in ids:
            if counts[sid] + 1 >= limits[sid]:
                return False
        for sid in ids:
            counts[sid] += 1
        return True

    def pop(self, index: int):
        for sid in self.members[index]:
            self.counts[sid] -= 1


def iter_valid_sequences(
    group: GroupParams,
    n: int,
    canonical_only: bool = False,
    start_after: Optional[Sequence[int]] = None,
    stats: Optional[MutableMapping[str, int]] = None,
) -> Iterator[Tuple[int, ...]]:
    """
    Nondecreasing index sequences of valid multisets of size n, in lexicographic order

    Args:
        group: Ambient group, p odd
        n: Multiset size
        canonical_only: Emit only orbit representatives (the sequence is then
            the orbit tag)
        start_after: Skip every sequence lexicographically <= this one
        stats: Counter receiving "validity" and "canonical" prune counts

    Yields:
        Sorted element-index tuples of length n
    """
    if group.p == 2:
        raise EvenPrimeUnsupportedError("enumeration of valid multisets")
    if n < 0 or n >= group.m * group.p:
        return
    stats = Counter() if stats is None else stats
    counters = SubgroupCounters(group)
    canon = get_canonicalizer(group) if canonical_only else None
    resume = tuple(int(i) for i in start_after) if start_after is not None else None
    if resume is not None and len(resume) != n:
        raise ValueError(f"resume frontier has length {len(resume)}, expected {n}")
    order = group.order
    prefix: List[int] = []

    def walk(lowest: int, tight: bool) -> Iterator[Tuple[int, ...]]:
        depth = len(prefix)
        if depth == n:
            if tight:
                return
            yield tuple(prefix)
            return
        first = lowest
        if tight:
            first = max(first, resume[depth])
        for x in range(first, order):
            still_tight = tight and x == resume[depth]
            if not counters.push(x):
                stats["validity"] += 1
                continue
            prefix.append(x)
            if canon is not None and not canon.is_prefix_minimal(prefix):
                stats["canonical"] += 1
            else:
                yield from walk(x, still_tight)
            prefix.pop()
            counters.pop(x)

    yield from walk(1, resume is not None)


def enumerate_valid(
    p: int,
    m: int,
    n: int,
    canonical_only: bool = False,
    group: Optional[GroupParams] = None,
    stats: Optional[MutableMapping[str, int]] = None,
) -> Iterator[Multiset]:
    """
    Every valid multiset of size n in Z_p^m, or one per GL-orbit

    Branches are cut as soon as a subgroup counter reaches its limit d*p and,
    with ``canonical_only``, as soon as the prefix is not orbit-minimal.

    Raises:
        AutomorphismGroupTooLargeError: With canonical_only, if GL_m(F_p) is too large
    """
    G = group or make_group(p, m)
    for seq in iter_valid_sequences(G, n, canonical_only=canonical_only, stats=stats):
        yield Multiset.from_elements(G, seq)

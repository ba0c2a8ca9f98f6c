"""Best certificate over all lines, pair targets and pair counts"""

import logging
from dataclasses import replace
from typing import List

from ..errors import NotOnOneLineError
from ..group.subgroups import enumerate_lines, line_of
from ..multiset.multiset import Multiset
from ..multiset.validity import subgroup_count
from .certificate import RULE_ORDER, BoundCertificate, Rule
from .lemmas import _require_plane, _require_valid, cd_bound, feasible_j_max, line_bound, sweep_bound

logger = logging.getLogger(__name__)


def _pair_targets(A: Multiset) -> List[int]:
    """Nonzero sums of two support elements lying on distinct lines"""
    G = A.group
    support = [i for i in A.indices() if i]
    keys = {i: G.line_key(i) for i in support}
    targets = set()
    for pos, t in enumerate(support):
        for s in support[pos + 1:]:
            if keys[t] != keys[s]:
                targets.add(int(G.add_indices(t, s)))
    return sorted(targets)


def candidate_certificates(A: Multiset) -> List[BoundCertificate]:
    """Every certificate best_bound chooses from"""
    _require_plane(A, "best bound")
    _require_valid(A, "best bound")
    G = A.group
    p = G.p
    found: List[BoundCertificate] = []

    try:
        found.append(cd_bound(A))
    except NotOnOneLineError:
        pass

    size_ok = p - 1 <= A.total <= 2 * p - 2
    for pos, line in enumerate(enumerate_lines(G)):
        found.append(replace(sweep_bound(A, line), key=(pos,)))
        if size_ok:
            cert = line_bound(A, line.basis[0])
            if cert is not None:
                found.append(replace(cert, key=(pos,)))

    for z in _pair_targets(A):
        j_max = feasible_j_max(A, z)
        on_line = subgroup_count(A, line_of(G, z))
        for j in range(j_max + 1):
            value = min(p, 1 + j + on_line) * min(p, 1 + A.total - 2 * j - on_line)
            found.append(
                BoundCertificate(
                    Rule.PAIR_REPLACEMENT,
                    value,
                    {"z": G.format_index(z), "j": j, "j_max": j_max, "on_line": on_line},
                    key=(z, j),
                )
            )
    return found


def best_bound(A: Multiset) -> BoundCertificate:
    """
    The largest certificate value over the free choices of line, target and j

    Ties go to the earlier rule in CD < Sweep < LineBound < PairReplacement,
    then to the smaller line position or (z, j).

    Raises:
        InvalidMultisetError: If A is not valid
    """
    candidates = candidate_certificates(A)
    best = min(candidates, key=lambda c: (-c.value, RULE_ORDER[c.rule], c.key))
    logger.debug(f"best bound for {A.to_literal()}: {best}")
    return best

"""Lower bounds on #Sigma(A) from Cauchy–Davenport, Kneser and the line-sweep arguments"""

import logging
from typing import Optional, Sequence

from ..errors import (
    DimensionMismatchError,
    EmptyPartitionError,
    GroupMismatchError,
    InvalidMultisetError,
    JOutOfRangeError,
    NotOnOneLineError,
    SizeOutOfRangeError,
    ZeroInMultisetError,
    ZeroTargetError,
)
from ..group.decomposition import complement, complement_subgroup
from ..group.params import ElementLike, GroupParams
from ..group.subgroups import Subgroup, line_of
from ..multiset.multiset import Multiset
from ..multiset.validity import is_valid, subgroup_count
from ..sumset.dense import DenseSet
from ..sumset.engine import project_multiset, sumset_card
from .certificate import BoundCertificate, Rule

logger = logging.getLogger(__name__)


def _require_plane(A: Multiset, rule: str):
    if A.group.m != 2:
        raise DimensionMismatchError(f"{rule} applies to Z_p^2 only, got {A.group}")


def _require_valid(A: Multiset, rule: str):
    report = is_valid(A)
    if not report.valid:
        raise InvalidMultisetError(
            f"{rule} needs a valid multiset; {A.to_literal()} violates {', '.join(report.clauses)}"
        )


def cd_bound(A: Multiset) -> BoundCertificate:
    """
    Cauchy–Davenport for multisets on one line: #Sigma(A) >= min(p, |A| + 1)

    Raises:
        ZeroInMultisetError: If 0 is in A
        NotOnOneLineError: If the elements of A span more than one line
    """
    G = A.group
    if A.mult(0):
        raise ZeroInMultisetError("Cauchy–Davenport needs 0 ∉ A")
    lines = {G.line_key(index) for index in A.indices()}
    if len(lines) > 1:
        raise NotOnOneLineError(f"{A.to_literal()} meets {len(lines)} lines")
    params = {"line": str(Subgroup(G, (lines.pop(),)))} if lines else {}
    return BoundCertificate(Rule.CD, min(G.p, A.total + 1), params)


def kneser_union_bound(cards: Sequence[int], G: GroupParams) -> BoundCertificate:
    """
    Kneser bound for a union of parts: min(|G|, sum(#Sigma A_i) - (j-1)p^(m-1))

    Either Sigma(A) = G or the second branch holds, so the minimum is an
    unconditional lower bound.

    Args:
        cards: Exact or lower-bounded #Sigma(A_i) for each part
        G: Ambient group

    Raises:
        EmptyPartitionError: If no parts are given
    """
    cards = [int(c) for c in cards]
    if not cards:
        raise EmptyPartitionError("Kneser union bound needs at least one part")
    largest_proper = G.p ** (G.m - 1)
    value = min(G.order, sum(cards) - (len(cards) - 1) * largest_proper)
    return BoundCertificate(
        Rule.KNESER_UNION,
        value,
        {"cards": cards, "parts": len(cards), "largest_proper_subgroup": largest_proper},
    )


def kneser_partition_bound(A: Multiset, parts: Sequence[Multiset]) -> BoundCertificate:
    """Kneser union bound with #Sigma(A_i) computed exactly for a partition of A"""
    if not parts:
        raise EmptyPartitionError("Kneser union bound needs at least one part")
    joined = parts[0]
    for part in parts[1:]:
        joined = joined.union(part)
    if joined != A:
        raise ValueError("parts do not form a partition of A")
    return kneser_union_bound([sumset_card(part) for part in parts], A.group)


def cauchy_davenport_pair(S: DenseSet, T: DenseSet) -> BoundCertificate:
    """#(S + T) >= min(p, #S + #T - 1) for nonempty sets in Z_p"""
    if S.group != T.group:
        raise GroupMismatchError(f"sets over {S.group} and {T.group}")
    if S.group.m != 1:
        raise DimensionMismatchError(f"Cauchy–Davenport needs Z_p, got {S.group}")
    if not S.card or not T.card:
        raise ValueError("Cauchy–Davenport needs nonempty sets")
    value = min(S.group.p, S.card + T.card - 1)
    return BoundCertificate(Rule.CAUCHY_DAVENPORT_PAIR, value, {"S": S.card, "T": T.card})


def kneser_pair_bound(S: DenseSet, T: DenseSet) -> BoundCertificate:
    """#(S + T) >= min(|G|, #S + #T - p^(m-1)) in G = Z_p^m"""
    if S.group != T.group:
        raise GroupMismatchError(f"sets over {S.group} and {T.group}")
    G = S.group
    value = min(G.order, S.card + T.card - G.p ** (G.m - 1))
    return BoundCertificate(Rule.KNESER_PAIR, value, {"S": S.card, "T": T.card})


def sweep_bound(A: Multiset, H: Subgroup, exact: bool = False) -> BoundCertificate:
    """
    Split A into D = A ∩ H and the projection E of the rest onto a complement

    #Sigma(A) >= #Sigma(D) * #Sigma(E) >= min(p, 1+|D|) * min(p, 1+|E|).

    Args:
        A: Multiset in Z_p^2 without 0
        H: A line
        exact: Use the exact #Sigma(D) and #Sigma(E) instead of Cauchy–Davenport

    Raises:
        ZeroInMultisetError: If 0 is in A
    """
    _require_plane(A, "sweep bound")
    if A.mult(0):
        raise ZeroInMultisetError("sweep bound needs 0 ∉ A")
    if H.rank != 1:
        raise ValueError(f"sweep bound needs a line, got rank {H.rank}")
    G = A.group
    p = G.p
    D, F = A.split(H)
    params = {"H": str(H), "D": D.total, "E": F.total}
    if exact:
        decomposition = complement(G, H)
        E = project_multiset(F, decomposition, "K")
        card_d, card_e = sumset_card(D), sumset_card(E)
        params.update({"K": str(decomposition.K), "exact": True, "sigma_D": card_d, "sigma_E": card_e})
        value = card_d * card_e
    else:
        params["K"] = str(complement_subgroup(G, H))
        value = min(p, 1 + D.total) * min(p, 1 + F.total)
    return BoundCertificate(Rule.SWEEP, value, params)


def line_bound(A: Multiset, x: ElementLike) -> Optional[BoundCertificate]:
    """
    Enough points on the line through x: #Sigma(A) >= (|A| + 2 - p) * p

    Applies when that line holds at least |A| - (p-1) points of A.

    Returns:
        The certificate, or None when the line holds too few points

    Raises:
        InvalidMultisetError: If A is not valid
        SizeOutOfRangeError: Unless p-1 <= |A| <= 2p-2
        ZeroTargetError: If x = 0
    """
    _require_plane(A, "line bound")
    G = A.group
    p = G.p
    index = G.index_of(x)
    if index == 0:
        raise ZeroTargetError("line bound needs a nonzero direction")
    _require_valid(A, "line bound")
    if not p - 1 <= A.total <= 2 * p - 2:
        raise SizeOutOfRangeError(
            f"line bound needs {p - 1} <= |A| <= {2 * p - 2}, got |A| = {A.total}"
        )
    line = line_of(G, index)
    on_line = subgroup_count(A, line)
    if on_line < A.total - (p - 1):
        return None
    return BoundCertificate(
        Rule.LINE_BOUND,
        (A.total + 2 - p) * p,
        {"line": str(line), "on_line": on_line, "needed": A.total - (p - 1)},
    )


def feasible_j_max(A: Multiset, z: ElementLike) -> int:
    """floor(1/2 * sum over t off the line of z of min(m_t, m_(z-t)))"""
    G = A.group
    target = G.index_of(z)
    if target == 0:
        raise ZeroTargetError("pair replacement needs a nonzero target")
    line = G.line_key(target)
    total = 0
    for t, count in A.items():
        if t == 0 or G.line_key(t) == line:
            continue
        partner = int(G.add_indices(target, G.neg_indices(t)))
        total += min(count, A.mult(partner))
    return total // 2


def pair_replacement_bound(A: Multiset, z: ElementLike, j: int) -> BoundCertificate:
    """
    Replace j pairs summing to z by j copies of z, then sweep along the line of z

    #Sigma(A) >= min(p, 1 + j + L) * min(p, 1 + |A| - 2j - L) with L the number
    of points of A on the line through z.

    Raises:
        InvalidMultisetError: If A is not valid
        ZeroTargetError: If z = 0
        JOutOfRangeError: If j is negative or exceeds the available pairs
    """
    _require_plane(A, "pair replacement bound")
    G = A.group
    target = G.index_of(z)
    if target == 0:
        raise ZeroTargetError("pair replacement needs a nonzero target")
    _require_valid(A, "pair replacement bound")
    j_max = feasible_j_max(A, target)
    if not 0 <= j <= j_max:
        raise JOutOfRangeError(f"j={j} outside [0, {j_max}] for z={G.format_index(target)}")
    on_line = subgroup_count(A, line_of(G, target))
    p = G.p
    value = min(p, 1 + j + on_line) * min(p, 1 + A.total - 2 * j - on_line)
    return BoundCertificate(
        Rule.PAIR_REPLACEMENT,
        value,
        {"z": G.format_index(target), "j": j, "j_max": j_max, "on_line": on_line},
        key=(target, j),
    )


def pair_sum_bound(A: Multiset) -> BoundCertificate:
    """
    0, the elements of A, and all sums of two elements from distinct positions lie in Sigma(A)

    The value is the number of distinct such group elements.
    """
    G = A.group
    reached = {0}
    items = A.items()
    for pos, (t, count) in enumerate(items):
        reached.add(t)
        if count >= 2:
            reached.add(int(G.scale_indices(2, t)))
        for s, _ in items[pos + 1:]:
            reached.add(int(G.add_indices(t, s)))
    return BoundCertificate(Rule.PAIR_SUMS, len(reached), {"support": A.support})

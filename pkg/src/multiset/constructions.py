"""Named extremal multisets and the pair-replacement transform"""

import logging
from typing import Optional

from ..errors import EvenPrimeUnsupportedError, KOutOfRangeError, SizeOutOfRangeError, ZeroTargetError
from ..group.params import ElementLike, GroupParams, make_group
from .multiset import Multiset

logger = logging.getLogger(__name__)


def construct_extremal_2d(p: int, k: int) -> Multiset:
    """
    (1,0) with multiplicity p-1 and (0,1) with multiplicity k+1

    Its sumset is {(s,t) : 0 <= t <= k+1}, of size (k+2)p.

    Raises:
        KOutOfRangeError: Unless 0 <= k <= p-3
    """
    G = make_group(p, 2)
    if not 0 <= k <= p - 3:
        raise KOutOfRangeError(f"k={k} outside [0, {p - 3}] for p={p}")
    return Multiset(G, {G.powers[0]: p - 1, G.powers[1]: k + 1})


def _basis_block(G: GroupParams, rank: int, first_multiplicity: int) -> Multiset:
    """x_1 with the given multiplicity plus x_j + a*x_1 for 2 <= j <= rank, 0 <= a < p"""
    counts = {G.powers[0]: first_multiplicity}
    for j in range(1, rank):
        for a in range(G.p):
            counts[G.powers[j] + a * G.powers[0]] = 1
    return Multiset(G, counts)


def construct_B(p: int, m: int, group: Optional[GroupParams] = None) -> Multiset:
    """
    The valid multiset B_m of maximal size mp - 1

    p-1 copies of x_1, and x_j + a*x_1 for every 2 <= j <= m and residue a,
    with x_i the standard basis.

    Args:
        p: Odd prime
        m: Rank of the block
        group: Ambient group of rank >= m (default: Z_p^m)

    Raises:
        EvenPrimeUnsupportedError: If p = 2
    """
    G = make_group(p, m) if group is None else group
    if p == 2:
        raise EvenPrimeUnsupportedError("construct_B")
    return _basis_block(G, m, p - 1)


def construct_B_prime(p: int, m: int, group: Optional[GroupParams] = None) -> Multiset:
    """
    B_m with one copy of x_1 removed; |B'_m| = mp - 2 and -x_1 is not a subsum

    Raises:
        EvenPrimeUnsupportedError: If p = 2
    """
    G = make_group(p, m) if group is None else group
    if p == 2:
        raise EvenPrimeUnsupportedError("construct_B_prime")
    return _basis_block(G, m, p - 2)


def construct_floor_witness(p: int, m: int, n: int) -> Multiset:
    """
    A valid multiset of size n whose sumset size equals the conjectured floor

    Writing n = qp + k: for k <= p-3 this is B_q plus k+1 copies of x_(q+1);
    for k = p-2 it is B'_(q+1); for k = p-1 it is B_(q+1); below p it is n
    copies of x_1.

    Raises:
        EvenPrimeUnsupportedError: If p = 2
        SizeOutOfRangeError: Unless 0 <= n <= mp - 1
    """
    G = make_group(p, m)
    if p == 2:
        raise EvenPrimeUnsupportedError("construct_floor_witness")
    if not 0 <= n <= m * p - 1:
        raise SizeOutOfRangeError(f"n={n} outside [0, {m * p - 1}] for p={p}, m={m}")
    if n < p:
        return Multiset(G, {G.powers[0]: n} if n else {})
    q, k = divmod(n, p)
    if k == p - 1:
        return construct_B(p, q + 1, group=G)
    if k == p - 2:
        return construct_B_prime(p, q + 1, group=G)
    return construct_B(p, q, group=G).with_added(G.powers[q], k + 1)


def replace_pairs(A: Multiset, z: ElementLike, j: int) -> Multiset:
    """
    Replace j disjoint pairs {t, z-t} off the line through z by j copies of z

    Pairs are taken greedily by smallest t. The result C satisfies
    Sigma(C) ⊆ Sigma(A).

    Raises:
        ZeroTargetError: If z = 0
        ValueError: If fewer than j disjoint pairs exist
    """
    G = A.group
    target = G.index_of(z)
    if target == 0:
        raise ZeroTargetError("pair replacement needs a nonzero target")
    line = G.line_key(target)
    counts = dict(A.items())
    remaining = j
    for t in sorted(counts):
        if remaining == 0:
            break
        if t == 0 or G.line_key(t) == line:
            continue
        partner = int(G.add_indices(target, G.neg_indices(t)))
        while remaining and counts.get(t, 0) and counts.get(partner, 0):
            counts[t] -= 1
            counts[partner] -= 1
            remaining -= 1
    if remaining:
        raise ValueError(f"only {j - remaining} disjoint pairs sum to {G.format_index(target)}")
    counts[target] = counts.get(target, 0) + j
    return Multiset(G, counts)

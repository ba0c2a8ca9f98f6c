"""Exact subset-sum sets of multisets"""

import logging
from collections import Counter
from typing import Optional

import numpy as np

from ..errors import GroupMismatchError, OrderTooLargeError, TooManySubmultisetsError
from ..group.decomposition import Decomposition
from ..multiset.multiset import Multiset
from ..utils.settings import get_settings
from .dense import DenseSet

logger = logging.getLogger(__name__)


def sumset(A: Multiset) -> DenseSet:
    """
    The set of all subsums of A, including the empty sum

    For each distinct element x (ascending index) with multiplicity clamped to
    c = min(m_x, p-1), the running set S is replaced by S + {0, x, ..., c*x}
    using c successive translated ORs. Multiplicities beyond p-1 add nothing
    because p*x = 0.

    Raises:
        OrderTooLargeError: If the group exceeds the dense-set cap
    """
    G = A.group
    cap = get_settings().dense_cap
    if G.order > cap:
        raise OrderTooLargeError(f"{G} has order {G.order} beyond the dense-set cap {cap}")

    bits = np.zeros(G.order, dtype=bool)
    bits[0] = True
    for index, count in A.items():
        if index == 0:
            continue
        steps = min(count, G.p - 1)
        back = G.translation(int(G.neg_indices(index)))
        shifted = bits
        result = bits.copy()
        for _ in range(steps):
            shifted = shifted[back]
            result |= shifted
        bits = result
    return DenseSet(G, bits)


def sumset_card(A: Multiset) -> int:
    """#Sigma(A)"""
    return sumset(A).card


def brute_force_sumset(A: Multiset, limit: Optional[int] = None) -> DenseSet:
    """
    Sigma(A) by listing the sum of every choice vector (delta_x)

    No clamping and no deduplication happen before the final set is built, so
    this is an independent oracle for ``sumset``.

    Raises:
        TooManySubmultisetsError: If prod(m_x + 1) exceeds the oracle limit
    """
    G = A.group
    limit = get_settings().oracle_limit if limit is None else limit
    choices = 1
    for _, count in A.items():
        choices *= count + 1
    if choices > limit:
        raise TooManySubmultisetsError(f"{choices} submultisets exceed the oracle limit {limit}")

    sums = np.zeros(1, dtype=np.int64)
    for index, count in A.items():
        progression = G.multiples(index, count)
        sums = np.asarray(G.add_indices(sums[:, None], progression[None, :])).ravel()
    return DenseSet.from_indices(G, sums)


def minkowski_sum(S: DenseSet, T: DenseSet) -> DenseSet:
    """The ordinary sumset S + T"""
    if S.group != T.group:
        raise GroupMismatchError(f"cannot add sets over {S.group} and {T.group}")
    bits = np.zeros(S.group.order, dtype=bool)
    for y in T.indices():
        bits |= S.translate(int(y)).bits
    return DenseSet(S.group, bits)


def project_set(S: DenseSet, D: Decomposition, side: str = "H") -> DenseSet:
    """Image of S under the projection onto H or K"""
    if S.group != D.group:
        raise GroupMismatchError(f"set over {S.group} but decomposition of {D.group}")
    return S.image(D.table(side))


def project_multiset(A: Multiset, D: Decomposition, side: str = "H") -> Multiset:
    """Image multiset pi(A) with multiplicities added and zero images dropped"""
    if A.group != D.group:
        raise GroupMismatchError(f"multiset over {A.group} but decomposition of {D.group}")
    table = D.table(side)
    counts: Counter = Counter()
    for index, count in A.items():
        image = int(table[index])
        if image:
            counts[image] += count
    return Multiset(A.group, counts)


def apply_automorphism(S: DenseSet, perm: np.ndarray) -> DenseSet:
    """Image of S under an automorphism given as an index permutation"""
    return S.image(perm)


def a_la_carte_contains(A: Multiset, C: Multiset) -> bool:
    """True when Sigma(C) ⊆ Sigma(A)"""
    return sumset(C).issubset(sumset(A))


def split_membership(D: Multiset, E: Multiset, decomposition: Decomposition, z: int) -> bool:
    """Whether pi_H(z) is a subsum of D and pi_K(z) is a subsum of E"""
    return (
        decomposition.project(z, "H") in sumset(D)
        and decomposition.project(z, "K") in sumset(E)
    )

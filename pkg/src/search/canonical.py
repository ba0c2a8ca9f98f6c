"""Canonical orbit representatives under GL_m(F_p)"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from ..group.automorphisms import automorphisms
from ..group.params import GroupParams
from ..multiset.multiset import Multiset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanonicalForm:
    """
    The orbit representative of a multiset

    ``orbit_tag`` is the lexicographically smallest nondecreasing index
    sequence among all images T(A). Among multisets of one size this picks the
    same image as the lexicographically largest multiplicity vector.
    """

    multiset: Multiset
    orbit_tag: Tuple[int, ...]

    @property
    def multiplicity_vector(self) -> np.ndarray:
        return self.multiset.counts_vector()


class Canonicalizer:
    """Lexicographic minimization over every automorphism of one group"""

    def __init__(self, group: GroupParams, limit=None):
        self.group = group
        self.perms = automorphisms(group, limit=limit)
        self._rows = np.arange(self.perms.shape[0])

    @property
    def size(self) -> int:
        return int(self.perms.shape[0])

    def images(self, seq: Sequence[int]) -> np.ndarray:
        """Sorted image of the sequence under every automorphism, one row each"""
        return np.sort(self.perms[:, np.asarray(seq, dtype=np.int64)], axis=1)

    def is_prefix_minimal(self, prefix: Sequence[int]) -> bool:
        """
        False when some automorphism maps the sorted prefix to a smaller sorted sequence

        Every prefix of a canonical sequence passes, so a failing prefix can be
        dropped with its whole subtree. On a complete sequence this is the
        canonicity test.
        """
        if len(prefix) == 0:
            return True
        target = np.asarray(prefix, dtype=np.int64)
        imgs = self.images(target)
        differs = imgs != target
        first = differs.argmax(axis=1)
        smaller = differs.any(axis=1) & (imgs[self._rows, first] < target[first])
        return not bool(smaller.any())

    def tag(self, seq: Sequence[int]) -> Tuple[int, ...]:
        """Smallest sorted image, narrowing the candidate rows one column at a time"""
        if len(seq) == 0:
            return ()
        imgs = self.images(seq)
        candidates = self._rows
        for col in range(imgs.shape[1]):
            column = imgs[candidates, col]
            candidates = candidates[column == column.min()]
            if len(candidates) == 1:
                break
        return tuple(int(i) for i in imgs[candidates[0]])

    def canonical_form(self, A: Multiset) -> CanonicalForm:
        if A.group != self.group:
            raise ValueError(f"canonicalizer for {self.group} got a multiset over {A.group}")
        tag = self.tag(A.sorted_indices())
        return CanonicalForm(multiset=Multiset.from_elements(self.group, tag), orbit_tag=tag)

    def orbit_size(self, A: Multiset) -> int:
        """Number of distinct images T(A)"""
        seq = A.sorted_indices()
        if not seq:
            return 1
        return int(np.unique(self.images(seq), axis=0).shape[0])


@lru_cache(maxsize=8)
def get_canonicalizer(group: GroupParams) -> Canonicalizer:
    """Shared canonicalizer per group; automorphism tables are built once"""
    return Canonicalizer(group)


def canonical_form(A: Multiset) -> CanonicalForm:
    """
    Minimal image of A under the full automorphism group

    Raises:
        AutomorphismGroupTooLargeError: If GL_m(F_p) is above the configured cap
    """
    return get_canonicalizer(A.group).canonical_form(A)


def orbit_size(A: Multiset) -> int:
    """Size of the GL_m(F_p)-orbit of A"""
    return get_canonicalizer(A.group).orbit_size(A)

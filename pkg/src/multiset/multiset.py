"""Multisets of group elements"""

from collections import Counter
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

import numpy as np

from ..errors import GroupMismatchError
from ..group.params import ElementLike, GroupParams, format_coords


class Multiset:
    """
    A finite multiset in Z_p^m stored sparsely as index -> multiplicity

    ``total`` is |A| (counting multiplicity) and ``support`` is #A (distinct
    elements). Multisets are values: every operation returns a new instance.
    """

    __slots__ = ("group", "_items", "_mult", "total", "support")

    def __init__(self, group: GroupParams, counts: Mapping[int, int]):
        mult: Dict[int, int] = {}
        for index, count in counts.items():
            index = group.check_index(index)
            count = int(count)
            if count < 0:
                raise ValueError(f"negative multiplicity {count} for {group.format_index(index)}")
            if count:
                mult[index] = mult.get(index, 0) + count
        self.group = group
        self._items = tuple(sorted(mult.items()))
        self._mult = dict(self._items)
        self.total = sum(mult.values())
        self.support = len(mult)

    @classmethod
    def from_elements(cls, group: GroupParams, elements: Iterable[ElementLike]) -> "Multiset":
        """Multiset with one copy per occurrence in ``elements``"""
        return cls(group, Counter(group.index_of(x) for x in elements))

    @classmethod
    def from_coords(cls, group: GroupParams, pairs: Iterable[Tuple[Sequence[int], int]]) -> "Multiset":
        """Multiset from (coordinates, multiplicity) pairs; coordinates are reduced mod p"""
        counts: Counter = Counter()
        for coords, count in pairs:
            counts[group.element(*coords).index] += int(count)
        return cls(group, counts)

    @classmethod
    def empty(cls, group: GroupParams) -> "Multiset":
        return cls(group, {})

    def mult(self, x: ElementLike) -> int:
        """Multiplicity m_x (0 when absent)"""
        return self._mult.get(self.group.index_of(x), 0)

    def items(self) -> Tuple[Tuple[int, int], ...]:
        """(index, multiplicity) pairs in ascending index order"""
        return self._items

    def indices(self) -> Tuple[int, ...]:
        """Distinct element indices in ascending order"""
        return tuple(index for index, _ in self._items)

    def sorted_indices(self) -> Tuple[int, ...]:
        """Nondecreasing sequence of indices, each repeated by its multiplicity"""
        return tuple(index for index, count in self._items for _ in range(count))

    def counts_vector(self) -> np.ndarray:
        """Dense multiplicity vector of length p^m"""
        vector = np.zeros(self.group.order, dtype=np.int64)
        for index, count in self._items:
            vector[index] = count
        return vector

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_indices())

    def __len__(self) -> int:
        return self.total

    def __contains__(self, x) -> bool:
        return self.mult(x) > 0

    def with_added(self, x: ElementLike, count: int = 1) -> "Multiset":
        counts = dict(self._mult)
        index = self.group.index_of(x)
        counts[index] = counts.get(index, 0) + count
        return Multiset(self.group, counts)

    def with_removed(self, x: ElementLike, count: int = 1) -> "Multiset":
        index = self.group.index_of(x)
        if self._mult.get(index, 0) < count:
            raise ValueError(f"cannot remove {count} copies of {self.group.format_index(index)}")
        counts = dict(self._mult)
        counts[index] -= count
        return Multiset(self.group, counts)

    def union(self, other: "Multiset") -> "Multiset":
        """Multiset union (multiplicities add)"""
        if other.group != self.group:
            raise GroupMismatchError(f"cannot join multisets over {self.group} and {other.group}")
        counts = Counter(self._mult)
        counts.update(other._mult)
        return Multiset(self.group, counts)

    def split(self, members) -> Tuple["Multiset", "Multiset"]:
        """Split into the part inside ``members`` (anything supporting ``in``) and the rest"""
        inside = {i: c for i, c in self._items if i in members}
        outside = {i: c for i, c in self._items if i not in members}
        return Multiset(self.group, inside), Multiset(self.group, outside)

    def map(self, table) -> "Multiset":
        """Image under a map given as an index table (automorphism or projection)"""
        counts: Counter = Counter()
        for index, count in self._items:
            counts[int(table[index])] += count
        return Multiset(self.group, counts)

    def to_literal(self) -> str:
        """Text form ``p=<p> m=<m> : (c0,...)*k ...`` with ``*1`` omitted"""
        parts = [f"p={self.group.p} m={self.group.m} :"]
        for index, count in self._items:
            elem = format_coords(self.group.decode(index))
            parts.append(elem if count == 1 else f"{elem}*{count}")
        return " ".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.group == other.group and self._items == other._items

    def __hash__(self) -> int:
        return hash((self.group, self._items))

    def __repr__(self) -> str:
        return f"Multiset({self.to_literal()!r})"

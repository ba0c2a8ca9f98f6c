"""Dense characteristic bit vectors over the elements of Z_p^m"""

from typing import Iterable

import numpy as np

from ..errors import GroupMismatchError
from ..group.params import GroupParams


class DenseSet:
    """
    A subset of Z_p^m stored as a boolean vector indexed by element index

    The bit vector is frozen on construction; every operation returns a new
    DenseSet.
    """

    __slots__ = ("group", "bits", "_card")

    def __init__(self, group: GroupParams, bits: np.ndarray):
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (group.order,):
            raise ValueError(f"bit vector of shape {bits.shape} does not match {group}")
        if bits.flags.writeable:
            bits = bits.copy()
            bits.setflags(write=False)
        self.group = group
        self.bits = bits
        self._card = None

    @classmethod
    def empty(cls, group: GroupParams) -> "DenseSet":
        return cls(group, np.zeros(group.order, dtype=bool))

    @classmethod
    def identity(cls, group: GroupParams) -> "DenseSet":
        """The set {0}"""
        bits = np.zeros(group.order, dtype=bool)
        bits[0] = True
        return cls(group, bits)

    @classmethod
    def full(cls, group: GroupParams) -> "DenseSet":
        return cls(group, np.ones(group.order, dtype=bool))

    @classmethod
    def from_indices(cls, group: GroupParams, indices: Iterable[int]) -> "DenseSet":
        bits = np.zeros(group.order, dtype=bool)
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        bits[idx] = True
        return cls(group, bits)

    @property
    def card(self) -> int:
        """Number of set bits"""
        if self._card is None:
            self._card = int(np.count_nonzero(self.bits))
        return self._card

    def __len__(self) -> int:
        return self.card

    def __contains__(self, index) -> bool:
        return bool(self.bits[int(index)])

    def contains(self, index: int) -> bool:
        return index in self

    def indices(self) -> np.ndarray:
        """Sorted indices of the members"""
        return np.flatnonzero(self.bits)

    def _check_same_group(self, other: "DenseSet"):
        if self.group != other.group:
            raise GroupMismatchError(f"cannot combine sets over {self.group} and {other.group}")

    def union(self, other: "DenseSet") -> "DenseSet":
        self._check_same_group(other)
        return DenseSet(self.group, self.bits | other.bits)

    def intersection(self, other: "DenseSet") -> "DenseSet":
        self._check_same_group(other)
        return DenseSet(self.group, self.bits & other.bits)

    __or__ = union
    __and__ = intersection

    def issubset(self, other: "DenseSet") -> bool:
        self._check_same_group(other)
        return not np.any(self.bits & ~other.bits)

    def translate(self, y: int) -> "DenseSet":
        """The set S + {y}"""
        back = self.group.translation(int(self.group.neg_indices(y)))
        return DenseSet(self.group, self.bits[back])

    def image(self, table: np.ndarray) -> "DenseSet":
        """Image under a map given as an index table (e.g. a projection or automorphism)"""
        bits = np.zeros(self.group.order, dtype=bool)
        bits[np.asarray(table)[self.bits]] = True
        return DenseSet(self.group, bits)

    def to_hex(self) -> str:
        """Little-endian hex encoding: bit i of the vector is bit (i mod 8) of byte i // 8"""
        return np.packbits(self.bits, bitorder="little").tobytes().hex()

    @classmethod
    def from_hex(cls, group: GroupParams, text: str) -> "DenseSet":
        raw = np.frombuffer(bytes.fromhex(text), dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[: group.order]
        if bits.shape != (group.order,):
            raise ValueError(f"hex string too short for {group}")
        return cls(group, bits.astype(bool))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseSet):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.bits, other.bits)

    __hash__ = None

    def __repr__(self) -> str:
        return f"DenseSet({self.group}, card={self.card})"

"""Subgroups of Z_p^m in reduced row echelon form"""

import itertools
import logging
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..errors import RankOutOfRangeError
from ..sumset.dense import DenseSet
from .params import ElementLike, GroupParams, format_coords

logger = logging.getLogger(__name__)


def row_reduce(rows: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    """
    Reduced row echelon form over F_p, zero rows dropped

    Args:
        rows: Coordinate vectors
        p: Prime modulus

    Returns:
        Basis rows, each with leading entry 1, ordered by pivot column
    """
    matrix = [[int(c) % p for c in row] for row in rows]
    width = len(matrix[0]) if matrix else 0
    pivot_row = 0
    for col in range(width):
        found = next((r for r in range(pivot_row, len(matrix)) if matrix[r][col]), None)
        if found is None:
            continue
        matrix[pivot_row], matrix[found] = matrix[found], matrix[pivot_row]
        inverse = pow(matrix[pivot_row][col], -1, p)
        matrix[pivot_row] = [(inverse * c) % p for c in matrix[pivot_row]]
        for r in range(len(matrix)):
            if r != pivot_row and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [(a - factor * b) % p for a, b in zip(matrix[r], matrix[pivot_row])]
        pivot_row += 1
        if pivot_row == len(matrix):
            break
    return matrix[:pivot_row]


class Subgroup:
    """
    A rank-d subgroup of Z_p^m

    The basis is the reduced row echelon form of any generating set, so two
    Subgroup objects are equal exactly when they have the same elements.
    """

    __slots__ = ("group", "basis", "_members")

    def __init__(self, group: GroupParams, basis: Tuple[int, ...]):
        self.group = group
        self.basis = tuple(int(b) for b in basis)
        self._members = None

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return self.group.p ** self.rank

    @property
    def members(self) -> DenseSet:
        """Membership bit vector with exactly p^d set bits"""
        if self._members is None:
            self._members = DenseSet.from_indices(self.group, self.elements())
        return self._members

    def elements(self) -> np.ndarray:
        """Indices of all p^d members (in coefficient order, not sorted)"""
        G = self.group
        d = self.rank
        if d == 0:
            return np.zeros(1, dtype=np.int64)
        count = G.p ** d
        idx = np.arange(count, dtype=np.int64)
        coeffs = np.empty((count, d), dtype=np.int64)
        for i in range(d):
            coeffs[:, i] = (idx // G.p ** i) % G.p
        basis_coords = G.coords[np.asarray(self.basis)]
        return G.encode((coeffs @ basis_coords) % G.p)

    def __contains__(self, index) -> bool:
        return int(index) in self.members

    def contains(self, x: ElementLike) -> bool:
        return self.group.index_of(x) in self.members

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.group == other.group and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.group, self.basis))

    def __str__(self) -> str:
        return "span{" + ",".join(format_coords(self.group.decode(b)) for b in self.basis) + "}"

    def __repr__(self) -> str:
        return f"Subgroup({self.group}, {self})"


def span(G: GroupParams, vectors: Iterable[ElementLike]) -> Subgroup:
    """Subgroup generated by the given elements (rank 0 for no nonzero generators)"""
    rows = [G.decode(G.index_of(v)) for v in vectors]
    basis = row_reduce(rows, G.p)
    return Subgroup(G, tuple(G.encode(row) for row in basis))


def line_of(G: GroupParams, x: ElementLike) -> Subgroup:
    """The rank-1 subgroup generated by a nonzero element"""
    index = G.index_of(x)
    if index == 0:
        raise ValueError("the identity does not generate a line")
    return Subgroup(G, (G.line_key(index),))


def gaussian_binomial(m: int, d: int, p: int) -> int:
    """Number of rank-d subgroups of Z_p^m"""
    if d < 0 or d > m:
        return 0
    num = 1
    den = 1
    for i in range(d):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subgroups(G: GroupParams, d: int) -> List[Subgroup]:
    """
    All rank-d subgroups, each exactly once

    Args:
        G: Ambient group
        d: Rank, 1 <= d <= m

    Returns:
        Subgroups ordered by pivot columns, then by free entries

    Raises:
        RankOutOfRangeError: If d is outside [1, m]
    """
    if not 1 <= d <= G.m:
        raise RankOutOfRangeError(f"rank d={d} outside [1, {G.m}]")
    result = []
    for pivots in itertools.combinations(range(G.m), d):
        free = [
            (r, c)
            for r, pivot in enumerate(pivots)
            for c in range(pivot + 1, G.m)
            if c not in pivots
        ]
        for values in itertools.product(range(G.p), repeat=len(free)):
            rows = [[0] * G.m for _ in range(d)]
            for r, pivot in enumerate(pivots):
                rows[r][pivot] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            result.append(Subgroup(G, tuple(G.encode(row) for row in rows)))
    logger.debug(f"Enumerated {len(result)} rank-{d} subgroups of {G}")
    return result


def enumerate_lines(G: GroupParams) -> List[Subgroup]:
    """All rank-1 subgroups; (p^m - 1)/(p - 1) of them"""
    return enumerate_subgroups(G, 1)

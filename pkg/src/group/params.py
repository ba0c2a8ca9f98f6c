"""The ambient group Z_p^m: parameters, element encoding and arithmetic"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime

from ..errors import (
    DimensionMismatchError,
    GroupMismatchError,
    NonPrimeError,
    OrderTooLargeError,
    RankZeroError,
)
from ..utils.settings import get_settings

logger = logging.getLogger(__name__)

# Translation tables are cached only for groups at most this large.
_TRANSLATION_CACHE_ORDER = 1 << 16


class GroupParams:
    """
    Elementary abelian group Z_p^m with elements encoded as integers

    An element with coordinates (c0, ..., c_{m-1}) has index
    c0 + c1*p + ... + c_{m-1}*p^(m-1); every dense table in the toolkit is
    indexed this way. Instances are immutable; the coordinate table and
    translation tables are computed lazily and cached.
    """

    __slots__ = ("_p", "_m", "_order", "_powers", "_coords", "_translations")

    def __init__(self, p: int, m: int, powers: Tuple[int, ...]):
        self._p = p
        self._m = m
        self._powers = powers
        self._order = p ** m
        self._coords = None
        self._translations = {}

    @property
    def p(self) -> int:
        return self._p

    @property
    def m(self) -> int:
        return self._m

    @property
    def order(self) -> int:
        return self._order

    @property
    def powers(self) -> Tuple[int, ...]:
        """Place values p^0, ..., p^(m-1)"""
        return self._powers

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupParams) and (self._p, self._m) == (other._p, other._m)

    def __hash__(self) -> int:
        return hash((GroupParams, self._p, self._m))

    def __repr__(self) -> str:
        return f"GroupParams(p={self._p}, m={self._m})"

    def __str__(self) -> str:
        return f"Z_{self._p}^{self._m}"

    def __getstate__(self):
        return (self._p, self._m, self._powers)

    def __setstate__(self, state):
        p, m, powers = state
        self.__init__(p, m, powers)

    # -- encoding -----------------------------------------------------------

    @property
    def coords(self) -> np.ndarray:
        """Read-only (order, m) table of coordinates for every index"""
        if self._coords is None:
            idx = np.arange(self._order, dtype=np.int64)
            table = np.empty((self._order, self._m), dtype=np.int64)
            for i, place in enumerate(self._powers):
                table[:, i] = (idx // place) % self._p
            table.setflags(write=False)
            self._coords = table
        return self._coords

    def encode(self, coords) -> Union[int, np.ndarray]:
        """
        Encode coordinate vectors as indices, reducing residues mod p

        Args:
            coords: A length-m sequence, or an array whose last axis has length m

        Returns:
            An int for a single vector, otherwise an int64 array
        """
        arr = np.asarray(coords, dtype=np.int64)
        if arr.shape[-1:] != (self._m,):
            raise DimensionMismatchError(
                f"expected {self._m} coordinates, got shape {arr.shape}"
            )
        encoded = (arr % self._p) @ np.asarray(self._powers, dtype=np.int64)
        if arr.ndim == 1:
            return int(encoded)
        return encoded

    def decode(self, index: int) -> Tuple[int, ...]:
        """Coordinates of a single index"""
        self.check_index(index)
        return tuple((int(index) // place) % self._p for place in self._powers)

    def check_index(self, index: int) -> int:
        if not 0 <= int(index) < self._order:
            raise ValueError(f"element index {index} outside [0, {self._order}) for {self}")
        return int(index)

    # -- arithmetic on indices (vectorized) ---------------------------------

    def add_indices(self, a, b):
        """Index of a + b; accepts ints or broadcastable arrays"""
        coords = self.coords
        total = coords[np.asarray(a)] + coords[np.asarray(b)]
        return self.encode(total % self._p)

    def neg_indices(self, a):
        """Index of -a"""
        return self.encode((-self.coords[np.asarray(a)]) % self._p)

    def scale_indices(self, c: int, a):
        """Index of c*a"""
        return self.encode((int(c) * self.coords[np.asarray(a)]) % self._p)

    def translation(self, y: int) -> np.ndarray:
        """
        Table t with t[i] = index of (element i) + y

        Args:
            y: Index of the translating element

        Returns:
            Read-only int64 array of length order
        """
        y = self.check_index(y)
        table = self._translations.get(y)
        if table is None:
            table = self.add_indices(np.arange(self._order), y)
            table = np.asarray(table, dtype=np.int64)
            table.setflags(write=False)
            if self._order <= _TRANSLATION_CACHE_ORDER:
                self._translations[y] = table
        return table

    def multiples(self, x: int, count: Optional[int] = None) -> np.ndarray:
        """Indices of 0, x, 2x, ..., count*x (default: the whole cyclic line)"""
        if count is None:
            count = self._p - 1
        steps = np.arange(count + 1, dtype=np.int64)[:, None]
        return self.encode((steps * np.asarray(self.decode(x), dtype=np.int64)) % self._p)

    def line_key(self, x: int) -> int:
        """
        Index of the canonical direction of the line through x

        The canonical direction has its first nonzero coordinate equal to 1.
        """
        coords = self.decode(x)
        lead = next((c for c in coords if c), 0)
        if lead == 0:
            raise ValueError("the identity does not span a line")
        inverse = pow(lead, -1, self._p)
        return self.encode([(inverse * c) % self._p for c in coords])

    # -- elements -----------------------------------------------------------

    def element(self, *coords: int) -> "GroupElement":
        """Element with the given coordinates (reduced mod p)"""
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != self._m:
            raise DimensionMismatchError(
                f"element {coords} has {len(coords)} coordinates, group {self} needs {self._m}"
            )
        reduced = tuple(int(c) % self._p for c in coords)
        return GroupElement(coords=reduced, index=self.encode(reduced))

    def element_at(self, index: int) -> "GroupElement":
        """Element with the given index"""
        return GroupElement(coords=self.decode(index), index=int(index))

    @property
    def zero(self) -> "GroupElement":
        return self.element_at(0)

    def index_of(self, x: "ElementLike") -> int:
        """Normalize an element or index to a checked index"""
        if isinstance(x, GroupElement):
            if len(x.coords) != self._m:
                raise GroupMismatchError(f"element {x} does not belong to {self}")
            return self.check_index(x.index)
        return self.check_index(int(x))

    def standard_basis(self) -> Tuple[int, ...]:
        """Indices of e_0, ..., e_(m-1)"""
        return tuple(self._powers)

    def format_index(self, index: int) -> str:
        return format_coords(self.decode(index))


@dataclass(frozen=True)
class GroupElement:
    """A vector of m residues mod p together with its integer index"""

    coords: Tuple[int, ...]
    index: int

    def __str__(self) -> str:
        return format_coords(self.coords)


ElementLike = Union[GroupElement, int]


def format_coords(coords: Iterable[int]) -> str:
    """Text form "(c0,c1,...)" """
    return "(" + ",".join(str(int(c)) for c in coords) + ")"


def make_group(p: int, m: int, dense_cap: Optional[int] = None) -> GroupParams:
    """
    Validate parameters and build the group Z_p^m

    Args:
        p: Prime modulus
        m: Rank, at least 1
        dense_cap: Largest allowed order p^m (default: configured dense-set cap)

    Returns:
        GroupParams for Z_p^m

    Raises:
        NonPrimeError: If p is not prime
        RankZeroError: If m < 1
        OrderTooLargeError: If p^m exceeds the dense-set cap
    """
    p, m = int(p), int(m)
    if not isprime(p):
        raise NonPrimeError(f"p={p} is not prime")
    if m < 1:
        raise RankZeroError(f"rank m={m} must be at least 1")
    cap = get_settings().dense_cap if dense_cap is None else dense_cap
    order = p ** m
    if order > cap:
        raise OrderTooLargeError(f"group order {p}^{m} = {order} exceeds the dense-set cap {cap}")
    logger.debug(f"Created group Z_{p}^{m} of order {order}")
    return GroupParams(p, m, tuple(p ** i for i in range(m)))


def add(G: GroupParams, a: ElementLike, b: ElementLike) -> GroupElement:
    """Componentwise sum mod p"""
    return G.element_at(G.add_indices(G.index_of(a), G.index_of(b)))


def neg(G: GroupParams, a: ElementLike) -> GroupElement:
    """Additive inverse"""
    return G.element_at(G.neg_indices(G.index_of(a)))


def scalar_mul(G: GroupParams, c: int, a: ElementLike) -> GroupElement:
    """The element a + ... + a (c summands), c read mod p"""
    return G.element_at(G.scale_indices(c, G.index_of(a)))


def parse_element(G: GroupParams, text: str) -> GroupElement:
    """Parse "(c0,...,c_{m-1})"; residues are reduced mod p"""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"element {text!r} must be parenthesized")
    parts: Sequence[str] = [t for t in body[1:-1].split(",")]
    try:
        coords = [int(t) for t in parts]
    except ValueError as e:
        raise ValueError(f"element {text!r} has a non-integer coordinate") from e
    return G.element(*coords)

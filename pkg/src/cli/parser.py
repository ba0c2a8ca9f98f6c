"""Text forms accepted on the command line"""

import re
from typing import List, Tuple

from ..errors import DimensionMismatchError, LiteralSyntaxError
from ..group.params import make_group
from ..multiset.multiset import Multiset

_INT = re.compile(r"-?\d+")
_SPACE = re.compile(r"\s*")


class _Cursor:
    """Position in a literal; errors report UTF-8 byte offsets"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self) -> int:
        return len(self.text[:self.pos].encode("utf-8"))

    def fail(self, message: str):
        raise LiteralSyntaxError(message, self.offset())

    def skip_space(self):
        self.pos = _SPACE.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip_space()
        return self.pos >= len(self.text)

    def peek(self, token: str) -> bool:
        self.skip_space()
        return self.text.startswith(token, self.pos)

    def expect(self, token: str):
        if not self.peek(token):
            self.fail(f"expected {token!r}")
        self.pos += len(token)

    def integer(self) -> int:
        self.skip_space()
        match = _INT.match(self.text, self.pos)
        if not match:
            self.fail("expected an integer")
        self.pos = match.end()
        return int(match.group())


def parse_multiset_literal(text: str) -> Multiset:
    """
    Parse ``p=<int> m=<int> : (c0,...,c_{m-1})[*k] ...``

    Residues are reduced mod p and may be negative. An element list may be
    empty, which denotes the empty multiset.

    Raises:
        LiteralSyntaxError: With the byte offset of the first unexpected character
        DimensionMismatchError: If an element has the wrong number of coordinates
        NonPrimeError: If p is not prime
    """
    cur = _Cursor(text)
    cur.expect("p")
    cur.expect("=")
    p = cur.integer()
    cur.expect("m")
    cur.expect("=")
    m = cur.integer()
    cur.expect(":")
    G = make_group(p, m)

    pairs: List[Tuple[Tuple[int, ...], int]] = []
    while not cur.at_end():
        start = cur.offset()
        cur.expect("(")
        coords = [cur.integer()]
        while cur.peek(","):
            cur.expect(",")
            coords.append(cur.integer())
        cur.expect(")")
        count = 1
        if cur.peek("*"):
            cur.expect("*")
            count = cur.integer()
            if count < 1:
                cur.fail("multiplicity must be at least 1")
        if len(coords) != m:
            raise DimensionMismatchError(
                f"element at byte offset {start} has {len(coords)} coordinates, Z_{p}^{m} needs {m}"
            )
        pairs.append((tuple(coords), count))
    return Multiset.from_coords(G, pairs)


def parse_n_values(text: str) -> List[int]:
    """Sizes as ``5``, ``3..5`` (inclusive) or ``3,4,7``"""
    text = text.strip()
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            values = list(range(int(low), int(high) + 1))
        else:
            values = [int(part) for part in text.split(",")]
    except ValueError as e:
        raise ValueError(f"cannot read sizes from {text!r}") from e
    if not values:
        raise ValueError(f"empty size range {text!r}")
    return values

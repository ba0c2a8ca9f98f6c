"""The automorphism group GL_m(F_p) as permutations of element indices"""

import logging
from typing import List, Optional

import numpy as np

from ..errors import AutomorphismGroupTooLargeError
from ..utils.settings import get_settings
from .params import GroupParams

logger = logging.getLogger(__name__)

# Upper limit on the number of entries in a permutation table.
_MAX_TABLE_ENTRIES = 1 << 27


def gl_order(p: int, m: int) -> int:
    """|GL_m(F_p)| = prod_{i<m} (p^m - p^i)"""
    order = 1
    for i in range(m):
        order *= p ** m - p ** i
    return order


def _column_choices(G: GroupParams) -> List[List[int]]:
    """Images of e_0, ..., e_(m-1) for every invertible linear map"""
    results = []

    def extend(columns, span_mask):
        if len(columns) == G.m:
            results.append(list(columns))
            return
        members = np.flatnonzero(span_mask)
        for v in np.flatnonzero(~span_mask):
            line = G.multiples(int(v))
            grown = np.zeros(G.order, dtype=bool)
            grown[np.asarray(G.add_indices(members[:, None], line[None, :])).ravel()] = True
            extend(columns + [int(v)], grown)

    start = np.zeros(G.order, dtype=bool)
    start[0] = True
    extend([], start)
    return results


def automorphisms(G: GroupParams, limit: Optional[int] = None) -> np.ndarray:
    """
    Every invertible linear map of Z_p^m as a permutation of indices

    Row r of the result maps index i to perms[r, i]. Row 0 is the identity.

    Args:
        G: Ambient group
        limit: Largest group order accepted (default: configured cap)

    Returns:
        int32 array of shape (|GL_m(F_p)|, p^m)

    Raises:
        AutomorphismGroupTooLargeError: If the group or its table is too large
    """
    limit = get_settings().max_automorphisms if limit is None else limit
    count = gl_order(G.p, G.m)
    if count > limit or count * G.order > _MAX_TABLE_ENTRIES:
        raise AutomorphismGroupTooLargeError(
            f"|GL_{G.m}(F_{G.p})| = {count} exceeds the canonicalization limit {limit}"
        )

    columns = np.asarray(_column_choices(G), dtype=np.int64)
    column_coords = G.coords[columns]  # (count, m, m): row j = image of e_j
    images = np.einsum("nj,rjk->rnk", G.coords, column_coords) % G.p
    perms = images @ np.asarray(G.powers, dtype=np.int64)
    perms = perms.astype(np.int32)

    identity = np.arange(G.order, dtype=np.int32)
    first = int(np.flatnonzero((perms == identity).all(axis=1))[0])
    if first:
        perms[[0, first]] = perms[[first, 0]]
    perms.setflags(write=False)
    logger.info(f"Enumerated {count} automorphisms of {G}")
    return perms

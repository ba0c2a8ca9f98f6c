"""Internal direct sum decompositions G = H + K and their projections"""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import GroupMismatchError, NoComplementNeededError
from .params import GroupParams
from .subgroups import Subgroup, row_reduce, span

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """
    A complement K of H together with both projection tables

    pi_h[z] and pi_k[z] are the indices of the H- and K-components of the
    element with index z, so z = pi_h[z] + pi_k[z].
    """

    H: Subgroup
    K: Subgroup
    pi_h: np.ndarray
    pi_k: np.ndarray

    @property
    def group(self) -> GroupParams:
        return self.H.group

    def table(self, side: str) -> np.ndarray:
        """Projection table for side "H" or "K" """
        if side.upper() == "H":
            return self.pi_h
        if side.upper() == "K":
            return self.pi_k
        raise ValueError(f"side must be 'H' or 'K', got {side!r}")

    def project(self, index: int, side: str = "H") -> int:
        return int(self.table(side)[int(index)])


def _in_span(rows, vector, p) -> bool:
    return len(row_reduce(list(rows) + [vector], p)) == len(row_reduce(rows, p))


def complement_subgroup(G: GroupParams, H: Subgroup) -> Subgroup:
    """The complement K chosen by ``complement``, without projection tables"""
    if H.group != G:
        raise GroupMismatchError(f"subgroup {H} does not belong to {G}")
    if H.rank >= G.m:
        raise NoComplementNeededError(f"{H} is the whole group {G}; it has no proper complement")
    rows = [list(G.decode(b)) for b in H.basis]
    added = []
    for axis in reversed(range(G.m)):
        unit = [0] * G.m
        unit[axis] = 1
        if not _in_span(rows, unit, G.p):
            rows.append(unit)
            added.append(G.encode(unit))
        if len(rows) == G.m:
            break
    return span(G, added)


def complement(G: GroupParams, H: Subgroup) -> Decomposition:
    """
    Deterministic complement of H and the projections onto H and K

    The basis of H is completed with standard basis vectors taken from the last
    coordinate to the first; K is the span of the vectors added.

    Args:
        G: Ambient group
        H: Subgroup of rank d < m

    Returns:
        Decomposition with H + K = G and H ∩ K = {0}

    Raises:
        NoComplementNeededError: If H is the whole group
    """
    K = complement_subgroup(G, H)
    h_elems = H.elements()
    k_elems = K.elements()
    z = np.asarray(G.add_indices(h_elems[:, None], k_elems[None, :]))
    pi_h = np.empty(G.order, dtype=np.int64)
    pi_k = np.empty(G.order, dtype=np.int64)
    pi_h[z] = np.broadcast_to(h_elems[:, None], z.shape)
    pi_k[z] = np.broadcast_to(k_elems[None, :], z.shape)
    pi_h.setflags(write=False)
    pi_k.setflags(write=False)
    logger.debug(f"Complement of {H} in {G}: {K}")
    return Decomposition(H=H, K=K, pi_h=pi_h, pi_k=pi_k)

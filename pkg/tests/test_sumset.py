"""Tests for dense sets and the sumset engine"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from src.errors import GroupMismatchError, OrderTooLargeError, TooManySubmultisetsError
from src.group.automorphisms import automorphisms
from src.group.decomposition import complement
from src.group.params import make_group
from src.group.subgroups import enumerate_lines, line_of
from src.multiset.constructions import construct_extremal_2d
from src.multiset.multiset import Multiset
from src.sumset import engine
from src.sumset.dense import DenseSet
from src.sumset.engine import (
    apply_automorphism,
    brute_force_sumset,
    minkowski_sum,
    project_multiset,
    project_set,
    split_membership,
    sumset,
    sumset_card,
)
from src.utils.settings import Settings


def random_multiset(rng, p, m, max_choices=2 ** 16):
    """Random multiset with prod(m_x + 1) <= max_choices"""
    G = make_group(p, m)
    counts = {}
    choices = 1
    for _ in range(int(rng.integers(0, 8))):
        index = int(rng.integers(0, G.order))
        count = int(rng.integers(1, 2 * p))
        current = counts.get(index, 0)
        grown = choices // (current + 1) * (current + count + 1)
        if grown > max_choices:
            break
        counts[index] = current + count
        choices = grown
    return Multiset(G, counts)


def test_dense_set_basics(z5_2):
    S = DenseSet.from_indices(z5_2, [0, 3, 7])
    assert S.card == 3
    assert 3 in S and 4 not in S
    assert list(S.indices()) == [0, 3, 7]
    assert DenseSet.from_hex(z5_2, S.to_hex()) == S
    T = DenseSet.from_indices(z5_2, [3, 4])
    assert (S | T).card == 4
    assert (S & T).indices().tolist() == [3]
    assert DenseSet.identity(z5_2).issubset(S)
    with pytest.raises(GroupMismatchError):
        S | DenseSet.empty(make_group(3, 2))


def test_translate(z5_2):
    S = DenseSet.from_indices(z5_2, [0, z5_2.element(1, 1).index])
    y = z5_2.element(4, 0).index
    assert S.translate(y) == DenseSet.from_indices(z5_2, [y, z5_2.element(0, 1).index])


def test_known_sumsets(z3_2, z5_2):
    A = Multiset.from_coords(z3_2, [((1, 0), 2), ((0, 1), 3)])
    assert sumset_card(A) == 9
    assert sumset(A) == brute_force_sumset(A)

    assert sumset(Multiset.empty(z5_2)) == DenseSet.identity(z5_2)
    assert sumset_card(Multiset.from_coords(z5_2, [((1, 0), 1)])) == 2
    assert sumset_card(Multiset.from_coords(z5_2, [((1, 0), 9)])) == 5
    assert sumset_card(construct_extremal_2d(5, 1)) == 15


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_extremal_sumset_size(p):
    for k in range(p - 2):
        assert sumset_card(construct_extremal_2d(p, k)) == (k + 2) * p


def test_zero_summands_do_not_matter(z5_2):
    A = Multiset.from_coords(z5_2, [((1, 2), 3)])
    assert sumset(A.with_added(0, 4)) == sumset(A)


def test_dense_cap(monkeypatch, z5_2):
    monkeypatch.setattr(engine, "get_settings", lambda: Settings(dense_cap=16))
    with pytest.raises(OrderTooLargeError):
        sumset(Multiset.empty(z5_2))


def test_oracle_limit(z5_2):
    A = Multiset.from_coords(z5_2, [((1, 0), 9), ((0, 1), 9)])
    with pytest.raises(TooManySubmultisetsError):
        brute_force_sumset(A, limit=99)


def check_oracle(rng, cases):
    for _ in range(cases):
        p = int(rng.choice([3, 5, 7, 11, 13]))
        m = int(rng.choice([1, 2]))
        A = random_multiset(rng, p, m)
        assert sumset(A) == brute_force_sumset(A), A.to_literal()


def test_oracle_equivalence_sample(rng):
    check_oracle(rng, 300)


@pytest.mark.slow
def test_oracle_equivalence_corpus(rng):
    check_oracle(rng, 10_000)


@given(st.dictionaries(st.integers(0, 48), st.integers(1, 12), max_size=5))
@settings(max_examples=80, deadline=None)
def test_clamping_and_monotonicity(counts):
    G = make_group(7, 2)
    A = Multiset(G, counts)
    S = sumset(A)
    assert 0 in S
    clamped = Multiset(G, {i: min(c, G.p - 1) for i, c in counts.items()})
    assert sumset(clamped) == S
    assert S.issubset(sumset(A.with_added(5)))


@given(st.dictionaries(st.integers(1, 24), st.integers(1, 4), max_size=5), st.integers(0, 479))
@settings(max_examples=60, deadline=None)
def test_sumset_commutes_with_automorphisms(counts, row):
    G = make_group(5, 2)
    perm = automorphisms(G)[row]
    A = Multiset(G, counts)
    assert sumset(A.map(perm)) == apply_automorphism(sumset(A), perm)


def test_minkowski_sum():
    G = make_group(5, 1)
    S = DenseSet.from_indices(G, [0, 1])
    assert minkowski_sum(S, S).indices().tolist() == [0, 1, 2]
    assert minkowski_sum(S, DenseSet.empty(G)).card == 0


def test_projection_commutes_with_sumset(z5_2):
    A = Multiset.from_coords(z5_2, [((1, 1), 2), ((2, 0), 1)])
    dec = complement(z5_2, line_of(z5_2, z5_2.element(1, 0)))
    assert dec.K == line_of(z5_2, z5_2.element(0, 1))
    for side in ("H", "K"):
        assert project_set(sumset(A), dec, side) == sumset(project_multiset(A, dec, side))


@given(st.dictionaries(st.integers(1, 24), st.integers(1, 4), max_size=6), st.integers(0, 5))
@settings(max_examples=60, deadline=None)
def test_split_membership(counts, line_pos):
    G = make_group(5, 2)
    H = enumerate_lines(G)[line_pos]
    dec = complement(G, H)
    A = Multiset(G, counts)
    D, rest = A.split(H)
    E = project_multiset(rest, dec, "K")
    union = sumset(D.union(E))
    for z in range(G.order):
        assert (z in union) == split_membership(D, E, dec, z)
    for y in dec.K.elements():
        y = int(y)
        coset = np.asarray(G.add_indices(H.elements(), y))
        expected = sumset(D).translate(y) if y in sumset(E) else DenseSet.empty(G)
        assert DenseSet.from_indices(G, [c for c in coset if c in union]) == expected


def small_submultisets(G, members, size):
    nonzero = [int(x) for x in members if int(x) != 0]
    for total in range(size + 1):
        for chosen in itertools.combinations_with_replacement(nonzero, total):
            yield Multiset.from_elements(G, chosen)


@pytest.mark.parametrize("p", [3, 5])
def test_direct_product_of_sumsets(p):
    G = make_group(p, 2)
    size = p - 1 if p == 3 else 3
    for H in enumerate_lines(G):
        K = complement(G, H).K
        left = [(D, sumset_card(D)) for D in small_submultisets(G, H.elements(), size)]
        right = [(E, sumset_card(E)) for E in small_submultisets(G, K.elements(), size)]
        for D, card_d in left:
            for E, card_e in right:
                assert sumset_card(D.union(E)) == card_d * card_e

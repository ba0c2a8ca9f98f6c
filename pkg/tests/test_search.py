"""Tests for canonical forms, enumeration and the exhaustive harness"""

from collections import Counter

import pytest
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from src.errors import (
    BudgetExceededError,
    EvenPrimeUnsupportedError,
    GroupMismatchError,
    InputError,
    ShardOutOfRangeError,
)
from src.group.automorphisms import automorphisms
from src.group.params import make_group
from src.multiset.multiset import Multiset
from src.multiset.validity import is_valid
from src.search.canonical import canonical_form, get_canonicalizer, orbit_size
from src.search.enumerate import enumerate_valid, iter_valid_sequences
from src.search.remark import verify_p11_remark
from src.search.report import (
    NRecord,
    SearchReport,
    Verdict,
    merge_reports,
    verify_witnesses,
)
from src.search.verify import estimate_orbits, shard_of, verify_conjecture, verify_peng
from src.sumset.engine import sumset_card
from src.utils.settings import Settings


def minima(report):
    return {rec.n: rec.min_card for rec in report.records}


def test_canonical_form_examples(z5_2):
    A = Multiset.from_coords(z5_2, [((1, 0), 1), ((0, 1), 2)])
    B = Multiset.from_coords(z5_2, [((0, 1), 1), ((1, 0), 2)])
    assert canonical_form(A).orbit_tag == canonical_form(B).orbit_tag

    C = Multiset.from_coords(z5_2, [((1, 0), 2)])
    D = Multiset.from_coords(z5_2, [((2, 3), 2)])
    assert canonical_form(C).orbit_tag == canonical_form(D).orbit_tag == (1, 1)
    assert canonical_form(D).multiset == C
    assert canonical_form(Multiset.empty(z5_2)).orbit_tag == ()


def test_orbit_sizes(z5_2):
    assert orbit_size(Multiset.empty(z5_2)) == 1
    # GL_2(F_5) acts transitively on the 24 nonzero vectors
    assert orbit_size(Multiset.from_coords(z5_2, [((1, 0), 3)])) == 24


@pytest.mark.parametrize("n", range(6))
def test_orbit_completeness_p3(z3_2, n):
    canon = get_canonicalizer(z3_2)
    everything = list(iter_valid_sequences(z3_2, n))
    representatives = list(iter_valid_sequences(z3_2, n, canonical_only=True))
    tags = {canon.tag(seq) for seq in everything}
    assert len(representatives) == len(tags)
    assert set(representatives) == tags
    total = sum(orbit_size(Multiset.from_elements(z3_2, seq)) for seq in representatives)
    assert total == len(everything)


def test_enumeration_is_sorted_and_valid(z5_2):
    seqs = list(iter_valid_sequences(z5_2, 4, canonical_only=True))
    assert seqs == sorted(seqs)
    for seq in seqs:
        assert list(seq) == sorted(seq)
        assert is_valid(Multiset.from_elements(z5_2, seq)).valid


def test_enumeration_edges(z3_2):
    assert list(enumerate_valid(3, 2, 6)) == []
    assert list(enumerate_valid(3, 2, -1)) == []
    assert [A.total for A in enumerate_valid(3, 2, 0)] == [0]
    with pytest.raises(EvenPrimeUnsupportedError):
        list(enumerate_valid(2, 2, 1))
    with pytest.raises(ValueError):
        list(iter_valid_sequences(z3_2, 3, start_after=(1, 1)))


def test_enumeration_resume(z5_2):
    seqs = list(iter_valid_sequences(z5_2, 3, canonical_only=True))
    k = len(seqs) // 2
    assert list(iter_valid_sequences(z5_2, 3, canonical_only=True, start_after=seqs[k])) == seqs[k + 1:]
    assert list(iter_valid_sequences(z5_2, 3, canonical_only=True, start_after=seqs[-1])) == []


def test_prune_counts_survive_resume(z5_2):
    full = Counter()
    seqs = list(iter_valid_sequences(z5_2, 5, canonical_only=True, stats=full))
    assert full["canonical"] > 0 and full["validity"] > 0

    k = len(seqs) // 3
    # stats seen when leaf k was emitted
    before = Counter()
    walker = iter_valid_sequences(z5_2, 5, canonical_only=True, stats=before)
    for _ in range(k + 1):
        next(walker)
    walker.close()
    rest = Counter(before)
    list(iter_valid_sequences(z5_2, 5, canonical_only=True, start_after=seqs[k], stats=rest))
    assert rest == full


@given(
    st.dictionaries(st.integers(1, 24), st.integers(1, 3), min_size=1, max_size=4),
    st.integers(0, 479),
)
@settings(max_examples=50, deadline=None)
def test_canonical_form_is_orbit_invariant(counts, row):
    G = make_group(5, 2)
    A = Multiset(G, counts)
    assume(is_valid(A).valid)
    image = A.map(automorphisms(G)[row])
    form = canonical_form(A)
    assert canonical_form(image).orbit_tag == form.orbit_tag
    assert sumset_card(form.multiset) == sumset_card(A) == sumset_card(image)


def test_shard_of():
    tag = (1, 1, 2, 7)
    assert shard_of(tag, 1) == 0
    assert shard_of(tag, 4) == shard_of(tag, 4)
    assert all(0 <= shard_of((i,), 3) < 3 for i in range(1, 25))


def test_estimate_orbits():
    assert estimate_orbits(3, 2, 0) == pytest.approx(1 / 48)
    assert estimate_orbits(7, 2, 13) > 10 ** 6


def test_verify_p3():
    report = verify_conjecture(3, 2, [3, 4, 5])
    assert minima(report) == {3: 6, 4: 8, 5: 9}
    assert report.verdict is Verdict.CONFIRMED
    for rec in report.records:
        assert rec.verdict is Verdict.CONFIRMED
        assert rec.min_card == rec.floor
        assert rec.witnesses and rec.orbits_scanned >= len(rec.witnesses)


def test_verify_p5_small():
    report = verify_conjecture(5, 2, [5, 6])
    assert minima(report) == {5: 10, 6: 15}


@pytest.mark.slow
def test_verify_p5():
    report = verify_conjecture(5, 2, [7, 8, 9])
    assert minima(report) == {7: 20, 8: 24, 9: 25}
    assert report.verdict is Verdict.CONFIRMED


@pytest.mark.slow
def test_verify_z3_cubed():
    report = verify_conjecture(3, 3, [3, 4, 5, 6, 7, 8])
    assert minima(report) == {3: 6, 4: 8, 5: 9, 6: 18, 7: 26, 8: 27}


def test_peng_p3():
    report = verify_peng(3)
    assert report.config["command"] == "peng"
    assert report.records[0].min_card == 9


@pytest.mark.slow
def test_peng_p5():
    assert verify_peng(5).records[0].min_card == 25


def test_empty_size_verdict():
    report = verify_conjecture(3, 2, [0])
    assert minima(report) == {0: 1}
    rec = NRecord(n=2, floor=3)
    assert rec.verdict is Verdict.EMPTY


def test_shards_merge_to_single_run():
    G = make_group(5, 2)
    single = verify_conjecture(5, 2, [5, 6])
    shards = [verify_conjecture(5, 2, [5, 6], shards=2, shard_id=i) for i in range(2)]
    assert sum(s.records[0].orbits_scanned for s in shards) == single.records[0].orbits_scanned
    merged = merge_reports(shards)
    assert "shard_id" not in merged.config
    assert [r.body(G) for r in merged.records] == [r.body(G) for r in single.records]
    reversed_merge = merge_reports(list(reversed(shards)))
    assert [r.body(G) for r in reversed_merge.records] == [r.body(G) for r in merged.records]


def test_worker_pool_matches_single_process():
    G = make_group(3, 2)
    single = verify_conjecture(3, 2, [4, 5])
    pooled = verify_conjecture(3, 2, [4, 5], workers=2)
    assert [r.body(G) for r in pooled.records] == [r.body(G) for r in single.records]


def test_merge_rejects_mismatches():
    a = verify_conjecture(3, 2, [3])
    b = verify_conjecture(3, 2, [4])
    with pytest.raises(ValueError):
        merge_reports([a, b])
    with pytest.raises(ValueError):
        merge_reports([])
    other = SearchReport(p=5, m=2, records=[NRecord(n=3, floor=4)])
    with pytest.raises(GroupMismatchError):
        merge_reports([a, other])


def test_scan_guards():
    with pytest.raises(BudgetExceededError):
        verify_conjecture(7, 2, [13])
    with pytest.raises(ShardOutOfRangeError):
        verify_conjecture(3, 2, [3], shards=2, shard_id=2)
    with pytest.raises(InputError):
        verify_conjecture(3, 2, [3], resume=True)


def test_sharding_does_not_lift_the_budget():
    # shards split the leaves, every shard still walks the whole tree
    tight = Settings(orbit_budget=50)
    with pytest.raises(BudgetExceededError):
        verify_conjecture(5, 2, [7], settings=tight)
    with pytest.raises(BudgetExceededError):
        verify_conjecture(5, 2, [7], shards=1000, shard_id=0, settings=tight)
    with pytest.raises(BudgetExceededError):
        verify_conjecture(5, 2, [7], workers=1000, settings=tight)
    report = verify_conjecture(5, 2, [7], shards=1000, shard_id=0, settings=tight, allow_large=True)
    assert 0 < report.records[0].orbits_scanned < 100


def test_report_json_round_trip():
    report = verify_conjecture(3, 2, [3, 4])
    text = report.to_json()
    again = SearchReport.from_json(text)
    assert again.to_json() == text
    assert again.body_sha256() == report.body_sha256()


def test_report_hash_excludes_timing():
    report = verify_conjecture(3, 2, [3])
    before = report.body_sha256()
    report.wall_clock += 100.0
    report.records[0].elapsed += 5.0
    assert report.body_sha256() == before

    data = report.to_dict()
    data["records"][0]["min_card"] = 1
    with pytest.raises(ValueError):
        SearchReport.from_dict(data)


def test_verify_witnesses_catches_bad_record():
    report = verify_conjecture(3, 2, [4])
    report.records[0].min_card -= 1
    with pytest.raises(RuntimeError):
        verify_witnesses(report)


def test_p11_remark():
    report = verify_p11_remark()
    assert report.cases_scanned == 10 ** 4
    assert report.sixteen_cases == 16
    assert report.target_cases_are_units
    assert report.min_other_card >= 34
    assert report.extensions_scanned == 160
    assert report.min_extension_card > 33
    assert report.unit_set_card == 32
    assert report.holds
    assert report.to_dict()["sixteen_cases"] == 16

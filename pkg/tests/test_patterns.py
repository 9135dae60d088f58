from collections import Counter
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordmatch.core import CliqueCertificate, MatchingError, Pattern, check_certificate, to_word
from ordmatch.exact import all_matchings
from ordmatch.patterns import (
    R_PARENTS,
    NotCollectableError,
    atlas,
    big_brothers,
    canonical_clique,
    children,
    collectable_index,
    decompose,
    enumerate_patterns,
    family,
    gamma,
    is_collectable,
    is_r_partite,
    last_run,
    maturity,
    split,
    table_rows,
)


def words(ps):
    return [p.word for p in ps]


def test_enumerate_examples():
    assert words(enumerate_patterns(2)) == ["AABB", "ABAB", "ABBA"]
    t1 = {"AAABBB", "AABABB", "AABBBA", "AABBAB", "ABBBAA", "ABBAAB", "ABBABA", "ABAABB", "ABABBA", "ABABAB"}
    assert set(words(enumerate_patterns(3))) == t1
    assert len(enumerate_patterns(4)) == 35


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_pattern_count(r):
    assert len(enumerate_patterns(r)) == comb(2 * r, r) // 2


def test_pattern_count_from_pairs():
    # the number of distinct patterns formed by 2-edge matchings
    for r in (2, 3, 4, 5):
        got = {m.edges for m in all_matchings(r, 2)}
        assert len(got) == comb(2 * r, r) // 2


def test_split_examples():
    s = split("AABBABBA")
    assert s.blocks == (("A", 2), ("A", 1), ("B", 1)) and str(s) == "|AABB|AB|BA|"
    assert split("AABABB") is None
    assert str(split("AABBBBAA")) == "|AABB|BBAA|"


def test_collectable_examples():
    assert is_collectable("ABABAB")
    assert not is_collectable("AABABB")
    assert sum(map(is_collectable, enumerate_patterns(4))) == 27


def test_maturity_examples():
    assert maturity("AAAABBBB") == 2
    assert maturity("AABBBBAA") == 0
    assert maturity("ABABABAB") == 0
    with pytest.raises(NotCollectableError):
        maturity("AABABB")


def test_partite_examples():
    assert is_r_partite("ABBA") and not is_r_partite("AABB")
    idx = collectable_index(3)
    part = [p for p in enumerate_patterns(3) if is_r_partite(p)]
    assert set(part) == {idx[5], idx[6], idx[8], idx[9]}
    assert set(words(part)) == {"ABBAAB", "ABBABA", "ABABBA", "ABABAB"}
    assert sum(map(is_r_partite, enumerate_patterns(4))) == 8


def test_decompose_examples():
    assert decompose("AABABBAB") == (Pattern("AABABB"), Pattern("ABAB"))
    assert decompose("AAABBB") == (Pattern("AABB"), Pattern("AABB"))
    assert decompose("ABABBA") == (Pattern("ABAB"), Pattern("ABBA"))
    with pytest.raises(MatchingError):
        decompose("ABAB")


def test_children_examples():
    assert words(children("AAABBB", 1)) == ["AAAABBBB", "AAABABBB", "AAABBABB"]
    assert words(children("ABAB", 2)) == ["ABABBA"]
    assert words(children("AABB", 1)) == ["AAABBB", "AABABB"]
    with pytest.raises(NotCollectableError):
        children("AABABB", 1)


def test_big_brother_examples():
    assert words(big_brothers(3)) == ["AAABBB"]
    idx = collectable_index(4)
    assert big_brothers(4) == [idx[1], idx[10], idx[19]]
    assert len(big_brothers(5)) == 9
    assert words(family("AAABBB")) == ["AAABBB", "AABABB"]


def test_index_examples():
    idx = collectable_index(3)
    assert words(idx) == ["AAABBB", "AABBBA", "AABBAB", "ABBBAA", "ABBAAB", "ABBABA", "ABAABB", "ABABBA", "ABABAB"]
    assert idx.gamma == 1 and gamma(4) == 4 and gamma(2) == 0
    assert len(collectable_index(4)) == 27
    assert words(collectable_index(2)) == words(R_PARENTS)


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_index_size_and_gamma(r):
    assert len(collectable_index(r)) == 3 ** (r - 1)
    assert gamma(r) == (3 ** (r - 2) - 1) // 2
    assert set(collectable_index(r)) == {p for p in enumerate_patterns(r) if is_collectable(p)}


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_split_reassembles(r):
    for p in enumerate_patterns(r):
        s = split(p)
        if s is not None:
            assert s.word() == p.word
            assert sum(s.partition) == r


@pytest.mark.parametrize("r", [3, 4, 5])
def test_children_partition_all_patterns(r):
    seen = Counter()
    for q in collectable_index(r - 1):
        for j in (1, 2, 3):
            kids = children(q, j)
            assert sum(map(is_collectable, kids)) == 1 and is_collectable(kids[0])
            for c in kids:
                assert decompose(c) == (q, R_PARENTS[j - 1])
                seen[c] += 1
            if j == 1 and last_run(q) >= 2:
                assert maturity(kids[0]) == maturity(q) + 1
    for p in enumerate_patterns(r):
        if not is_collectable(decompose(p)[0]):
            seen[p] += 1
    assert set(seen) == set(enumerate_patterns(r)) and set(seen.values()) == {1}


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_maturity_distribution(r):
    mats = Counter(collectable_index(r).maturities())
    for t in range(3, r):
        assert mats[t - 2] == 2 * 3 ** (r - t - 1)
    assert mats[r - 2] == 1


def test_canonical_clique_examples():
    assert to_word(canonical_clique("AABBABBA", 3)) == "AABBCCABCCBA"
    assert to_word(canonical_clique("AABB", 4)) == "AABBCCDD"
    for p in enumerate_patterns(4):
        if is_collectable(p):
            assert to_word(canonical_clique(p, 2)) == p.word
    with pytest.raises(NotCollectableError):
        canonical_clique("AABABB", 3)


@given(st.integers(2, 5).flatmap(lambda r: st.sampled_from(collectable_index(r).table)), st.integers(1, 7))
def test_canonical_clique_is_clique(p, k):
    m = canonical_clique(p, k)
    assert m.n == k and m.r == p.r
    assert check_certificate(m, CliqueCertificate(p, tuple(range(k))))



def test_atlas_and_tables():
    rows = atlas(3)
    assert len(rows) == 10
    assert rows[0]["word"] == "AAABBB" and rows[0]["big_brother"]
    assert rows[1]["sibling_of"] == "AAABBB"
    t1 = table_rows(3, split_words=False, mark_big_brothers=False)
    assert t1[0] == ("P_1", "AAABBB", "(AABB,AABB)")
    assert t1[1] == ("P_1^*", "AABABB", "(AABB,AABB)")
    t2 = table_rows(4)
    assert len(t2) == 35 and sum("(bb)" in row[0] for row in t2) == 3


def test_collectable_iff_size3_clique_r3():
    # brute force over all 280 matchings of size 3
    triangle = set()
    for m in all_matchings(3, 3):
        ws = {to_word(m.submatching([i, j])[0]) for i, j in combinations(range(3), 2)}
        if len(ws) == 1:
            triangle.add(ws.pop())
    assert triangle == {p.word for p in enumerate_patterns(3) if is_collectable(p)}

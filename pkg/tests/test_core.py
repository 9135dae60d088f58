from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matchings
from ordmatch.core import (
    CliqueCertificate,
    Matching,
    MatchingError,
    Pattern,
    check_certificate,
    is_clique,
    load_matching,
    matching_from_json,
    pair_word,
    parse_word,
    pattern_of_pair,
    to_word,
)

EX = "AABACDCDDBCB"


def test_parse_examples():
    assert parse_word(EX).edges == ((1, 2, 4), (3, 10, 12), (5, 7, 11), (6, 8, 9))
    assert parse_word("AABB").edges == ((1, 2), (3, 4))
    assert parse_word("CCECDFDFFEDE") == parse_word(EX)


def test_to_word_examples():
    assert to_word(Matching(3, ((1, 2, 4), (3, 10, 12), (5, 7, 11), (6, 8, 9)))) == EX
    assert to_word(Matching(2, ((1, 2), (3, 4)))) == "AABB"
    assert to_word(parse_word("BBAA")) == "AABB"


def test_pattern_of_pair_examples():
    m = parse_word(EX)
    assert pattern_of_pair(m, 0, 1).word == "AABABB"
    assert pattern_of_pair(m, 2, 3).word == "ABABBA"
    for r in (2, 3, 5):
        line = Matching(r, (tuple(range(1, r + 1)), tuple(range(r + 1, 2 * r + 1))))
        assert pattern_of_pair(line, 0, 1).word == "A" * r + "B" * r


def test_check_certificate_examples():
    line = parse_word("AABBCC")
    assert check_certificate(line, CliqueCertificate(Pattern("AABB"), (0, 1, 2)))
    assert check_certificate(parse_word(EX), CliqueCertificate(Pattern("AABABB"), (0, 1)))
    assert not check_certificate(line, CliqueCertificate(Pattern("ABAB"), (0, 1)))


def test_invalid_inputs():
    for bad in ["", "AAB", "AABBC", "ABA"]:
        with pytest.raises(MatchingError):
            parse_word(bad)
    with pytest.raises(MatchingError):
        parse_word("AABBB")  # unequal multiplicities
    with pytest.raises(MatchingError):
        Matching(2, ((1, 3), (2, 5)))
    with pytest.raises(MatchingError):
        Pattern("BABA")
    with pytest.raises(MatchingError):
        Pattern("AAAB")


def test_pattern_of_canonicalizes():
    assert Pattern.of("BBAA").word == "AABB"
    assert Pattern.of("BAAB").word == "ABBA"


def test_json_and_loader_round_trip(tmp_path):
    m = parse_word(EX)
    assert matching_from_json(m.to_json()) == m
    assert load_matching(EX) == m
    f = tmp_path / "m.txt"
    f.write_text(EX + "\n")
    assert load_matching(str(f)) == m


def test_labels_and_submatching():
    m = parse_word(EX)
    assert m.labels() == [0, 0, 1, 0, 2, 3, 2, 3, 3, 1, 2, 1]
    sub, idx = m.submatching([2, 3])
    assert idx == [2, 3] and to_word(sub) == "ABABBA"


@given(matchings())
def test_round_trip(m):
    w = to_word(m)
    assert to_word(parse_word(w)) == w
    assert parse_word(w) == m


@given(matchings(n=st.integers(2, 7)))
def test_pattern_symmetry(m):
    for i, j in combinations(range(m.n), 2):
        assert pattern_of_pair(m, i, j) == pattern_of_pair(m, j, i)
        assert pattern_of_pair(m, i, j).r == m.r


@given(matchings(n=st.integers(1, 6)))
def test_pairs_are_cliques_of_their_pattern(m):
    for i, j in combinations(range(m.n), 2):
        assert is_clique(m, pattern_of_pair(m, i, j), [i, j])
    for i in range(m.n):
        assert is_clique(m, Pattern("A" * m.r + "B" * m.r), [i])


def test_pair_word_directly():
    assert pair_word((1, 4), (2, 3)) == "ABBA"
    assert pair_word((2, 3), (1, 4)) == "ABBA"

import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import matchings
from ordmatch.constructions import chain, lsw, p1star_chain
from ordmatch.core import Matching, check_certificate, parse_word
from ordmatch.exact import all_matchings, is_clean, max_clique
from ordmatch.extract import (
    ExtractionResult,
    NotCleanError,
    ParamVector,
    PreconditionError,
    drop_vertex,
    es_base2,
    extract3_improved,
    extract_classic,
    extract_clean,
    extract_clique,
    greedy_waves,
    halve_family,
    side_classes,
)
from ordmatch.patterns import canonical_clique, collectable_index, maturity
from ordmatch.random_matchings import sample_permutational

F = Fraction


def assert_sound(m, res: ExtractionResult):
    assert check_certificate(m, res.certificate)
    assert res.size > res.guarantee
    assert res.certificate.pattern == collectable_index(m.r)[res.pattern_index]
    if m.n <= 40:
        assert res.size <= max_clique(m, res.pattern).size


def test_es_base2_examples():
    res = es_base2(parse_word("AABBCC"), F(5, 2), 1, 1)
    assert res.pattern_index == 1 and res.size == 3
    res = es_base2(parse_word("ABCCBA"), 1, F(5, 2), 1)
    assert res.pattern_index == 2 and res.size == 3
    x = F(6, 5)
    for m in all_matchings(2, 3):
        res = es_base2(m, x, x, x)
        assert res.size >= 2
        assert_sound(m, res)


def test_es_base2_precondition():
    with pytest.raises(PreconditionError):
        es_base2(lsw(2, 2, 2), 2, 2, 2)
    with pytest.raises(PreconditionError):
        es_base2(parse_word("AABBCC"), 0, 1, 1)
    with pytest.raises(PreconditionError):
        es_base2(parse_word("AAABBB"), 1, 1, 1)


def test_greedy_waves_cover_landscape():
    m = parse_word("ABACBDCEDE")
    waves = greedy_waves(m, list(range(m.n)))
    assert [i for w in waves for i in w] == list(range(m.n))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_es_base2_exhaustive_unit_params(n):
    for m in all_matchings(2, n):
        assert_sound(m, es_base2(m, 1, 1, 1))


def test_extract_pure_cliques():
    idx = collectable_index(3)
    for i in range(1, 10):
        for k in (2, 4, 6):
            xs = [F(1)] * 9
            xs[i - 1] = F(2 * k - 1, 2)
            res = extract_clique(canonical_clique(idx[i], k), xs)
            assert res.pattern_index == i and res.size == k


def test_extract_random_r3_n10():
    xs = [F(129, 100)] * 9
    assert ParamVector(3, tuple(xs)).product < 10
    for seed in range(30):
        m = sample_permutational(3, 10, seed)
        res = extract_clique(m, xs)
        assert_sound(m, res)
        if maturity(res.pattern) == 0:
            assert res.size >= 2


def test_extract_p1star_chain():
    res = extract_clique(p1star_chain(6), [F("5.9")] + [1] * 8)
    assert res.pattern_index == 1 and res.guarantee == F(59, 20) and res.size >= 3
    assert_sound(p1star_chain(6), res)


def test_extract_precondition():
    with pytest.raises(PreconditionError):
        extract_clique(sample_permutational(3, 5, 0), [1] * 8)
    with pytest.raises(PreconditionError):
        extract_clique(sample_permutational(3, 5, 0), [F(5)] + [1] * 8)


@settings(max_examples=200, deadline=None)
@given(matchings(r=st.integers(2, 4), n=st.integers(2, 14)), st.data())
def test_extract_soundness(m, data):
    k = 3 ** (m.r - 1)
    # random positive rationals with product < n
    while True:
        xs = [F(data.draw(st.integers(1, 40)), data.draw(st.integers(4, 40))) for _ in range(k)]
        if prod(xs) < m.n:
            break
    assert_sound(m, extract_clique(m, xs))


def test_classic_matches_rational_form():
    rng = random.Random(5)
    for _ in range(100):
        r = rng.choice([2, 3])
        a = [rng.randint(1, 2) for _ in range(3 ** (r - 1))]
        m = sample_permutational(r, prod(a) + 1, rng.getrandbits(32))
        res = extract_classic(m, a)
        assert res.guarantee == F(a[res.pattern_index - 1], 2 ** maturity(res.pattern))
        assert_sound(m, res)
    with pytest.raises(PreconditionError):
        extract_classic(parse_word("AABB"), [F(1, 2), 1, 1])


def test_halve_family_examples():
    cert = halve_family(p1star_chain(4), [0, 1, 2, 3], "AAABBB")
    assert cert.edge_indices == (0, 2)
    assert halve_family(canonical_clique("AAABBB", 5), range(5), "AAABBB").size == 3
    cert = halve_family(p1star_chain(5), range(5), "AAABBB")
    assert cert.size == 3 and check_certificate(p1star_chain(5), cert)
    with pytest.raises(PreconditionError):
        halve_family(canonical_clique("ABABAB", 3), range(3), "AAABBB")


def tripartite(n, rng):
    cols = [rng.sample(range(1, n + 1), n) for _ in range(3)]
    return Matching.from_edges(3, [tuple(k * n + cols[k][i] for k in range(3)) for i in range(n)])


def test_extract_clean_examples():
    rng = random.Random(1)
    a = [1, 1, 1, 1, 2, 1, 1, 1, 1]
    for _ in range(200):
        m = tripartite(3, rng)
        res = extract_clean(m, a)
        assert res.size >= a[res.pattern_index - 1] + 1
        assert check_certificate(m, res.certificate)
    p9 = collectable_index(3)[9]
    res = extract_clean(canonical_clique(p9, 4), [1] * 8 + [3])
    assert res.pattern_index == 9 and res.size == 4
    with pytest.raises(NotCleanError):
        extract_clean(parse_word("AABABBCCC"), [1] * 9)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4), st.data())
def test_extract_clean_soundness(r, data):
    k = 3 ** (r - 1)
    a = [data.draw(st.integers(1, 2)) for _ in range(k)]
    while prod(a) > 12:
        a[a.index(max(a))] = 1
    n = prod(a) + 1
    # clean hosts: r-partite or canonical cliques
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    cols = [rng.sample(range(1, n + 1), n) for _ in range(r)]
    m = Matching.from_edges(r, [tuple(j * n + cols[j][i] for j in range(r)) for i in range(n)])
    assert is_clean(m)
    res = extract_clean(m, a)
    assert res.size >= a[res.pattern_index - 1] + 1 and check_certificate(m, res.certificate)


def test_drop_vertex():
    m = parse_word("AABACDCDDBCB")
    # edges {1,2,4},{3,10,12},{5,7,11},{6,8,9} lose their last vertex
    assert str(drop_vertex(m, -1)) == "AABCDCDB"
    assert drop_vertex(m, 1).r == 2 and drop_vertex(m, 1).edges[0] == (1, 3)


def test_side_classes_on_stack():
    m = canonical_clique("ABBAAB", 4)
    left, right = side_classes(m, range(4))
    assert sorted(left + right) == [0, 1, 2, 3]


def test_extract3_examples():
    idx = collectable_index(3)
    # all a_i = 1 needs n >= 1*(1+1)*1*1*(1+1)*1*1 + 1 = 5
    for seed in range(50):
        m = sample_permutational(3, 5, seed)
        res = extract3_improved(m, [1] * 9)
        assert res.size >= 2 and check_certificate(m, res.certificate)
    with pytest.raises(PreconditionError):
        extract3_improved(sample_permutational(3, 4, 0), [1] * 9)
    a = [1] * 9
    a[1] = 10
    m = canonical_clique(idx[2], 23)
    res = extract3_improved(m, a)
    assert res.pattern_index == 2 and res.size >= 11


def test_extract3_symmetric_a2():
    a = 2
    n = a * 2 * a * a * a * 2 * a * a * a + 1
    for seed in range(5):
        m = sample_permutational(3, n, seed)
        res = extract3_improved(m, [a] * 9)
        assert res.size >= a + 1 and check_certificate(m, res.certificate)


def test_extract3_adversarial():
    for m in [chain("AABBAB", 12), chain("ABAABB", 12), p1star_chain(12)] + [canonical_clique(p, 12) for p in collectable_index(3)]:
        res = extract3_improved(m, [1] * 9)
        assert res.size >= 2 and check_certificate(m, res.certificate)

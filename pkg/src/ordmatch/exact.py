"""Exact oracles: exhaustive enumeration, maximum P-cliques, pattern censuses."""

from __future__ import annotations

import os
from collections import Counter
from itertools import combinations
from math import factorial
from typing import Iterator

from .core import CliqueCertificate, Matching, MatchingError, Pattern, pair_word
from .patterns import R_PARENTS, enumerate_patterns, is_collectable
from .sequences import longest_decreasing, longest_increasing

DEFAULT_ENUM_GUARD = 10**7
DEFAULT_CLIQUE_GUARD = 64


class GuardExceeded(RuntimeError):
    pass


def enum_guard() -> int:
    return int(os.environ.get("ORDMATCH_GUARD_ENUM", DEFAULT_ENUM_GUARD))


def clique_guard() -> int:
    return int(os.environ.get("ORDMATCH_GUARD_CLIQUE", DEFAULT_CLIQUE_GUARD))


def count_matchings(r: int, n: int) -> int:
    return factorial(r * n) // (factorial(r) ** n * factorial(n))


def all_matchings(r: int, n: int, guard: int | None = None) -> Iterator[Matching]:
    """Every r-matching of size n, in lexicographic order of canonical words."""
    if r < 2 or n < 0:
        raise MatchingError("need r >= 2 and n >= 0")
    limit = enum_guard() if guard is None else guard
    total = count_matchings(r, n)
    if total > limit:
        raise GuardExceeded(f"{total} matchings exceed the enumeration guard {limit}")

    def rec(free: tuple[int, ...]):
        if not free:
            yield ()
            return
        first, rest = free[0], free[1:]
        for combo in combinations(rest, r - 1):
            taken = set(combo)
            remaining = tuple(v for v in rest if v not in taken)
            edge = (first, *combo)
            for tail in rec(remaining):
                yield (edge, *tail)

    for edges in rec(tuple(range(1, r * n + 1))):
        yield Matching._unchecked(r, edges)


def census(m: Matching) -> Counter:
    """Number of edge pairs forming each pattern."""
    es = m.edges
    counts = Counter(pair_word(e, f) for e, f in combinations(es, 2))
    return Counter({Pattern(w): c for w, c in counts.items()})


def pattern_support(m: Matching) -> set[Pattern]:
    return set(census(m))


def is_clean(m: Matching) -> bool:
    es = m.edges
    return all(is_collectable(pair_word(e, f)) for e, f in combinations(es, 2))


def compatibility(m: Matching, p: Pattern | str) -> list[int]:
    """Bitmask adjacency of the graph joining edges that form ``p``."""
    word = p.word if isinstance(p, Pattern) else p
    es = m.edges
    adj = [0] * m.n
    for i in range(m.n):
        for j in range(i + 1, m.n):
            if pair_word(es[i], es[j]) == word:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _color_bound(cand: int, adj: list[int]) -> int:
    # Greedy partition of the candidates into independent sets.
    colors = 0
    while cand:
        colors += 1
        q = cand
        while q:
            low = q & -q
            v = low.bit_length() - 1
            cand &= ~low
            q &= ~low & ~adj[v]
    return colors


def max_clique(m: Matching, p, guard: int | None = None) -> CliqueCertificate:
    """Largest set of edges pairwise forming ``p``.

    Branch and bound over edges in left-endpoint order with a greedy-coloring
    bound.  Candidates are tried smallest index first and only strict
    improvements are kept, so the lexicographically least maximum set wins.
    """
    p = p if isinstance(p, Pattern) else Pattern(p)
    if p.r != m.r:
        raise MatchingError(f"pattern {p} does not have uniformity {m.r}")
    limit = clique_guard() if guard is None else guard
    if m.n > limit:
        raise GuardExceeded(f"max_clique is limited to {limit} edges, got {m.n}")
    if m.n == 0:
        return CliqueCertificate(p, ())
    adj = compatibility(m, p)
    best: list[int] = [0]
    best_size = 1

    def expand(clique: list[int], cand: int):
        nonlocal best, best_size
        if len(clique) > best_size:
            best, best_size = list(clique), len(clique)
        while cand:
            if len(clique) + bin(cand).count("1") <= best_size:
                return
            if len(clique) + _color_bound(cand, adj) <= best_size:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand &= ~low
            clique.append(v)
            expand(clique, cand & adj[v])
            clique.pop()

    expand([], (1 << m.n) - 1)
    return CliqueCertificate(p, tuple(best))


def max_line_fast(m: Matching) -> CliqueCertificate:
    """Largest alignment clique: pairwise disjoint spans, picked by earliest end."""
    order = sorted(range(m.n), key=lambda i: m.edges[i][-1])
    chosen = []
    last = 0
    for i in order:
        if m.edges[i][0] > last:
            chosen.append(i)
            last = m.edges[i][-1]
    line = Pattern("A" * m.r + "B" * m.r)
    return CliqueCertificate(line, tuple(sorted(chosen)))


def _require_r2(m: Matching):
    if m.r != 2:
        raise MatchingError("this solver works on 2-matchings only")


def max_stack_fast(m: Matching) -> CliqueCertificate:
    """Largest nesting clique: longest decreasing run of right ends."""
    _require_r2(m)
    return CliqueCertificate(R_PARENTS[1], tuple(longest_decreasing([e[1] for e in m.edges])))


def max_wave_fast(m: Matching) -> CliqueCertificate:
    """Largest crossing clique.

    All edges of a wave contain the point just right of its last left end,
    and among edges containing a common point the waves are exactly the
    increasing runs of right ends.  So the answer is the best longest
    increasing subsequence over the n stabbing points.
    """
    _require_r2(m)
    es = m.edges
    best: list[int] = []
    for k in range(m.n):
        x = es[k][0]
        live = [i for i in range(k + 1) if es[i][1] > x]
        if len(live) <= len(best):
            continue
        run = longest_increasing([es[i][1] for i in live])
        if len(run) > len(best):
            best = [live[i] for i in run]
    return CliqueCertificate(R_PARENTS[2], tuple(best))


def max_stack_wave_fast(m: Matching) -> tuple[CliqueCertificate, CliqueCertificate]:
    return max_stack_fast(m), max_wave_fast(m)


def max_clique_any(m: Matching, p, guard: int | None = None) -> CliqueCertificate:
    """Dispatch to a fast exact solver where one exists."""
    p = p if isinstance(p, Pattern) else Pattern(p)
    if p.word == "A" * m.r + "B" * m.r:
        return max_line_fast(m)
    if m.r == 2 and p == R_PARENTS[1]:
        return max_stack_fast(m)
    if m.r == 2 and p == R_PARENTS[2]:
        return max_wave_fast(m)
    return max_clique(m, p, guard)


def all_maxima(m: Matching, guard: int | None = None) -> dict[Pattern, CliqueCertificate]:
    """Maximum clique for every r-pattern."""
    return {p: max_clique_any(m, p, guard) for p in enumerate_patterns(m.r)}


def base2_outcomes(n: int, x1: int, x2: int, x3: int) -> dict[str, int]:
    """Outcome counts of the base extraction over every 2-matching of size n.

    Runs a compiled replica of :func:`ordmatch.extract.es_base2` (same
    branch order, same tie rules) that also re-checks each produced clique.
    ``failed`` counts matchings where no valid clique beat its threshold.
    """
    from ._kernels import exhaustive_base2

    c = exhaustive_base2(n, x1, x2, x3)
    return {"failed": int(c[0]), "line": int(c[1]), "stack": int(c[2]), "wave": int(c[3])}

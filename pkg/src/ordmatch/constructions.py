"""Extremal constructions: blow-ups, layered cliques and chains."""

from __future__ import annotations

import heapq
from itertools import combinations
from typing import Sequence

from .core import Matching, MatchingError, Pattern, pair_word
from .exact import census, max_clique_any
from .patterns import R_PARENTS, canonical_clique, split


class ConstructionError(MatchingError):
    pass


def _pattern(p) -> Pattern:
    return p if isinstance(p, Pattern) else Pattern(p)


def _copies(m: Matching, n: Matching) -> list[tuple[tuple[int, ...], int]]:
    # (edge, index of the outer edge it belongs to)
    t = n.n
    return [
        (tuple((e[(v - 1) // t] - 1) * t + (v - 1) % t + 1 for v in f), a)
        for a, e in enumerate(m.edges)
        for f in n.edges
    ]


def blow_up(m: Matching, n: Matching) -> Matching:
    """The N-blow-up M[N].

    Vertex i of M becomes a block of |N| consecutive vertices.  On the blocks
    of an edge e of M a copy of N is laid out order-preservingly: vertex v
    of N lands in the ceil(v/|N|)-th block of e.
    """
    if m.r != n.r:
        raise ConstructionError(f"uniformity mismatch: {m.r} vs {n.r}")
    return Matching.from_edges(m.r, [e for e, _ in _copies(m, n)])


def inheritance_check(m: Matching, n: Matching) -> bool:
    """Whether every pair of edges from different copies of N in M[N]
    forms the pattern of the corresponding pair of M."""
    if m.r != n.r:
        raise ConstructionError(f"uniformity mismatch: {m.r} vs {n.r}")
    copies = _copies(m, n)
    for (e, a), (f, c) in combinations(copies, 2):
        if a != c and pair_word(e, f) != pair_word(m.edges[a], m.edges[c]):
            return False
    return True


def refines(fine: Sequence[int], coarse: Sequence[int]) -> bool:
    """Whether every part of ``coarse`` is a sum of consecutive parts of ``fine``."""
    if sum(fine) != sum(coarse):
        return False
    cuts_f, s = set(), 0
    for x in fine:
        s += x
        cuts_f.add(s)
    s = 0
    for x in coarse:
        s += x
        if s not in cuts_f:
            return False
    return True


def partition_of(p) -> tuple[int, ...]:
    s = split(_pattern(p))
    if s is None:
        raise ConstructionError(f"{p} is not collectable")
    return s.partition


def refinement_condition(outer_patterns, inner_patterns) -> bool:
    """Sufficient condition for outer-inheritance of a blow-up of clean matchings."""
    return all(
        refines(partition_of(q), partition_of(p))
        for p in outer_patterns
        for q in inner_patterns
    )


def layered_construction(r: int, spec, validate: bool = False) -> Matching:
    """K_1[K_2[...[K_m]]] with K_i the canonical p_i-clique of size k_i.

    ``spec`` lists (pattern, size) outermost first.  Each pattern must be
    refined by the next, which makes every blow-up inherit the outer
    patterns; the largest p_i-clique is then exactly k_i.
    """
    spec = [(_pattern(p), int(k)) for p, k in spec]
    if not spec:
        raise ConstructionError("empty layer specification")
    for p, k in spec:
        if p.r != r:
            raise ConstructionError(f"{p} does not have uniformity {r}")
        if k < 1:
            raise ConstructionError("clique sizes must be positive")
        if split(p) is None:
            raise ConstructionError(f"{p} is not collectable")
    for (p, _), (q, _) in zip(spec, spec[1:]):
        if not refines(partition_of(q), partition_of(p)):
            raise ConstructionError(
                f"refinement fails between {p} {partition_of(p)} and {q} {partition_of(q)}"
            )
    out = canonical_clique(spec[-1][0], spec[-1][1])
    for p, k in reversed(spec[:-1]):
        out = blow_up(canonical_clique(p, k), out)
    if validate:
        for p, k in spec:
            got = max_clique_any(out, p).size
            if got != k:
                raise ConstructionError(f"largest {p}-clique has size {got}, expected {k}")
    return out


def lsw(l: int, s: int, w: int) -> Matching:
    """The optimal 2-matching L_l[S_s[W_w]] of size l*s*w."""
    return layered_construction(2, [(R_PARENTS[0], l), (R_PARENTS[1], s), (R_PARENTS[2], w)])


def is_chainable(p) -> bool:
    """First A-run at least as long as the number of B's before the last A."""
    w = _pattern(p).word
    first_run = len(w) - len(w.lstrip("A"))
    last_a = w.rindex("A")
    return first_run >= w[:last_a].count("B")


def chain(p, n: int) -> Matching:
    """A matching whose consecutive edges form ``p`` and all other pairs align.

    The vertex order is a topological order of the constraints, taking the
    smallest available (edge, position) first.
    """
    p = _pattern(p)
    if n < 1:
        raise ConstructionError("chain size must be positive")
    if not is_chainable(p):
        raise ConstructionError(f"{p} is not chainable")
    r = p.r
    succ: dict[tuple[int, int], list[tuple[int, int]]] = {}
    indeg: dict[tuple[int, int], int] = {}
    nodes = [(i, k) for i in range(n) for k in range(r)]
    for v in nodes:
        succ[v], indeg[v] = [], 0

    def before(u, v):
        succ[u].append(v)
        indeg[v] += 1

    for i in range(n):
        for k in range(r - 1):
            before((i, k), (i, k + 1))
    seq = []
    ca = cb = 0
    for c in p.word:
        if c == "A":
            seq.append((0, ca))
            ca += 1
        else:
            seq.append((1, cb))
            cb += 1
    for i in range(n - 1):
        for (x, a), (y, b) in zip(seq, seq[1:]):
            before((i + x, a), (i + y, b))
    for i in range(n):
        for j in range(i + 2, n):
            before((i, r - 1), (j, 0))

    heap = [v for v in nodes if indeg[v] == 0]
    heapq.heapify(heap)
    labels = []
    while heap:
        v = heapq.heappop(heap)
        labels.append(v[0])
        for u in succ[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                heapq.heappush(heap, u)
    if len(labels) != n * r:
        raise ConstructionError(f"constraints for a {p}-chain are cyclic")
    pos: dict[int, list[int]] = {}
    for x, lab in enumerate(labels, start=1):
        pos.setdefault(lab, []).append(x)
    out = Matching.from_edges(r, pos.values())
    if not is_chain(out, p):
        raise ConstructionError(f"no {p}-chain of size {n} exists with this layout")
    return out


def is_chain(m: Matching, p) -> bool:
    word = _pattern(p).word
    line = "A" * m.r + "B" * m.r
    es = m.edges
    return all(
        pair_word(es[i], es[j]) == (word if j == i + 1 else line)
        for i, j in combinations(range(m.n), 2)
    )


def p1star_chain(n: int) -> Matching:
    """The 3-matching A1A1A2 A1A2A3 A2A3A4 ... A(n-1)AnAn."""
    if n < 2:
        raise ConstructionError("the chain needs at least two edges")
    labels = [0, 0, 1]
    for i in range(1, n - 1):
        labels += [i - 1, i, i + 1]
    labels += [n - 2, n - 1, n - 1]
    pos: dict[int, list[int]] = {}
    for x, lab in enumerate(labels, start=1):
        pos.setdefault(lab, []).append(x)
    return Matching.from_edges(3, pos.values())


def chain_census(m: Matching) -> dict[str, int]:
    return {p.word: c for p, c in sorted(census(m).items())}

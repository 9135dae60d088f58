"""Ordered r-uniform matchings, their word encoding, and 2-edge patterns.

A matching of size ``n`` lives on the vertices ``1..r*n``.  Edges are kept as
sorted tuples and the edge list is sorted by left endpoint, so edge ``i`` of a
matching is also letter ``i`` of its canonical word.
"""

from __future__ import annotations

import json
import string
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

LETTERS = string.ascii_uppercase + string.ascii_lowercase


class MatchingError(ValueError):
    """Raised for malformed matchings, words and patterns."""


@dataclass(frozen=True)
class Matching:
    r: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 2:
            raise MatchingError(f"uniformity must be at least 2, got {self.r}")
        edges = tuple(tuple(e) for e in self.edges)
        seen = []
        for e in edges:
            if len(e) != self.r:
                raise MatchingError(f"edge {e} does not have {self.r} vertices")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise MatchingError(f"edge {e} is not strictly increasing")
            seen.extend(e)
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise MatchingError("edges must partition the vertex set 1..r*n")
        if any(e[0] >= f[0] for e, f in zip(edges, edges[1:])):
            raise MatchingError("edges must be sorted by left endpoint")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, r: int, edges: Iterable[Iterable[int]]) -> "Matching":
        """Build a matching from edges in any order; vertices must be 1..r*n."""
        es = sorted(tuple(sorted(e)) for e in edges)
        return cls(r, tuple(es))

    @classmethod
    def _unchecked(cls, r: int, edges: tuple[tuple[int, ...], ...]) -> "Matching":
        obj = object.__new__(cls)
        object.__setattr__(obj, "r", r)
        object.__setattr__(obj, "edges", edges)
        return obj

    @classmethod
    def from_labels(cls, labels: Sequence, r: int | None = None) -> "Matching":
        return parse_word(labels) if r is None else _parse_symbols(list(labels), r)

    @property
    def n(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return to_word(self)

    def labels(self) -> list[int]:
        """Edge index (0-based) at each vertex position."""
        out = [0] * (self.r * self.n)
        for i, e in enumerate(self.edges):
            for v in e:
                out[v - 1] = i
        return out

    def submatching(self, indices: Iterable[int]) -> tuple["Matching", list[int]]:
        """Restrict to the given edges and relabel the vertices compactly.

        Returns the new matching and, for each of its edges, the index of the
        corresponding edge in ``self``.
        """
        idx = sorted(set(indices))
        chosen = [self.edges[i] for i in idx]
        verts = sorted(v for e in chosen for v in e)
        rank = {v: k + 1 for k, v in enumerate(verts)}
        return Matching(self.r, tuple(tuple(rank[v] for v in e) for e in chosen)), idx

    def to_json(self) -> dict:
        return {"r": self.r, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True, order=True)
class Pattern:
    """A 2-edge matching written as a canonical word over ``A`` and ``B``."""

    word: str

    def __post_init__(self):
        w = self.word
        r = len(w) // 2
        if (
            len(w) < 4
            or len(w) % 2
            or set(w) - {"A", "B"}
            or w.count("A") != r
            or w[0] != "A"
        ):
            raise MatchingError(f"{w!r} is not a canonical pattern word")

    @classmethod
    def of(cls, word: str) -> "Pattern":
        """Canonicalize any 2-letter word (e.g. ``BBAA`` -> ``AABB``)."""
        return cls(_canonical_pair_word(word))

    @property
    def r(self) -> int:
        return len(self.word) // 2

    def __str__(self) -> str:
        return self.word


@dataclass(frozen=True)
class CliqueCertificate:
    pattern: Pattern
    edge_indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(self.edge_indices)
        if any(a >= b for a, b in zip(idx, idx[1:])):
            idx = tuple(sorted(set(idx)))
        object.__setattr__(self, "edge_indices", idx)

    @property
    def size(self) -> int:
        return len(self.edge_indices)

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.word,
            "edges": list(self.edge_indices),
            "size": self.size,
        }


def _canonical_pair_word(word: str) -> str:
    if len(set(word)) > 2:
        raise MatchingError(f"{word!r} uses more than two letters")
    first = word[0]
    return "".join("A" if c == first else "B" for c in word)


def _tokenize(text) -> list:
    if isinstance(text, str):
        text = text.strip()
        if any(c.isspace() or c == "," for c in text):
            return [t for t in text.replace(",", " ").split() if t]
        return list(text)
    return list(text)


def _parse_symbols(symbols: list, r: int) -> Matching:
    positions: dict = {}
    for pos, s in enumerate(symbols, start=1):
        positions.setdefault(s, []).append(pos)
    bad = {s: len(p) for s, p in positions.items() if len(p) != r}
    if bad:
        raise MatchingError(f"symbols occur with unequal multiplicity: {bad}")
    return Matching(r, tuple(sorted(tuple(p) for p in positions.values())))


def parse_word(text) -> Matching:
    """Parse a word such as ``"AABACDCDDBCB"`` into the matching it represents.

    Whitespace- or comma-separated tokens are treated as multi-character
    symbols; any other string is read one character per vertex.  A list of
    arbitrary hashable symbols is accepted as well.
    """
    symbols = _tokenize(text)
    if not symbols:
        raise MatchingError("empty word")
    counts = Counter(symbols)
    mult = set(counts.values())
    if len(mult) != 1:
        raise MatchingError(f"symbols occur with unequal multiplicity: {dict(counts)}")
    r = mult.pop()
    if r < 2:
        raise MatchingError("every symbol must occur at least twice")
    return _parse_symbols(symbols, r)


def to_word(m: Matching, sep: str | None = None) -> str:
    """Canonical word of ``m`` (letters in order of first occurrence).

    Up to 52 edges use single letters ``A..Z a..z``; larger matchings, or any
    matching when ``sep`` is given, use 1-based integer tokens joined by
    ``sep`` (default a single space).
    """
    labels = m.labels()
    if sep is None and m.n <= len(LETTERS):
        return "".join(LETTERS[i] for i in labels)
    return (sep if sep is not None else " ").join(str(i + 1) for i in labels)


def pair_word(e: Sequence[int], f: Sequence[int]) -> str:
    """Canonical A/B word of two disjoint sorted edges."""
    if e[0] > f[0]:
        e, f = f, e
    out = []
    i = j = 0
    r = len(e)
    while i < r and j < r:
        if e[i] < f[j]:
            out.append("A")
            i += 1
        else:
            out.append("B")
            j += 1
    out.extend("A" * (r - i))
    out.extend("B" * (r - j))
    return "".join(out)


def pattern_of_pair(m: Matching, i: int, j: int) -> Pattern:
    if i == j:
        raise MatchingError("a pattern needs two distinct edges")
    n = m.n
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"edge index out of range for a matching of size {n}")
    return Pattern(pair_word(m.edges[i], m.edges[j]))


def is_clique(m: Matching, pattern: Pattern | str, indices: Iterable[int]) -> bool:
    word = pattern.word if isinstance(pattern, Pattern) else pattern
    es = m.edges
    return all(pair_word(es[a], es[b]) == word for a, b in combinations(indices, 2))


def check_certificate(m: Matching, c: CliqueCertificate) -> bool:
    """Independently re-check that every pair of listed edges forms ``c.pattern``."""
    idx = c.edge_indices
    if any(not 0 <= i < m.n for i in idx) or c.pattern.r != m.r:
        return False
    return is_clique(m, c.pattern, idx)


def matching_from_json(obj) -> Matching:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return Matching.from_edges(int(obj["r"]), obj["edges"])


def load_matching(source: str) -> Matching:
    """Read a matching from a word, a JSON document, or a path holding either."""
    text = source
    p = Path(source)
    if len(source) < 4096 and p.is_file():
        text = p.read_text()
    text = text.strip()
    if text.startswith("{"):
        return matching_from_json(text)
    return parse_word(text)

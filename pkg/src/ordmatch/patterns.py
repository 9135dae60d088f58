"""Pattern algebra: splitting, collectability, maturity and decomposition.

Collectable patterns are indexed recursively: with ``Q_1, Q_2, ...`` the
collectable patterns of uniformity ``r - 1`` and ``R_1, R_2, R_3`` the
alignment, nesting and crossing, pattern number ``3*(i-1) + j`` is the unique
collectable child of ``(Q_i, R_j)``.  The base order for ``r = 2`` is
``AABB, ABBA, ABAB``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .core import Matching, MatchingError, Pattern, _parse_symbols

R_PARENTS = (Pattern("AABB"), Pattern("ABBA"), Pattern("ABAB"))


class NotCollectableError(MatchingError):
    pass


@dataclass(frozen=True)
class SplitDecomposition:
    blocks: tuple[tuple[str, int], ...]

    @property
    def partition(self) -> tuple[int, ...]:
        """Ordered partition of ``r`` given by the block half-lengths."""
        return tuple(t for _, t in self.blocks)

    def word(self) -> str:
        return "".join(
            c * t + ("B" if c == "A" else "A") * t for c, t in self.blocks
        )

    def __str__(self) -> str:
        return "|" + "|".join(
            c * t + ("B" if c == "A" else "A") * t for c, t in self.blocks
        ) + "|"


def _as_pattern(p) -> Pattern:
    return p if isinstance(p, Pattern) else Pattern(p)


def _runs(word: str) -> list[tuple[str, int]]:
    runs: list[tuple[str, int]] = []
    for c in word:
        if runs and runs[-1][0] == c:
            runs[-1] = (c, runs[-1][1] + 1)
        else:
            runs.append((c, 1))
    return runs


def last_run(p) -> int:
    """Length of the last maximal run, written ``t(Q)`` in the decomposition."""
    return _runs(_as_pattern(p).word)[-1][1]


@lru_cache(maxsize=None)
def enumerate_patterns(r: int) -> tuple[Pattern, ...]:
    if r < 2:
        raise MatchingError("patterns need r >= 2")
    out = []
    for rest in combinations(range(1, 2 * r), r - 1):
        a_pos = {0, *rest}
        out.append("".join("A" if i in a_pos else "B" for i in range(2 * r)))
    return tuple(Pattern(w) for w in sorted(out))


@lru_cache(maxsize=None)
def split(p) -> SplitDecomposition | None:
    w = _as_pattern(p).word
    blocks = []
    i = 0
    while i < len(w):
        c = w[i]
        t = 1
        while i + t < len(w) and w[i + t] == c:
            t += 1
        other = "B" if c == "A" else "A"
        if w[i + t : i + 2 * t] != other * t:
            return None
        blocks.append((c, t))
        i += 2 * t
    return SplitDecomposition(tuple(blocks))


def is_collectable(p) -> bool:
    return split(p) is not None


def maturity(p) -> int:
    p = _as_pattern(p)
    if not is_collectable(p):
        raise NotCollectableError(f"maturity is defined for collectable patterns only, not {p}")
    return max(last_run(p) - 2, 0)


def is_r_partite(p) -> bool:
    s = split(p)
    return s is not None and all(t == 1 for _, t in s.blocks)


def right_parent_word(p) -> str:
    """The last two A's and B's of ``p`` as they appear (possibly ``BBAA`` etc.)."""
    w = _as_pattern(p).word
    a = [i for i, c in enumerate(w) if c == "A"][-2:]
    b = [i for i, c in enumerate(w) if c == "B"][-2:]
    return "".join(w[i] for i in sorted(a + b))


def decompose(p) -> tuple[Pattern, Pattern]:
    """Split an r-pattern into its left parent (r-1) and right parent (2)."""
    p = _as_pattern(p)
    if p.r < 3:
        raise MatchingError("decomposition needs r >= 3")
    w = p.word
    a = [i for i, c in enumerate(w) if c == "A"][:-1]
    b = [i for i, c in enumerate(w) if c == "B"][:-1]
    left = "".join(w[i] for i in sorted(a + b))
    return Pattern(left), Pattern.of(right_parent_word(p))


def children(q, j: int) -> list[Pattern]:
    """All r-patterns decomposing into ``(q, R_j)``; the collectable one first."""
    q = _as_pattern(q)
    if j not in (1, 2, 3):
        raise ValueError("right-parent selector must be 1, 2 or 3")
    if not is_collectable(q):
        raise NotCollectableError(f"left parent {q} is not collectable")
    w = q.word
    last = w[-1]
    other = "A" if last == "B" else "B"
    if j == 2:
        return [Pattern(w + last + other)]
    if j == 3:
        return [Pattern(w + other + last)]
    t = last_run(q)
    base = w[: len(w) - 2 * t]
    if t == 1:
        return [Pattern(base + other * 2 + last * 2)]
    return [
        Pattern(base + other * t + last * t1 + other + last * (t + 1 - t1))
        for t1 in range(t)
    ]


@dataclass(frozen=True)
class PatternIndex:
    r: int
    table: tuple[Pattern, ...]

    def index(self, p) -> int:
        """1-based position of a collectable pattern."""
        return self._positions()[_as_pattern(p)]

    def __getitem__(self, i: int) -> Pattern:
        return self.table[i - 1]

    def __len__(self) -> int:
        return len(self.table)

    def __iter__(self):
        return iter(self.table)

    def __contains__(self, p) -> bool:
        return _as_pattern(p) in self._positions()

    @property
    def gamma(self) -> int:
        return sum(maturity(p) for p in self.table)

    def maturities(self) -> tuple[int, ...]:
        return tuple(maturity(p) for p in self.table)

    def _positions(self) -> dict[Pattern, int]:
        return _positions(self.r)


@lru_cache(maxsize=None)
def collectable_index(r: int) -> PatternIndex:
    if r < 2:
        raise MatchingError("patterns need r >= 2")
    if r == 2:
        return PatternIndex(2, R_PARENTS)
    table = tuple(
        children(q, j)[0] for q in collectable_index(r - 1).table for j in (1, 2, 3)
    )
    return PatternIndex(r, table)


@lru_cache(maxsize=None)
def _positions(r: int) -> dict[Pattern, int]:
    return {p: i for i, p in enumerate(collectable_index(r).table, start=1)}


def gamma(r: int) -> int:
    """Total maturity of the collectable r-patterns."""
    return collectable_index(r).gamma


def big_brothers(r: int) -> list[Pattern]:
    if r < 3:
        raise MatchingError("big brothers exist for r >= 3 only")
    return [
        children(q, 1)[0]
        for q in collectable_index(r - 1).table
        if last_run(q) >= 2
    ]


def family(p) -> list[Pattern]:
    """The big brother ``p`` together with its siblings."""
    p = _as_pattern(p)
    q, rp = decompose(p)
    if rp != R_PARENTS[0] or not is_collectable(q) or last_run(q) < 2:
        raise MatchingError(f"{p} is not a big brother")
    kids = children(q, 1)
    if kids[0] != p:
        raise MatchingError(f"{p} is not a big brother")
    return kids


def canonical_clique(p, k: int) -> Matching:
    """The block-replacement P-clique of size ``k``.

    Every ``A^t B^t`` block becomes ``A_1^t ... A_k^t`` and every ``B^t A^t``
    block becomes ``A_k^t ... A_1^t``.
    """
    p = _as_pattern(p)
    s = split(p)
    if s is None:
        raise NotCollectableError(f"{p} is not collectable")
    if k < 1:
        raise ValueError("clique size must be positive")
    labels: list[int] = []
    for leader, t in s.blocks:
        order = range(k) if leader == "A" else range(k - 1, -1, -1)
        for i in order:
            labels.extend([i] * t)
    return _parse_symbols(labels, p.r)


def atlas(r: int) -> list[dict]:
    """One row per r-pattern: split, maturity, parents and index.

    Collectable patterns come in index order, each followed by its siblings;
    patterns with a non-collectable left parent are listed last.
    """
    idx = collectable_index(r)
    rows = []
    listed = set()

    def row(p: Pattern) -> dict:
        s = split(p)
        d = {
            "word": p.word,
            "collectable": s is not None,
            "split": str(s) if s is not None else None,
            "maturity": maturity(p) if s is not None else None,
            "r_partite": is_r_partite(p),
            "index": idx.index(p) if s is not None else None,
            "left_parent": None,
            "right_parent": None,
            "big_brother": False,
            "sibling_of": None,
        }
        if r >= 3:
            q, _ = decompose(p)
            d["left_parent"] = q.word
            d["right_parent"] = right_parent_word(p)
        return d

    bbs = set(big_brothers(r)) if r >= 3 else set()
    for p in idx.table:
        d = row(p)
        d["big_brother"] = p in bbs
        rows.append(d)
        listed.add(p)
        if p in bbs:
            for sib in family(p)[1:]:
                ds = row(sib)
                ds["sibling_of"] = p.word
                rows.append(ds)
                listed.add(sib)
    for p in enumerate_patterns(r):
        if p not in listed:
            rows.append(row(p))
    return rows


def table_rows(
    r: int, split_words: bool = True, mark_big_brothers: bool = True
) -> list[tuple[str, str, str]]:
    """(label, word, decomposition) rows laid out like the printed pattern tables.

    Collectable patterns are labelled ``P_i`` (big brothers get `` (bb)``),
    siblings ``P_i^*``, ``P_i^**``, ..., and patterns with a non-collectable
    left parent ``bar``.  With ``split_words`` collectable words are shown in
    block form such as ``|AABB|AB|BA|``.
    """
    if r < 3:
        raise MatchingError("tables start at r = 3")
    out = []
    for row in atlas(r):
        if row["index"] is not None:
            bb = mark_big_brothers and row["big_brother"]
            label = f"P_{row['index']}" + (" (bb)" if bb else "")
        elif row["sibling_of"] is not None:
            big = row["sibling_of"]
            stars = [p.word for p in family(big)].index(row["word"])
            label = f"P_{collectable_index(r).index(big)}^" + "*" * stars
        else:
            label = "bar"
        word = row["split"] if split_words and row["collectable"] else row["word"]
        out.append((label, word, f"({row['left_parent']},{row['right_parent']})"))
    return out

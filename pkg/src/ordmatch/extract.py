"""Constructive extraction of homogeneous sub-matchings.

Every public function returns an :class:`ExtractionResult` whose certificate
has already been re-validated with :func:`ordmatch.core.check_certificate`.
Thresholds are exact fractions throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .core import CliqueCertificate, Matching, Pattern, check_certificate, is_clique, pair_word
from .exact import is_clean
from .patterns import (
    R_PARENTS,
    collectable_index,
    family,
    last_run,
    maturity,
)
from .sequences import longest_decreasing, longest_increasing


class PreconditionError(ValueError):
    pass


class NotCleanError(PreconditionError):
    pass


class ExtractionError(RuntimeError):
    """A produced certificate failed its own validation (a bug, not bad input)."""


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


@dataclass(frozen=True)
class ParamVector:
    r: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(_frac(v) for v in self.values)
        if len(vals) != 3 ** (self.r - 1):
            raise PreconditionError(
                f"need {3 ** (self.r - 1)} parameters for r={self.r}, got {len(vals)}"
            )
        if any(v <= 0 for v in vals):
            raise PreconditionError("parameters must be positive")
        object.__setattr__(self, "values", vals)

    @property
    def product(self) -> Fraction:
        return prod(self.values, start=Fraction(1))

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i - 1]


@dataclass(frozen=True)
class ExtractionResult:
    pattern_index: int
    certificate: CliqueCertificate
    guarantee: Fraction

    @property
    def pattern(self) -> Pattern:
        return self.certificate.pattern

    @property
    def size(self) -> int:
        return self.certificate.size

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.word,
            "index": self.pattern_index,
            "edges": list(self.certificate.edge_indices),
            "size": self.size,
            "guarantee": str(self.guarantee),
        }


def _params(r: int, xs) -> ParamVector:
    if isinstance(xs, ParamVector):
        if xs.r != r:
            raise PreconditionError(f"parameter vector is for r={xs.r}, matching has r={r}")
        return xs
    return ParamVector(r, tuple(xs))


def _validated(m: Matching, res: ExtractionResult) -> ExtractionResult:
    if not check_certificate(m, res.certificate):
        raise ExtractionError(f"certificate {res.certificate} is not a clique")
    if not res.size > res.guarantee:
        raise ExtractionError(f"size {res.size} does not beat {res.guarantee}")
    return res


def drop_vertex(m: Matching, k: int) -> Matching:
    """Delete the ``k``-th vertex (0-based, may be negative) of every edge.

    Edge order is preserved as long as the first vertex survives.
    """
    cut = [e[:k] + e[k + 1 :] if k != -1 else e[:-1] for e in m.edges]
    verts = sorted(v for e in cut for v in e)
    rank = {v: i + 1 for i, v in enumerate(verts)}
    return Matching(m.r - 1, tuple(tuple(rank[v] for v in e) for e in cut))


def _last_pairs(m: Matching, indices: Sequence[int]) -> tuple[Matching, list[int]]:
    """2-matching of the last two vertices of the given edges, plus host indices."""
    pairs = sorted((m.edges[i][-2], m.edges[i][-1], i) for i in indices)
    verts = sorted(v for a, b, _ in pairs for v in (a, b))
    rank = {v: k + 1 for k, v in enumerate(verts)}
    sub = Matching(2, tuple((rank[a], rank[b]) for a, b, _ in pairs))
    return sub, [i for _, _, i in pairs]


def greedy_waves(m: Matching, landscape: Sequence[int]) -> list[list[int]]:
    """Cut a landscape into waves: each wave is its leftmost remaining edge
    plus every later edge whose left end lies strictly inside it."""
    es = m.edges
    waves = []
    i = 0
    while i < len(landscape):
        head = es[landscape[i]]
        j = i + 1
        while j < len(landscape) and es[landscape[j]][0] < head[1]:
            j += 1
        waves.append(list(landscape[i:j]))
        i = j
    return waves


def es_base2(m: Matching, x1, x2, x3) -> ExtractionResult:
    """A line of size > x1, a stack of size > x2 or a wave of size > x3.

    Requires ``n > x1*x2*x3``.  The stack branch is tried first; otherwise
    the longest increasing run of right ends is a landscape that is cut into
    waves greedily.
    """
    if m.r != 2:
        raise PreconditionError("es_base2 works on 2-matchings")
    x = (_frac(x1), _frac(x2), _frac(x3))
    if any(v <= 0 for v in x):
        raise PreconditionError("parameters must be positive")
    if not m.n > x[0] * x[1] * x[2]:
        raise PreconditionError(f"need n > {x[0] * x[1] * x[2]}, got n = {m.n}")

    rights = [e[1] for e in m.edges]
    stack = longest_decreasing(rights)
    if len(stack) > x[1]:
        return _validated(m, ExtractionResult(2, CliqueCertificate(R_PARENTS[1], tuple(stack)), x[1]))

    landscape = longest_increasing(rights)
    waves = greedy_waves(m, landscape)
    if len(waves) > x[0]:
        line = tuple(w[0] for w in waves)
        return _validated(m, ExtractionResult(1, CliqueCertificate(R_PARENTS[0], line), x[0]))
    best = max(waves, key=len)
    return _validated(m, ExtractionResult(3, CliqueCertificate(R_PARENTS[2], tuple(best)), x[2]))


def halve_family(m: Matching, indices: Sequence[int], big_brother) -> CliqueCertificate:
    """Keep every other edge (1st, 3rd, ...) of a family clique.

    Only consecutive edges of a family clique can form a sibling pattern, so
    the kept edges pairwise form the big brother.
    """
    bb = big_brother if isinstance(big_brother, Pattern) else Pattern(big_brother)
    allowed = {p.word for p in family(bb)}
    idx = sorted(indices)
    es = m.edges
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if pair_word(es[idx[a]], es[idx[b]]) not in allowed:
                raise PreconditionError(f"edges {idx[a]}, {idx[b]} are outside the {bb} family")
    cert = CliqueCertificate(bb, tuple(idx[::2]))
    if not check_certificate(m, cert):
        raise ExtractionError("halving a family clique did not produce a clique")
    return cert


def extract_clique(m: Matching, xs) -> ExtractionResult:
    """Find, for some i, a P_i-clique of size greater than ``x_i / 2**m(P_i)``.

    ``xs`` holds one positive rational per collectable pattern, in
    :func:`ordmatch.patterns.collectable_index` order, and ``n`` must exceed
    their product.
    """
    pv = _params(m.r, xs)
    if not m.n > pv.product:
        raise PreconditionError(f"need n > {pv.product}, got n = {m.n}")
    return _extract(m, pv.values)


def _extract(m: Matching, xs: Sequence[Fraction]) -> ExtractionResult:
    if m.r == 2:
        return es_base2(m, *xs)
    r = m.r
    ys = [xs[3 * i] * xs[3 * i + 1] * xs[3 * i + 2] for i in range(len(xs) // 3)]
    inner = _extract(drop_vertex(m, -1), ys)
    i = inner.pattern_index
    q = collectable_index(r - 1)[i]
    mq = maturity(q)

    m2, host = _last_pairs(m, inner.certificate.edge_indices)
    block = xs[3 * (i - 1) : 3 * i]
    base = es_base2(m2, block[0] / 2**mq, block[1], block[2])
    j = base.pattern_index
    chosen = [host[k] for k in base.certificate.edge_indices]

    pidx = 3 * (i - 1) + j
    p = collectable_index(r)[pidx]
    if j == 1 and last_run(q) >= 2 and not is_clique(m, p, chosen):
        # siblings only appear between neighbours; halving removes them
        cert = halve_family(m, chosen, p)
    else:
        cert = CliqueCertificate(p, tuple(sorted(chosen)))
    return _validated(m, ExtractionResult(pidx, cert, xs[pidx - 1] / 2 ** maturity(p)))


def extract_classic(m: Matching, a: Sequence[int]) -> ExtractionResult:
    """Integer form: ``n >= prod(a) + 1`` gives a P_i-clique of size > a_i / 2**m(P_i)."""
    if any(int(v) != v or v < 1 for v in a):
        raise PreconditionError("integer parameters must be positive integers")
    return extract_clique(m, [Fraction(int(v)) for v in a])


def extract_clean(m: Matching, a: Sequence[int]) -> ExtractionResult:
    """In a clean matching with ``n >= prod(a) + 1``, a P_i-clique of size >= a_i + 1."""
    if len(a) != 3 ** (m.r - 1):
        raise PreconditionError(f"need {3 ** (m.r - 1)} parameters for r={m.r}")
    if any(int(v) != v or v < 1 for v in a):
        raise PreconditionError("parameters must be positive integers")
    a = [int(v) for v in a]
    if not is_clean(m):
        raise NotCleanError("matching is not clean: some pair forms a non-collectable pattern")
    if m.n < prod(a) + 1:
        raise PreconditionError(f"need n >= {prod(a) + 1}, got n = {m.n}")
    return _clean(m, a)


def _clean(m: Matching, a: Sequence[int]) -> ExtractionResult:
    if m.r == 2:
        res = es_base2(m, *a)
        return ExtractionResult(res.pattern_index, res.certificate, Fraction(a[res.pattern_index - 1]))
    r = m.r
    m1 = drop_vertex(m, -1)
    assert is_clean(m1), "dropping last vertices of a clean matching must keep it clean"
    ys = [a[3 * i] * a[3 * i + 1] * a[3 * i + 2] for i in range(len(a) // 3)]
    inner = _clean(m1, ys)
    i = inner.pattern_index
    m2, host = _last_pairs(m, inner.certificate.edge_indices)
    base = es_base2(m2, *a[3 * (i - 1) : 3 * i])
    pidx = 3 * (i - 1) + base.pattern_index
    chosen = tuple(sorted(host[k] for k in base.certificate.edge_indices))
    cert = CliqueCertificate(collectable_index(r)[pidx], chosen)
    return _validated(m, ExtractionResult(pidx, cert, Fraction(a[pidx - 1])))


def _covers(e: Sequence[int], v: int) -> bool:
    return e[0] < v < e[-1]


def side_classes(m: Matching, indices: Sequence[int]) -> tuple[list[int], list[int]]:
    """Split edges by where their middle vertex sits relative to the edges
    that do not cover it: entirely to the left, or entirely to the right.

    Intended for 3-matchings whose extreme vertices pairwise nest or pairwise
    cross; then the non-covering edges of any vertex lie on one side of it.
    An edge whose middle vertex is covered by every edge goes left.
    """
    es = m.edges
    left, right = [], []
    for i in indices:
        v = es[i][1]
        outside = [es[j] for j in indices if not _covers(es[j], v)]
        if all(v < f[0] for f in outside):
            left.append(i)
        elif all(v > f[-1] for f in outside):
            right.append(i)
        else:
            raise ExtractionError(f"middle vertex of edge {i} has non-covering edges on both sides")
    return left, right


def extract3_improved(m: Matching, a: Sequence[int]) -> ExtractionResult:
    """For r = 3 and ``n >= a1(a2+a4)a6a8(a3+a7)a5a9 + 1``, a P_i-clique of size a_i + 1.

    The middle vertex of every edge is dropped and the resulting 2-matching
    is searched for a line, stack or wave.  A stack (wave) is then split into
    left and right edges, each of which is clean with only three possible
    patterns, and finished by the clean extractor.
    """
    if m.r != 3:
        raise PreconditionError("extract3_improved works on 3-matchings")
    if len(a) != 9 or any(int(v) != v or v < 1 for v in a):
        raise PreconditionError("need nine positive integers")
    a1, a2, a3, a4, a5, a6, a7, a8, a9 = (int(v) for v in a)
    s = (a2 + a4) * a6 * a8
    w = (a3 + a7) * a5 * a9
    if m.n < a1 * s * w + 1:
        raise PreconditionError(f"need n >= {a1 * s * w + 1}, got n = {m.n}")

    outer = es_base2(drop_vertex(m, 1), a1, s, w)
    j = outer.pattern_index
    idx = list(outer.certificate.edge_indices)
    table = collectable_index(3)
    if j == 1:
        cert = CliqueCertificate(table[1], tuple(idx))
        return _validated(m, ExtractionResult(1, cert, Fraction(a1)))

    left, right = side_classes(m, idx)
    if j == 2:
        options = [(left, (2, 6, 8)), (right, (4, 6, 8))]
    else:
        options = [(left, (3, 5, 9)), (right, (7, 5, 9))]
    for part, keep in options:
        need = prod(a[k - 1] for k in keep) + 1
        if len(part) >= need:
            break
    else:
        raise ExtractionError("neither side class is large enough")

    sub, host = m.submatching(part)
    vec = [a[k - 1] if k in keep else 1 for k in range(1, 10)]
    res = extract_clean(sub, vec)
    i = res.pattern_index
    cert = CliqueCertificate(res.pattern, tuple(host[k] for k in res.certificate.edge_indices))
    return _validated(m, ExtractionResult(i, cert, Fraction(a[i - 1])))

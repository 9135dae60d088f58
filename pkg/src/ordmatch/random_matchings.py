"""Uniform random matchings, counting formulas and Monte-Carlo experiments.

Randomness comes from numpy's PCG64 generator.  Trial ``i`` at size ``n`` of
an experiment with seed ``s`` uses ``default_rng([s, n, i])``, so any subset
of trials can be rerun on its own and gives the same numbers.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

import numpy as np
from scipy import stats

from .core import CliqueCertificate, Matching, MatchingError, Pattern, is_clique, pair_word
from .exact import max_clique_any
from .patterns import canonical_clique, is_collectable

log = logging.getLogger(__name__)

METHODS = ("exact", "template", "short_edge")


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _as_matching(r: int, arr: np.ndarray) -> Matching:
    # rows are sorted edges, rows ordered by first vertex: already canonical
    return Matching._unchecked(r, tuple(tuple(int(v) for v in row) for row in arr))


def _perm_array(r: int, n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.permutation(r * n).reshape(n, r) + 1
    a.sort(axis=1)
    return a[np.argsort(a[:, 0], kind="stable")]


def sample_permutational(r: int, n: int, seed=None) -> Matching:
    """Shuffle 1..rn and cut the result into consecutive r-blocks."""
    if r < 2 or n < 1:
        raise MatchingError("need r >= 2 and n >= 1")
    return _as_matching(r, _perm_array(r, n, _rng(seed)))


def sample_online(r: int, n: int, seed=None) -> Matching:
    """Match the first uncovered vertex with a uniform (r-1)-set of the others."""
    if r < 2 or n < 1:
        raise MatchingError("need r >= 2 and n >= 1")
    rng = _rng(seed)
    total = r * n
    pool = list(range(1, total + 1))
    where = {v: v - 1 for v in pool}
    covered = [False] * (total + 2)

    def take(pos: int) -> int:
        v = pool[pos]
        last = pool.pop()
        if pos < len(pool):
            pool[pos] = last
            where[last] = pos
        return v

    edges = []
    first = 1
    for _ in range(n):
        while covered[first]:
            first += 1
        take(where[first])
        edge = [first]
        for _ in range(r - 1):
            edge.append(take(int(rng.integers(len(pool)))))
        for v in edge:
            covered[v] = True
        edges.append(tuple(sorted(edge)))
    return Matching._unchecked(r, tuple(edges))


def alpha(r: int, n: int) -> int:
    """Number of r-matchings of size n."""
    if r < 2 or n < 0:
        raise MatchingError("need r >= 2 and n >= 0")
    return factorial(r * n) // (factorial(r) ** n * factorial(n))


def f_count(r: int, s: int, n: int, m: int) -> int:
    """Number of s-subsets of [rn] whose largest minus smallest element is at most m."""
    if s < 2 or not s - 1 <= m <= r * n - 1:
        raise ValueError(f"need 2 <= s and s-1 <= m <= rn-1, got s={s}, m={m}, rn={r * n}")
    return r * n * comb(m, s - 1) - (s - 1) * comb(m + 1, s)


def expected_cliques(r: int, n: int, k: int, pattern=None) -> Fraction:
    """Expected number of P-cliques of size k in a uniform random r-matching.

    The value is the same for every collectable P.
    """
    if pattern is not None:
        p = pattern if isinstance(pattern, Pattern) else Pattern(pattern)
        if p.r != r or not is_collectable(p):
            raise MatchingError(f"{p} is not a collectable {r}-pattern")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return Fraction(comb(r * n, r * k) * alpha(r, n - k), alpha(r, n))


def upper_bound_constant(r: int) -> float:
    """e (r!)^(1/r) / r: above c n^(1/r) with c larger than this, cliques vanish a.a.s."""
    return math.e * factorial(r) ** (1 / r) / r


def _no_overlap_line(edges: Sequence[Sequence[int]], indices: list[int]) -> list[int]:
    alive = set(indices)
    while True:
        deg = {i: 0 for i in alive}
        srt = sorted(alive, key=lambda i: edges[i][0])
        for a, i in enumerate(srt):
            for j in srt[a + 1 :]:
                if edges[j][0] > edges[i][-1]:
                    break
                deg[i] += 1
                deg[j] += 1
        worst = max(alive, key=lambda i: (deg[i], edges[i][0]), default=None)
        if worst is None or deg[worst] == 0:
            return sorted(alive)
        alive.discard(worst)


def short_edge_line(m: Matching, m_len: int) -> CliqueCertificate:
    """A line among the edges of length at most ``m_len``.

    While two kept edges overlap, drop the edge in the most overlaps
    (ties: the one starting later).
    """
    es = m.edges
    short = [i for i, e in enumerate(es) if e[-1] - e[0] <= m_len]
    line = Pattern("A" * m.r + "B" * m.r)
    return CliqueCertificate(line, tuple(_no_overlap_line(es, short)))


def _template_indices(edges: np.ndarray, p: Pattern, k: int, t: int) -> list[int]:
    r = p.r
    base = r * k
    weights = base ** np.arange(r, dtype=np.int64)
    template = np.array(canonical_clique(p, k).edges, dtype=np.int64) - 1
    want = template @ weights
    blocks = (edges - 1) // t
    inside = blocks[:, -1] < base
    codes = np.where(inside, blocks @ weights, -1)
    hit = np.flatnonzero(np.isin(codes, want))
    # rows are ordered by left end, so the first hit per code is the leftmost
    _, first = np.unique(codes[hit], return_index=True)
    return sorted(int(i) for i in hit[first])


def template_clique(m: Matching, p, k: int, t: int) -> CliqueCertificate:
    """Edges of ``m`` spanning the blown-up edges of a template P-clique.

    [rn] is cut into blocks of width ``t``; the first r*k blocks stand for
    the vertices of canonical_clique(p, k).  For each template edge the
    spanning edge of ``m`` with the smallest left end is kept.
    """
    p = p if isinstance(p, Pattern) else Pattern(p)
    if p.r != m.r:
        raise MatchingError(f"{p} does not have uniformity {m.r}")
    if not is_collectable(p):
        raise MatchingError(f"{p} is not collectable")
    if k < 1 or t < 1 or k * t > m.n:
        raise ValueError(f"blocks do not fit: r*k*t = {m.r * k * t} > rn = {m.r * m.n}")
    arr = np.array(m.edges, dtype=np.int64).reshape(m.n, m.r)
    return CliqueCertificate(p, tuple(_template_indices(arr, p, k, t)))


def template_geometry(r: int, n: int) -> tuple[int, int]:
    """(k, t) with k close to n^(1/r) and k*t <= n."""
    k = max(1, round(n ** (1 / r)))
    return k, n // k


@dataclass
class ExperimentReport:
    r: int
    pattern: str
    method: str
    trials: int
    seed: int
    n_grid: list[int]
    sizes: dict[int, list[int]]
    means: dict[int, float] = field(default_factory=dict)
    stds: dict[int, float] = field(default_factory=dict)
    slope: float = float("nan")
    slope_ci: tuple[float, float] = (float("nan"), float("nan"))
    bound_violations: int = 0

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "pattern": self.pattern,
            "method": self.method,
            "trials": self.trials,
            "seed": self.seed,
            "n_grid": self.n_grid,
            "means": {str(n): self.means[n] for n in self.n_grid},
            "stds": {str(n): self.stds[n] for n in self.n_grid},
            "slope": self.slope,
            "slope_ci": list(self.slope_ci),
            "bound_violations": self.bound_violations,
            "sizes": {str(n): self.sizes[n] for n in self.n_grid},
        }

    def to_csv(self) -> str:
        rows = ["n,trial,size"]
        for n in self.n_grid:
            rows += [f"{n},{i},{s}" for i, s in enumerate(self.sizes[n])]
        return "\n".join(rows) + "\n"


def _edges_clique(edges: np.ndarray, p: Pattern, idx: Sequence[int]) -> bool:
    rows = [tuple(int(v) for v in edges[i]) for i in idx]
    return all(pair_word(rows[a], rows[b]) == p.word for a in range(len(rows)) for b in range(a + 1, len(rows)))


def trial_size(r: int, n: int, p: Pattern, method: str, rng: np.random.Generator) -> int:
    """One random matching, one validated clique; returns its size."""
    arr = _perm_array(r, n, rng)
    if method == "template":
        k, t = template_geometry(r, n)
        idx = _template_indices(arr, p, k, t)
        ok = _edges_clique(arr, p, idx)
    else:
        m = _as_matching(r, arr)
        if method == "exact":
            cert = max_clique_any(m, p)
        elif method == "short_edge":
            if p.word != "A" * r + "B" * r:
                raise ValueError("the short-edge method finds lines only")
            cert = short_edge_line(m, math.ceil(n ** (1 - 1 / r)))
        else:
            raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
        idx = cert.edge_indices
        ok = is_clique(m, p, idx)
    if not ok:
        raise RuntimeError(f"{method} produced an invalid certificate")
    return len(idx)


def run_experiment(
    r: int,
    pattern,
    n_grid: Sequence[int],
    trials: int,
    seed: int,
    method: str = "exact",
    workers: int = 1,
) -> ExperimentReport:
    """Clique sizes in random matchings over a grid of n, with a log-log fit."""
    p = pattern if isinstance(pattern, Pattern) else Pattern(pattern)
    if p.r != r:
        raise MatchingError(f"{p} does not have uniformity {r}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    grid = sorted(int(n) for n in n_grid)
    jobs = [(n, i) for n in grid for i in range(trials)]

    def one(job):
        n, i = job
        return trial_size(r, n, p, method, np.random.default_rng([seed, n, i]))

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(workers) as ex:
            out = list(ex.map(one, jobs))
    else:
        out = [one(j) for j in jobs]

    sizes = {n: out[a * trials : (a + 1) * trials] for a, n in enumerate(grid)}
    rep = ExperimentReport(r, p.word, method, trials, seed, grid, sizes)
    c = upper_bound_constant(r)
    for n in grid:
        arr = np.asarray(sizes[n], dtype=float)
        rep.means[n] = float(arr.mean())
        rep.stds[n] = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
        cap = 1.5 * c * n ** (1 / r)
        over = int((arr > cap).sum())
        if over:
            log.warning("n=%d: %d trials exceed %.2f", n, over, cap)
        rep.bound_violations += over
    if len(grid) >= 2 and all(rep.means[n] > 0 for n in grid):
        x = np.log(grid)
        y = np.log([rep.means[n] for n in grid])
        fit = stats.linregress(x, y)
        rep.slope = float(fit.slope)
        if len(grid) > 2:
            q = stats.t.ppf(0.975, len(grid) - 2)
            rep.slope_ci = (float(fit.slope - q * fit.stderr), float(fit.slope + q * fit.stderr))
        else:
            rep.slope_ci = (rep.slope, rep.slope)
    return rep

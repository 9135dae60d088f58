"""Self-check suites run by ``ordmatch verify``.

Each suite returns a :class:`SuiteResult`; a suite passes only if every
check inside it holds exactly (or, for the statistical suites, within the
stated tolerance).
"""

from __future__ import annotations

import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations, product

import numpy as np
from scipy import stats

from .constructions import blow_up, chain, layered_construction, lsw, p1star_chain
from .core import CliqueCertificate, check_certificate, parse_word, pattern_of_pair, to_word
from .exact import (
    all_matchings,
    base2_outcomes,
    census,
    count_matchings,
    max_clique,
    max_clique_any,
)
from .extract import ParamVector, extract_clique
from .patterns import (
    R_PARENTS,
    big_brothers,
    canonical_clique,
    collectable_index,
    enumerate_patterns,
    gamma,
    is_collectable,
    is_r_partite,
    maturity,
    table_rows,
)
from .random_matchings import (
    alpha,
    expected_cliques,
    f_count,
    run_experiment,
    sample_online,
    sample_permutational,
)

# The reference blow-up of ABACCBABC by XYZYZXZXY, with the middle block of
# copy B read as HIG (the published word has IHG, which is
# not a copy of N); see the README.
FIG7_BLOWUP = "DEFGHIEFDJKLKLJHIGFDEIGHLJK"


@dataclass
class SuiteResult:
    name: str
    ok: bool
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"suite": self.name, "ok": self.ok, "seconds": round(self.seconds, 3), "details": self.details}


def reference_table(name: str) -> list[str]:
    text = resources.files("ordmatch").joinpath("data", f"{name}.tsv").read_text()
    return text.splitlines()


def suite_censuses() -> dict:
    rs = range(2, 6)
    got = {
        "patterns": [len(enumerate_patterns(r)) for r in rs],
        "collectable": [sum(is_collectable(p) for p in enumerate_patterns(r)) for r in rs],
        "r_partite": [sum(is_r_partite(p) for p in enumerate_patterns(r)) for r in rs],
        "big_brothers": [len(big_brothers(r)) for r in range(3, 6)],
        "gamma": [gamma(r) for r in rs],
    }
    want = {
        "patterns": [3, 10, 35, 126],
        "collectable": [3, 9, 27, 81],
        "r_partite": [2, 4, 8, 16],
        "big_brothers": [1, 3, 9],
        "gamma": [0, 1, 4, 13],
    }
    return {"ok": got == want, "got": got}


def suite_tables() -> dict:
    t1 = ["\t".join(r) for r in table_rows(3, split_words=False, mark_big_brothers=False)]
    t2 = ["\t".join(r) for r in table_rows(4)]
    ok1 = t1 == reference_table("table1")
    ok2 = t2 == reference_table("table2")
    return {"ok": ok1 and ok2, "table1": ok1, "table2": ok2}


def suite_prop21() -> dict:
    bad = []
    hosts = {}
    for r in (3, 4):
        count = 0
        for m in all_matchings(r, 3):
            count += 1
            words = {pattern_of_pair(m, i, j) for i, j in combinations(range(3), 2)}
            if len(words) == 1 and not is_collectable(next(iter(words))):
                bad.append(to_word(m))
        hosts[r] = count
        for p in enumerate_patterns(r):
            if is_collectable(p):
                k = canonical_clique(p, 3)
                if not check_certificate(k, CliqueCertificate(p, (0, 1, 2))):
                    bad.append(p.word)
    return {"ok": not bad and hosts == {3: 280, 4: 5775}, "hosts": hosts, "violations": bad}


def suite_theorem1() -> dict:
    runs = {}
    ok = True
    for l, s, w in product((1, 2, 3), repeat=3):
        if l * s * w > 8:
            continue
        out = base2_outcomes(l * s * w + 1, l, s, w)
        sharp = lsw(l, s, w)
        maxima = [max_clique_any(sharp, p).size for p in R_PARENTS]
        good = out["failed"] == 0 and maxima == [l, s, w]
        ok &= good
        runs[f"{l},{s},{w}"] = {"outcomes": out, "maxima": maxima, "ok": good}
    return {"ok": ok, "runs": runs}


def random_params(r: int, n: int, rng: random.Random) -> ParamVector:
    """Positive rationals with product below ``n``."""
    k = 3 ** (r - 1)
    while True:
        w = [rng.random() for _ in range(k)]
        total = sum(w)
        budget = math.log(n) * rng.uniform(0.2, 0.999)
        xs = [Fraction(math.exp(budget * x / total)).limit_denominator(64) for x in w]
        pv = ParamVector(r, tuple(xs))
        if pv.product < n:
            return pv


def _hosts(r: int, rng: random.Random):
    while True:
        n = rng.randint(2, {2: 60, 3: 40, 4: 30}[r])
        yield sample_permutational(r, n, rng.getrandbits(63))


def suite_extract(count: int = 10_000, seed: int = 0) -> dict:
    rng = random.Random(seed)
    failures = []
    per_r = Counter()
    streams = {r: _hosts(r, rng) for r in (2, 3, 4)}
    adversarial = [lsw(2, 2, 2), lsw(3, 2, 1), p1star_chain(9), chain("AABBAB", 9), chain("ABAABB", 9)]
    adversarial += [canonical_clique(p, 5) for p in collectable_index(3)]
    for t in range(count):
        if t < len(adversarial):
            m = adversarial[t]
        else:
            m = next(streams[(2, 3, 4)[t % 3]])
        pv = random_params(m.r, m.n, rng)
        try:
            res = extract_clique(m, pv)
            good = check_certificate(m, res.certificate) and res.size > res.guarantee
            good &= res.guarantee == pv[res.pattern_index] / 2 ** maturity(res.pattern)
        except Exception as exc:  # noqa: BLE001 - every failure is reported
            good = False
            res = exc
        per_r[m.r] += 1
        if not good:
            failures.append({"host": to_word(m, sep=" "), "params": [str(x) for x in pv.values], "result": str(res)})
    return {"ok": not failures, "hosts": dict(per_r), "failures": failures[:5]}


def suite_diagonal() -> dict:
    missing = 0
    total = 0
    for m in all_matchings(3, 4):
        total += 1
        if not any(is_collectable(p) for p in census(m)):
            missing += 1
    return {"ok": missing == 0 and total == 15400, "matchings": total, "without_collectable_pair": missing}


def suite_counting() -> dict:
    bad = []
    checked = 0
    for r in range(2, 13):
        for n in range(1, 12 // r + 1):
            rn = r * n
            for s in range(2, rn + 1):
                spans = Counter(c[-1] - c[0] for c in combinations(range(rn), s))
                running = 0
                for m in range(s - 1, rn):
                    running += spans.get(m, 0)
                    checked += 1
                    if f_count(r, s, n, m) != running:
                        bad.append((r, s, n, m))
    means = {}
    for r, n in ((2, 3), (3, 4)):
        totals = Counter()
        count = 0
        for m in all_matchings(r, n):
            count += 1
            totals.update(census(m))
        for p in collectable_index(r):
            got = Fraction(totals[p], count)
            want = expected_cliques(r, n, 2, p)
            means[f"{r},{n},{p.word}"] = str(got)
            if got != want:
                bad.append((r, n, p.word))
    ok = not bad and expected_cliques(2, 3, 2) == 1 and alpha(3, 4) == 15400
    return {"ok": ok, "f_checked": checked, "mismatches": bad[:5], "census_means": means}


def _frequencies(sampler, r: int, n: int, draws: int, seed: int, index: dict) -> np.ndarray:
    rng = np.random.default_rng(seed)
    freq = np.zeros(len(index), dtype=np.int64)
    for _ in range(draws):
        freq[index[sampler(r, n, rng).edges]] += 1
    return freq


def suite_samplers(draws: int = 30_000, seed: int = 2024, level: float = 1e-3) -> dict:
    out = {}
    ok = True
    for r, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
        index = {m.edges: i for i, m in enumerate(all_matchings(r, n))}
        assert len(index) == count_matchings(r, n)
        f_perm = _frequencies(sample_permutational, r, n, draws, seed, index)
        f_onl = _frequencies(sample_online, r, n, draws, seed + 1, index)
        p_perm = stats.chisquare(f_perm).pvalue
        p_onl = stats.chisquare(f_onl).pvalue
        p_two = stats.chi2_contingency(np.vstack([f_perm, f_onl])).pvalue
        good = bool(min(p_perm, p_onl, p_two) > level)
        ok &= good
        out[f"{r},{n}"] = {"perm": float(p_perm), "online": float(p_onl), "two_sample": float(p_two), "ok": good}
    return {"ok": ok, "pvalues": out}


def suite_scaling(trials: int = 200, seed: int = 7) -> dict:
    grid = [50, 100, 200, 400]
    out = {}
    ok = True
    targets = {
        "AABB": 2 * math.sqrt(400 / math.pi),
        "ABBA": math.sqrt(800),
        "ABAB": math.sqrt(800),
    }
    for p, target in targets.items():
        rep = run_experiment(2, p, grid, trials, seed, "exact")
        rel = abs(rep.means[400] - target) / target
        good = bool(abs(rep.slope - 0.5) <= 0.1 and rel <= 0.15)
        ok &= good
        out[p] = {"slope": rep.slope, "mean_400": rep.means[400], "target": target, "rel_err": rel, "ok": good}
    rep = run_experiment(3, "ABABAB", [1000, 10_000, 100_000], trials, seed, "template")
    good = bool(abs(rep.slope - 1 / 3) <= 0.1)
    ok &= good
    out["template_r3"] = {"slope": rep.slope, "means": rep.means, "ok": good}
    return {"ok": ok, "runs": out}


def suite_blowup(seed: int = 11) -> dict:
    m = parse_word("ABACCBABC")
    n = parse_word("XYZYZXZXY")
    fig = to_word(blow_up(m, n)) == to_word(parse_word(FIG7_BLOWUP))
    rng = random.Random(seed)
    mult = True
    for _ in range(100):
        r = rng.randint(2, 4)
        a = sample_permutational(r, rng.randint(1, 6), rng.getrandbits(63))
        b = sample_permutational(r, rng.randint(1, 6), rng.getrandbits(63))
        mult &= blow_up(a, b).n == a.n * b.n
    table = collectable_index(3)
    layered = layered_construction(3, [(table[i], 2) for i in (1, 2, 5, 6, 8, 9)])
    maxima = {table[i].word: max_clique(layered, table[i]).size for i in (1, 2, 5, 6, 8, 9)}
    lay_ok = layered.n == 64 and all(v == 2 for v in maxima.values())
    return {"ok": fig and mult and lay_ok, "fig7": fig, "multiplicative": mult, "layered_maxima": maxima}


def p3_chain_word(n: int) -> list[int]:
    """Labels of the displayed P_3-chain word."""
    labels = [1, 1, 2, 2, 1]
    for i in range(3, n + 1):
        labels += [i, i, i - 1]
    return labels + [n]


def suite_chains() -> dict:
    p3 = collectable_index(3)[3]
    words = {}
    ok = True
    for n in range(3, 9):
        good = to_word(chain(p3, n)) == to_word(parse_word(p3_chain_word(n)))
        words[n] = good
        ok &= good
    stars = {}
    for n in (4, 5, 6):
        m = p1star_chain(n)
        support = sorted(p.word for p in census(m))
        line = max_clique(m, "AAABBB").size
        good = support == ["AAABBB", "AABABB"] and line == math.ceil(n / 2)
        stars[n] = {"support": support, "max_line": line, "ok": good}
        ok &= good
    return {"ok": ok, "p3_chain": words, "p1star_chain": stars}


SUITES = {
    "censuses": suite_censuses,
    "tables": suite_tables,
    "prop21": suite_prop21,
    "theorem1": suite_theorem1,
    "extract": suite_extract,
    "diagonal": suite_diagonal,
    "counting": suite_counting,
    "samplers": suite_samplers,
    "scaling": suite_scaling,
    "blowup": suite_blowup,
    "chains": suite_chains,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    details = SUITES[name](**kwargs)
    ok = bool(details.pop("ok"))
    return SuiteResult(name, ok, time.perf_counter() - start, details)

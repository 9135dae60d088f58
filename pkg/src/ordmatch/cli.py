"""Command-line interface: ``ordmatch <subcommand> ...``.

JSON goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when a verification fails, 2 on usage or input errors and 3 when a size
guard is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import constructions as con
from .core import CliqueCertificate, Matching, MatchingError, Pattern, load_matching, to_word
from .exact import (
    GuardExceeded,
    all_matchings,
    base2_outcomes,
    census,
    count_matchings,
    max_clique_any,
)
from .extract import (
    ExtractionError,
    PreconditionError,
    extract3_improved,
    extract_clean,
    extract_clique,
)
from .patterns import atlas, big_brothers, collectable_index, enumerate_patterns, is_collectable, is_r_partite
from .random_matchings import METHODS, run_experiment, sample_online, sample_permutational
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj, fmt: str = "json") -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
        return
    rows = obj if isinstance(obj, list) else [obj]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            print("  ".join(f"{k}={v}" for k, v in row.items()))


def _read_input(source: str) -> Matching:
    if source == "-":
        source = sys.stdin.read()
    return load_matching(source.strip())


def _cert_json(c: CliqueCertificate) -> dict:
    return c.to_json()


def cmd_patterns(a) -> int:
    if a.atlas or a.big_brothers:
        rows = atlas(a.r)
        if a.big_brothers:
            keep = {p.word for p in big_brothers(a.r)}
            rows = [row for row in rows if row["word"] in keep]
    else:
        pats = enumerate_patterns(a.r)
        if a.collectable:
            pats = list(collectable_index(a.r))
        if a.partite:
            pats = [p for p in pats if is_r_partite(p)]
        index = {row["word"]: row for row in atlas(a.r)}
        rows = [index[p.word] for p in pats]
    _emit(rows, a.format)
    return EXIT_OK


def cmd_analyze(a) -> int:
    m = _read_input(a.input)
    out: dict = {"r": m.r, "n": m.n, "word": to_word(m)}
    if a.pattern:
        p = Pattern.of(a.pattern)
        c = max_clique_any(m, p)
        out.update(pattern=p.word, size=c.size, edges=list(c.edge_indices))
    if a.all:
        out["maxima"] = {p.word: _cert_json(c) for p, c in _maxima(m).items()}
    if a.census:
        out["census"] = {p.word: n for p, n in sorted(census(m).items())}
    if not (a.pattern or a.all or a.census):
        raise UsageError("choose --pattern WORD, --all or --census")
    _emit(out, a.format)
    return EXIT_OK


def _maxima(m: Matching) -> dict:
    return {p: max_clique_any(m, p) for p in enumerate_patterns(m.r)}


def _parse_params(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad parameter list {text!r}: {exc}") from exc


def cmd_extract(a) -> int:
    m = _read_input(a.input)
    xs = _parse_params(a.params)
    if a.improved3:
        res = extract3_improved(m, xs)
    elif a.clean:
        res = extract_clean(m, xs)
    else:
        res = extract_clique(m, xs)
    _emit(res.to_json(), a.format)
    return EXIT_OK


def cmd_enumerate(a) -> int:
    check = a.check
    out: dict = {"r": a.r, "n": a.n, "check": check}
    if check == "count":
        got = sum(1 for _ in all_matchings(a.r, a.n))
        out.update(count=got, expected=count_matchings(a.r, a.n))
        ok = got == out["expected"]
    elif check == "collectable-pair":
        bad = [to_word(m) for m in all_matchings(a.r, a.n) if not any(is_collectable(p) for p in census(m))]
        out.update(violations=bad[:10], violation_count=len(bad))
        ok = not bad
    elif check == "unsplittable-cliques":
        bad = []
        for m in all_matchings(a.r, a.n):
            support = census(m)
            if len(support) == 1 and a.n >= 3 and not is_collectable(next(iter(support))):
                bad.append(to_word(m))
        out.update(violations=bad[:10], violation_count=len(bad))
        ok = not bad
    elif check == "base2":
        if a.r != 2 or not a.params:
            raise UsageError("--check base2 needs --r 2 and --params l,s,w")
        l, s, w = (int(x) for x in _parse_params(a.params))
        counts = base2_outcomes(a.n, l, s, w)
        out.update(outcomes=counts, precondition=a.n > l * s * w)
        ok = counts["failed"] == 0 or not out["precondition"]
    else:
        raise UsageError(f"unknown check {check!r}")
    out["ok"] = ok
    _emit(out, a.format)
    return EXIT_OK if ok else EXIT_FAIL


def _spec(text: str) -> list[tuple[str, int]]:
    out = []
    for item in text.split(","):
        word, _, k = item.partition(":")
        if not k:
            raise UsageError(f"layer {item!r} must look like WORD:SIZE")
        out.append((word.strip(), int(k)))
    return out


def cmd_construct(a) -> int:
    kind = a.kind
    if kind == "blowup":
        if not (a.outer and a.inner):
            raise UsageError("blowup needs --outer and --inner")
        outer, inner = _read_input(a.outer), _read_input(a.inner)
        m = con.blow_up(outer, inner)
        extra = {"m_inheritable": con.inheritance_check(outer, inner)} if a.validate else {}
    elif kind == "chain":
        if not (a.pattern and a.n):
            raise UsageError("chain needs --pattern and --n")
        m = con.chain(a.pattern, a.n)
        extra = {"is_chain": con.is_chain(m, a.pattern)} if a.validate else {}
    elif kind == "p1star":
        if not a.n:
            raise UsageError("p1star needs --n")
        m = con.p1star_chain(a.n)
        extra = {"census": con.chain_census(m)} if a.validate else {}
    elif kind == "layered":
        if not (a.r and a.spec):
            raise UsageError("layered needs --r and --spec WORD:SIZE,...")
        spec = _spec(a.spec)
        m = con.layered_construction(a.r, spec, validate=a.validate)
        extra = {"validated": True} if a.validate else {}
    else:
        raise UsageError(f"unknown construction {kind!r}")
    _emit({"r": m.r, "n": m.n, "word": to_word(m, sep=None if m.n <= 52 else " "), **extra}, a.format)
    return EXIT_OK


def cmd_sample(a) -> int:
    sampler = sample_permutational if a.scheme == "perm" else sample_online
    m = sampler(a.r, a.n, a.seed)
    _emit({"r": m.r, "n": m.n, "seed": a.seed, "scheme": a.scheme, "word": to_word(m), "edges": [list(e) for e in m.edges]}, a.format)
    return EXIT_OK


def cmd_experiment(a) -> int:
    p = Pattern.of(a.pattern)
    grid = [int(x) for x in a.grid.split(",") if x.strip()]
    rep = run_experiment(p.r, p, grid, a.trials, a.seed, a.method, workers=a.workers)
    data = rep.to_json()
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(data, fh, indent=2)
    if a.csv:
        with open(a.csv, "w") as fh:
            fh.write(rep.to_csv())
    summary = {k: v for k, v in data.items() if k != "sizes"}
    _emit(summary, a.format)
    return EXIT_OK


def cmd_verify(a) -> int:
    names = list(SUITES) if a.suite == "all" else [a.suite]
    results = []
    for name in names:
        res = run_suite(name)
        print(f"{'PASS' if res.ok else 'FAIL'} {name} ({res.seconds:.1f}s)", file=sys.stderr)
        results.append(res.to_json())
    _emit(results if len(results) > 1 else results[0], "json")
    return EXIT_OK if all(r["ok"] for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--guard-enum", type=int, default=argparse.SUPPRESS, help="maximum number of matchings to enumerate")
    common.add_argument("--guard-clique", type=int, default=argparse.SUPPRESS, help="maximum size for the exact clique search")
    parser = argparse.ArgumentParser(
        prog="ordmatch", description="Erdős–Szekeres tools for ordered matchings.", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("patterns", help="list r-patterns with their algebra")
    p.add_argument("--r", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--collectable", action="store_true")
    g.add_argument("--partite", action="store_true")
    g.add_argument("--big-brothers", action="store_true")
    g.add_argument("--atlas", action="store_true")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("analyze", help="maximum cliques and pattern census of a matching")
    p.add_argument("--input", required=True, help="word, JSON, file path, or - for stdin")
    p.add_argument("--pattern")
    p.add_argument("--all", action="store_true")
    p.add_argument("--census", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("extract", help="run a constructive extraction")
    p.add_argument("--input", required=True)
    p.add_argument("--params", required=True, help="comma-separated x_1,...; fractions like 5/2 allowed")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--clean", action="store_true")
    g.add_argument("--improved3", action="store_true")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("enumerate", help="exhaustive checks over all matchings of a size")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", required=True, choices=("count", "collectable-pair", "unsplittable-cliques", "base2"))
    p.add_argument("--params", help="l,s,w for --check base2")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", help="build extremal matchings")
    p.add_argument("kind", choices=("blowup", "chain", "layered", "p1star"))
    p.add_argument("--outer")
    p.add_argument("--inner")
    p.add_argument("--pattern")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--spec", help="layers WORD:SIZE,... outermost first")
    p.add_argument("--validate", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sample", help="draw a uniform random matching")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scheme", choices=("perm", "online"), default="perm")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("experiment", help="clique sizes in random matchings")
    p.add_argument("--pattern", required=True)
    p.add_argument("--grid", required=True, help="comma-separated sizes")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=METHODS, default="exact")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the full JSON report here")
    p.add_argument("--csv", help="write per-trial sizes as CSV here")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument("--suite", default="all", choices=("all", *SUITES))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.format = getattr(args, "format", "json")
    saved = dict(os.environ)
    if getattr(args, "guard_enum", None):
        os.environ["ORDMATCH_GUARD_ENUM"] = str(args.guard_enum)
    if getattr(args, "guard_clique", None):
        os.environ["ORDMATCH_GUARD_CLIQUE"] = str(args.guard_clique)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, MatchingError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExtractionError as exc:
        print(f"internal extraction failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        os.environ.clear()
        os.environ.update(saved)


if __name__ == "__main__":
    sys.exit(main())

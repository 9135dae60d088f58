"""A tour of the pattern algebra for triples and quadruples.

Two r-edges can interleave in C(2r, r)/2 ways.  Only the splittable ones can
be repeated into arbitrarily large cliques, and they are generated from the
three 2-patterns by a decomposition into a left parent (the first r-1
vertices of each edge) and a right parent (the last two).
"""

from ordmatch.core import to_word
from ordmatch.patterns import (
    big_brothers,
    canonical_clique,
    collectable_index,
    decompose,
    enumerate_patterns,
    family,
    split,
    table_rows,
)

print("All 10 patterns of two triples, laid out like the printed table:")
for label, word, dec in table_rows(3, split_words=False, mark_big_brothers=False):
    print(f"  {label:6} {word}  {dec}")

print("\nSplittable patterns split into blocks X^t Y^t:")
for p in collectable_index(3):
    print(f"  {p.word} -> {split(p)}  partition {split(p).partition}")

bb = big_brothers(3)[0]
print(f"\n{bb.word} is the only big brother for r=3; its family is {[p.word for p in family(bb)]}.")
print("Both share the parents", tuple(q.word for q in decompose(bb)))

print("\nGrowing a clique from a pattern, |AABB|AB|BA| with k=4:")
print("  ", to_word(canonical_clique("AABBABBA", 4)))

for r in (4, 5):
    n = len(enumerate_patterns(r))
    c = len(collectable_index(r))
    print(f"r={r}: {n} patterns, {c} collectable, {len(big_brothers(r))} big brothers")

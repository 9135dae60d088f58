"""Extremal constructions: blow-ups, layered cliques and chains."""

from ordmatch.constructions import blow_up, chain, inheritance_check, is_chainable, layered_construction, p1star_chain
from ordmatch.core import parse_word, to_word
from ordmatch.exact import census, max_clique
from ordmatch.patterns import collectable_index

m, n = parse_word("ABACCBABC"), parse_word("XYZYZXZXY")
mn = blow_up(m, n)
print("M =", to_word(m), " N =", to_word(n))
print("M[N] =", to_word(mn))
print("  every cross-copy pair keeps its M-pattern:", inheritance_check(m, n))

idx = collectable_index(3)
layers = (1, 2, 5, 6, 8, 9)
big = layered_construction(3, [(idx[i], 2) for i in layers])
print(f"\nSix-fold layered construction: {big.n} edges")
for i in layers:
    print(f"  largest P_{i}-clique: {max_clique(big, idx[i]).size}")

print("\nChainable collectable 3-patterns:", [f"P_{idx.index(p)}" for p in idx if is_chainable(p)])
print("P_3-chain of size 6:", to_word(chain(idx[3], 6)))
star = p1star_chain(6)
print("P_1*-chain of size 6:", to_word(star), {p.word: c for p, c in census(star).items()})

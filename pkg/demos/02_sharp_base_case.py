"""The Erdős–Szekeres theorem for 2-matchings, and why it is sharp.

Any 2-matching with more than l*s*w edges has a line of size l+1, a stack
of size s+1 or a wave of size w+1.  The layered blow-up L_l[S_s[W_w]] has
exactly l*s*w edges and none of them, so the bound cannot be lowered.
"""

from ordmatch.constructions import lsw
from ordmatch.core import to_word
from ordmatch.exact import base2_outcomes, max_clique
from ordmatch.extract import PreconditionError, es_base2
from ordmatch.patterns import R_PARENTS
from ordmatch.random_matchings import sample_permutational

l, s, w = 2, 2, 2
sharp = lsw(l, s, w)
print(f"L_{l}[S_{s}[W_{w}]] = {to_word(sharp)}")
print("  largest line/stack/wave:", [max_clique(sharp, p).size for p in R_PARENTS])
try:
    es_base2(sharp, l, s, w)
except PreconditionError as exc:
    print("  es_base2 refuses it:", exc)

m = sample_permutational(2, l * s * w + 1, seed=5)
res = es_base2(m, l, s, w)
print(f"\nA random matching with {m.n} edges: {to_word(m)}")
print(f"  found {res.pattern.word}-clique {res.certificate.edge_indices} beating {res.guarantee}")

print("\nExhaustive check over all 2-matchings of size 9 (about 34 million):")
print("  ", base2_outcomes(l * s * w + 1, l, s, w))
print("and of size 8, where the sharp example lives:")
print("  ", base2_outcomes(l * s * w, l, s, w))

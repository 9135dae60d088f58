"""Recursive clique extraction for r-matchings.

The extractor drops the last vertex of every edge, recurses, and finishes
on the last two vertices of the clique it got back.  Parameters are exact
rationals and every answer is re-validated pair by pair.
"""

from fractions import Fraction

from ordmatch.constructions import p1star_chain
from ordmatch.core import to_word
from ordmatch.exact import max_clique
from ordmatch.extract import extract3_improved, extract_clique
from ordmatch.patterns import collectable_index, maturity
from ordmatch.random_matchings import sample_permutational

idx = collectable_index(3)
m = sample_permutational(3, 25, seed=8)
xs = [Fraction(7, 5)] * 9
res = extract_clique(m, xs)
p = res.pattern
print(f"host {to_word(m, sep=' ')}")
print(f"found P_{res.pattern_index} = {p.word}, size {res.size} > {res.guarantee}")
print(f"(the true maximum {p.word}-clique has size {max_clique(m, p).size})")

chain = p1star_chain(6)
res = extract_clique(chain, [Fraction("5.9")] + [1] * 8)
print(f"\nOn the P_1*-chain {to_word(chain)}, siblings force halving:")
print(f"  line {res.certificate.edge_indices}, guarantee 5.9/2^{maturity(idx[1])} = {res.guarantee}")

a = 2
n = a * (2 * a) * a * a * (2 * a) * a * a + 1
m = sample_permutational(3, n, seed=1)
res = extract3_improved(m, [a] * 9)
print(f"\nImproved r=3 extraction at n={n}: P_{res.pattern_index} clique of size {res.size} >= {a + 1}")

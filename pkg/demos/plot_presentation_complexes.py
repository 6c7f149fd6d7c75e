"""
Presentation complexes and their homology
=========================================

Build P(f), Q(f) and the orbit graph, cut out a finite closed piece and
compute its integer homology.
"""

from collatz_complexes import build_B, build_Gamma, build_H, build_P, build_Q, collatz, orbit_closure, truncate
from collatz_complexes.homology import homology

C = collatz()
P = build_P(C)
for i in (1, 2, 3):
    print("P rel", i, ":", P.relator(i))
print("Q rel 3 :", build_Q(C).relator(3))
print("Gamma edges:", [build_Gamma(C).edge(i) for i in range(1, 6)])

# the orbit of 3 is closed under C, so its cells form a subcomplex
S = orbit_closure(C, {3})
print("closure of 3:", sorted(S))
K = truncate(P, S)
print(homology(K).to_text())

# the finite families: B(n) keeps one free generator, H(n) is acyclic
print(homology(truncate(build_B(4))).to_text())
print(homology(truncate(build_H(4))).to_text())

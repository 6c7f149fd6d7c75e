"""
From presentations to simplicial complexes and back
===================================================

Each relator of length n becomes 12n triangles of a second barycentric
subdivision.  Collapsing a spanning tree of a simplicial complex gives a
presentation again.
"""

from collatz_complexes import build_B, build_H, presentation_to_simplicial, simplicial_to_presentation
from collatz_complexes.complexes import explicit, truncate
from collatz_complexes.homology import homology
from collatz_complexes.simplicial import euler_characteristic, simplicial_chain_complex

K = presentation_to_simplicial(build_B(1))
print("B(1): vertices, edges, triangles =", K.counts())
print("chi =", euler_characteristic(K), "=", euler_characteristic(build_B(1)))
print(homology(simplicial_chain_complex(K)).to_text())

p = simplicial_to_presentation(presentation_to_simplicial(build_H(2)))
print(len(p.generators), "generators,", len(p.relators), "relators after collapsing a tree")
print(homology(truncate(explicit(p.generators, p.relators))).to_text())

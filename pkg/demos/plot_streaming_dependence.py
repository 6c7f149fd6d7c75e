"""
Streaming top-dimensional cycles
================================

Feed boundary columns one at a time and stop at the first linear
dependence.  The certificate is an integer cycle in top degree.
"""

from collatz_complexes import build_Gamma, build_P, collatz, cycle_override, finite_component, toph_stream
from collatz_complexes.homology import boundary_columns, boundary_of

# the cycle 5 -> 6 -> 7 -> 5 closes a loop in the orbit graph
G = build_Gamma(cycle_override((5, 6, 7)))
cert = toph_stream(boundary_columns(G), 100)
print(cert.to_text(), "verified:", cert.verify(boundary_of(G)))

# every 2-cell of P(C) has boundary -a_i, so no dependence ever appears
print(toph_stream(boundary_columns(build_P(collatz())), 2000).to_text())

# the component of v1 in the Collatz graph is large
print(finite_component(collatz(), 1, 10**4).to_text())

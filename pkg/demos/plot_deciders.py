"""
Semi-decision procedures
========================

Scanning orbits can certify that P(f) is not contractible, or that the
orbit graph is disconnected.  It can never certify the opposite, so the
positive verdict is only "no violation found".
"""

from collatz_complexes import (OrbitBudget, collatz, collatz_verify, cycle_override, decide_connectivity,
                               decide_contractibility, four_cycle, gcp_reduce, hat, successor)

print(decide_contractibility(four_cycle(), range(1, 5)).to_text())
print(decide_contractibility(hat(collatz()), range(1, 10**4 + 1)).to_text())
print(decide_connectivity(cycle_override((5, 6, 7)), range(1, 8)).to_text())
print(decide_connectivity(successor(), range(1, 4), OrbitBudget(100)).to_text())

print(gcp_reduce(collatz()).describe(4))
print(collatz_verify(10**5).to_text())

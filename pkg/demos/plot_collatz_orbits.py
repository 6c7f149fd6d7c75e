"""
Orbits of generalized Collatz functions
=======================================

Parse a function, check that it maps positive integers to positive
integers, and classify a few orbits.
"""

from collatz_complexes import OrbitBudget, classify, parse_gcf, scan, validate

# x/2 on even numbers, 3x+1 on odd ones
C = parse_gcf("mod 2 ; 0: (1/2)x + 0 ; 1: 3x + 1")
print(validate(C))

# 27 wanders for a long time before falling into the cycle (1 4 2)
r = classify(C, 27)
print(r.to_line())
print("cycle", r.cycle, "largest iterate has", r.max_value_bits, "bits")

# the 3x-1 variant has more than one cycle
D = parse_gcf("mod 2 ; 0: (1/2)x ; 1: 3x - 1")
reports, summary = scan(D, range(1, 2001), OrbitBudget(10**4))
for cyc in sorted(summary.cycles):
    print("cycle of length", len(cyc), ":", *cyc)

# a rejected function comes back with a witness
print(validate(parse_gcf("mod 2 ; 0: (1/2)x ; 1: (1/2)x")))

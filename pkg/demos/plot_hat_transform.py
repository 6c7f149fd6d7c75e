"""
The hat-transform
=================

``hat(f)`` fixes 1..4 and otherwise moves along ``f`` in the first
coordinate of ``phi(n) = ((n+3)//4, n mod 4)`` while cycling the second.
Orbits through 1 end at a fixed point; a cycle that avoids 1 lifts to a
cycle whose length is a multiple of 4.
"""

from collatz_complexes import classify, collatz, cycle_override, hat, phi, phi_inv

C = collatz()
Ch = hat(C)
print([Ch(n) for n in range(1, 13)])
print("phi(9) =", phi(9), "  hat(C)(9) =", Ch(9), "  phi(38) =", phi(Ch(9)))

# every lift of the seed 7 reaches a fixed point in 1..4
for r in range(4):
    n = phi_inv(7, r)
    rep = classify(Ch, n)
    print(n, "->", rep.cycle, "after", rep.preperiod, "steps")

# a 3-cycle 5 -> 6 -> 7 -> 5 lifts to a 12-cycle
f = cycle_override((5, 6, 7))
print("period of f at 5:", classify(f, 5).period)
print("period of hat(f) at", phi_inv(5, 1), ":", classify(hat(f), phi_inv(5, 1)).period)

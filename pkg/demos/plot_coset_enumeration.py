"""
Coset enumeration for H(n) and B(n)
===================================

Todd-Coxeter enumeration certifies that a finite presentation defines the
trivial group.  It can only ever give up on an infinite group.
"""
import time

from collatz_complexes import build_B_killed, build_H, certify_trivial

for n in (1, 2, 3, 4):
    t = time.perf_counter()
    res = certify_trivial(build_H(n).presentation(), 10**6 if n == 4 else 10**5)
    print(f"H({n}):", res.to_text(), f"[{res.defined} cosets defined, {time.perf_counter() - t:.2f}s]")

# adding a_(n+1) = 1 to B(n) kills everything
for n in range(1, 7):
    print(f"B({n}) + a{n + 1}:", certify_trivial(build_B_killed(n)).to_text())

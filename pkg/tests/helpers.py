"""Independent oracles and generators shared by the test modules."""
import random
from fractions import Fraction
from itertools import combinations
from math import gcd

from collatz_complexes.gcf import GCF, TableOverride, constant


def random_gcf(rng: random.Random, max_modulus: int = 4) -> GCF:
    """A random total GCF, mostly contracting so that orbits close.

    Branch i is x -> p*(x - i)/m + c, which is a positive integer on the
    class of i; the occasional p > m keeps some expanding branches.
    """
    m = rng.randint(1, max_modulus)
    branches = []
    for i in range(m):
        c = rng.randint(1, 6)
        if rng.random() < 0.15:
            branches.append((Fraction(0), Fraction(c)))
            continue
        p = rng.randint(1, m) if rng.random() < 0.8 else rng.randint(m + 1, 3 * m)
        a = Fraction(p, m)
        branches.append((a, c - a * i))
    return GCF(m, tuple(branches), name=f"rand{m}")


def random_table_function(rng: random.Random, n: int) -> TableOverride:
    """A random self-map of 1..n (everything above n goes to 1)."""
    return TableOverride({i: rng.randint(1, n) for i in range(1, n + 1)}, constant(1), name="randtable")


def naive_orbit_shape(f, seed, limit=10**6):
    """(preperiod, period, cycle set, orbit) by storing every iterate."""
    first = {}
    orbit = []
    x = seed
    while x not in first:
        if len(orbit) >= limit:
            return None
        first[x] = len(orbit)
        orbit.append(x)
        x = f(x)
    mu = first[x]
    return mu, len(orbit) - mu, set(orbit[mu:]), orbit


def det(M):
    """Fraction-based Gaussian elimination determinant."""
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            t = A[r][c] / A[c][c]
            if t:
                A[r] = [a - t * b for a, b in zip(A[r], A[c])]
    return int(d)


def determinant_divisors_factors(M):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    rows, cols = len(M), len(M[0]) if M else 0
    prev = 1
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def matrix_rank_fraction(cols, nrows_labels):
    """Rank over Q of sparse columns via plain dense elimination."""
    labels = sorted(nrows_labels)
    pos = {l: k for k, l in enumerate(labels)}
    M = [[Fraction(0)] * len(cols) for _ in labels]
    for j, col in enumerate(cols):
        for r, v in col.items():
            M[pos[r]][j] = Fraction(v)
    rank = 0
    ncols = len(cols)
    for c in range(ncols):
        p = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                t = M[r][c] / M[rank][c]
                M[r] = [a - t * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank

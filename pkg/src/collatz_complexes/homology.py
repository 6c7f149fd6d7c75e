"""Integer homology of finite chain complexes and two streaming detectors.

* :func:`smith_normal_form` / :func:`homology`: exact homology of a finite
  truncation.
* :func:`toph_stream`: feed boundary columns of top-dimensional cells one at
  a time and stop at the first rational linear dependence, which certifies a
  non-zero top homology group.
* :func:`finite_component`: breadth-first closure of a vertex of the orbit
  graph, succeeding only if the component is finite.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

from .complexes import ChainComplex, Graph, PresentationComplex
from .gcf import FunctionHandle

__all__ = [
    "CompositionNonzero",
    "smith_normal_form",
    "rank",
    "HomologyGroups",
    "homology",
    "DependenceCertificate",
    "NoDependence",
    "toph_stream",
    "boundary_columns",
    "FiniteComponent",
    "Exceeded",
    "finite_component",
    "component_is_closed",
]


class CompositionNonzero(ValueError):
    """boundary1 o boundary2 != 0; the chain complex was built wrongly."""


# ---------------------------------------------------------------------------
# Smith normal form

def _to_rows(M) -> dict[int, dict[int, int]]:
    if isinstance(M, Mapping):
        return {r: {c: int(v) for c, v in row.items() if v} for r, row in M.items()}
    rows = {}
    for r, row in enumerate(M):
        d = {c: int(v) for c, v in enumerate(row) if v}
        if d:
            rows[r] = d
    return rows


def _normalize_diagonal(diag: list[int]) -> list[int]:
    """Turn any diagonal into invariant factors d1 | d2 | ... (same module)."""
    ones = sum(1 for d in diag if d == 1)
    rest = sorted(d for d in diag if d != 1)
    changed = True
    while changed:
        changed = False
        for i in range(len(rest)):
            for j in range(i + 1, len(rest)):
                a, b = rest[i], rest[j]
                if b % a:
                    g = gcd(a, b)
                    rest[i], rest[j] = g, a // g * b
                    changed = True
        rest.sort()
    extra = sum(1 for d in rest if d == 1)
    return [1] * (ones + extra) + [d for d in rest if d != 1]


def smith_normal_form(M) -> list[int]:
    """Non-zero invariant factors of an integer matrix, in divisibility order.

    ``M`` is a dense list of rows or a sparse ``{row: {col: value}}`` dict.
    Elimination is sparse; the pivot is an entry of least absolute value,
    ties broken by the fewest other entries in its row and column.
    """
    rows = _to_rows(M)
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    def set_entry(r, c, v):
        row = rows.setdefault(r, {})
        if v:
            row[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]
            if not row:
                del rows[r]

    def add_row(dst, src, k):
        for c, v in list(rows[src].items()):
            set_entry(dst, c, rows.get(dst, {}).get(c, 0) + k * v)

    def add_col(dst, src, k):
        for r in list(cols.get(src, ())):
            v = rows[r][src]
            set_entry(r, dst, rows[r].get(dst, 0) + k * v)

    diag: list[int] = []
    while rows:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(cols[c]) - 1))
                if best is None or key < best[0]:
                    best = (key, r, c)
                    if key == (1, 0):
                        break
            if best[0] == (1, 0):
                break
        _, pr, pc = best
        while True:
            p = rows[pr][pc]
            dirty = False
            for r in list(cols[pc]):
                if r == pr:
                    continue
                q = rows[r][pc] // p
                add_row(r, pr, -q)
                if pc in rows.get(r, {}):
                    dirty = True
            for c in list(rows[pr]):
                if c == pc:
                    continue
                q = rows[pr][c] // p
                add_col(c, pc, -q)
                if c in rows[pr]:
                    dirty = True
            if not dirty:
                break
            # a remainder survived: move the smallest one into the pivot slot
            cand = [(abs(rows[r][pc]), r, pc) for r in cols[pc] if r != pr]
            cand += [(abs(v), pr, c) for c, v in rows[pr].items() if c != pc]
            _, pr, pc = min(cand)
        diag.append(abs(rows[pr][pc]))
        set_entry(pr, pc, 0)
    return _normalize_diagonal(diag)


def rank(M) -> int:
    return len(smith_normal_form(M))


# ---------------------------------------------------------------------------
# homology

@dataclass(frozen=True)
class HomologyGroups:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def is_acyclic(self) -> bool:
        return self.betti[0] == 1 and not any(self.betti[1:]) and not any(self.torsion)

    def group(self, d: int) -> str:
        parts = []
        if self.betti[d]:
            parts.append(f"Z^{self.betti[d]}")
        parts += [f"Z/{t}" for t in self.torsion[d]]
        return " + ".join(parts) if parts else "0"

    def to_text(self) -> str:
        return "\n".join(f"H{d} {self.group(d)}" for d in range(len(self.betti))) + "\n"

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


def _columns_to_rows(cols: Sequence[Mapping[int, int]]) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = v
    return rows


def homology(K: ChainComplex) -> HomologyGroups:
    """``H_d = ker d_d / im d_{d+1}`` for d = 0, 1, 2."""
    if not K.composition_is_zero():
        raise CompositionNonzero("boundary1 o boundary2 is not zero")
    c0, c1, c2 = K.dims
    f1 = smith_normal_form(_columns_to_rows(K.boundary1))
    f2 = smith_normal_form(_columns_to_rows(K.boundary2))
    r1, r2 = len(f1), len(f2)
    betti = (c0 - r1, c1 - r1 - r2, c2 - r2)
    torsion = (tuple(d for d in f1 if d > 1), tuple(d for d in f2 if d > 1), ())
    return HomologyGroups(betti, torsion)


# ---------------------------------------------------------------------------
# streaming top-degree dependence

@dataclass(frozen=True)
class DependenceCertificate:
    """Integer coefficients ``c_i`` with ``sum c_i * boundary(cell_i) == 0``."""

    coefficients: dict

    def verify(self, boundary: Mapping | callable) -> bool:
        acc: dict = {}
        get = boundary if callable(boundary) else boundary.__getitem__
        for cell, c in self.coefficients.items():
            for row, v in get(cell).items():
                acc[row] = acc.get(row, 0) + c * v
        content = 0
        for c in self.coefficients.values():
            content = gcd(content, c)
        return (not any(acc.values()) and content == 1
                and all(c != 0 for c in self.coefficients.values()))

    @property
    def last_cell(self):
        return max(self.coefficients)

    def to_text(self) -> str:
        return "cycle: " + " ".join(f"{i}:{c}" for i, c in sorted(self.coefficients.items()))


@dataclass(frozen=True)
class NoDependence:
    m: int

    def to_text(self) -> str:
        return f"no dependence among the first {self.m} cells"


def toph_stream(columns: Iterable[tuple[Hashable, Mapping]], max_cells: int):
    """First linear dependence among streamed boundary columns, over Q.

    ``columns`` yields ``(cell, {row: coefficient})`` in cell order.  Keeps
    the independent columns in reduced echelon form (each pivot row appears
    in exactly one basis vector) together with their expressions in the
    original cells; on the first column that reduces to zero the expression
    is scaled to a primitive integer vector and returned.
    """
    basis: dict[Hashable, tuple[dict, dict]] = {}   # pivot row -> (vector, combination)
    holders: dict[Hashable, set] = {}                # row -> pivots whose vector uses it
    count = 0
    for cell, col in columns:
        if count >= max_cells:
            break
        count += 1
        vec = {r: Fraction(v) for r, v in col.items() if v}
        combo = {cell: Fraction(1)}
        for p in [r for r in vec if r in basis]:
            c = vec.get(p)
            if not c:
                continue
            bvec, bcombo = basis[p]
            for r, v in bvec.items():
                nv = vec.get(r, 0) - c * v
                if nv:
                    vec[r] = nv
                else:
                    vec.pop(r, None)
            for k, v in bcombo.items():
                nv = combo.get(k, 0) - c * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        if not vec:
            den = 1
            for v in combo.values():
                den = lcm(den, v.denominator)
            ints = {k: int(v * den) for k, v in combo.items()}
            g = 0
            for v in ints.values():
                g = gcd(g, v)
            sign = 1 if ints[cell] > 0 else -1
            return DependenceCertificate({k: sign * v // g for k, v in ints.items()})
        p = min(vec, key=_sort_key)
        c = vec[p]
        vec = {r: v / c for r, v in vec.items()}
        combo = {k: v / c for k, v in combo.items()}
        # clear the new pivot row from the existing basis vectors
        for q in list(holders.get(p, ())):
            qvec, qcombo = basis[q]
            t = qvec.get(p)
            if not t:
                continue
            for r, v in vec.items():
                nv = qvec.get(r, 0) - t * v
                if nv:
                    qvec[r] = nv
                    holders.setdefault(r, set()).add(q)
                else:
                    qvec.pop(r, None)
                    holders.get(r, set()).discard(q)
            for k, v in combo.items():
                nv = qcombo.get(k, 0) - t * v
                if nv:
                    qcombo[k] = nv
                else:
                    qcombo.pop(k, None)
        basis[p] = (vec, combo)
        for r in vec:
            holders.setdefault(r, set()).add(p)
    return NoDependence(count)


def _sort_key(x):
    return (type(x).__name__, x)


def boundary_columns(X: PresentationComplex | Graph, start: int = 1):
    """Lazy ``(cell, boundary)`` source of top-dimensional cells, in index order.

    2-cells of a presentation complex have exponent-sum columns; edges of
    the orbit graph have ``head - tail``.
    """
    i = start
    if isinstance(X, Graph):
        while True:
            tail, head = X.edge(i)
            yield i, ({} if tail == head else {head: 1, tail: -1})
            i += 1
    if X.is_finite:
        for i in X.relator_indices:
            yield i, X.relator(i).exponent_sums()
        return
    while True:
        yield i, X.relator(i).exponent_sums()
        i += 1


def boundary_of(X: PresentationComplex | Graph):
    """Single-cell boundary function, used to re-verify certificates."""
    if isinstance(X, Graph):
        def edge_boundary(i):
            tail, head = X.edge(i)
            return {} if tail == head else {head: 1, tail: -1}
        return edge_boundary
    return lambda i: X.relator(i).exponent_sums()


# ---------------------------------------------------------------------------
# finite components of the orbit graph

@dataclass(frozen=True)
class FiniteComponent:
    vertices: frozenset[int]

    def to_text(self) -> str:
        return "component: " + " ".join(f"v{v}" for v in sorted(self.vertices))


@dataclass(frozen=True)
class Exceeded:
    max_vertices: int
    explored: int = 0

    def to_text(self) -> str:
        return f"exceeded: more than {self.max_vertices} vertices"


def graph_neighbours(f: FunctionHandle, j: int) -> set[int]:
    """Vertices joined to ``v_j`` by an edge of the orbit graph (loops ignored)."""
    out = {k for k in f.preimage(j) if k >= 2}
    if j >= 2:
        out.add(f(j))
    out.discard(j)
    return out


def finite_component(f: FunctionHandle, start_vertex: int, max_vertices: int):
    """The connected component of ``v_start`` in the orbit graph, if finite.

    Returns :class:`FiniteComponent` when the breadth-first closure stops
    with at most ``max_vertices`` vertices, else :class:`Exceeded`.
    Propagates :class:`~collatz_complexes.gcf.InfinitePreimageRisk`.
    """
    if start_vertex < 1:
        raise ValueError("vertices are positive integers")
    seen = {start_vertex}
    queue = deque([start_vertex])
    while queue:
        j = queue.popleft()
        for k in sorted(graph_neighbours(f, j)):
            if k not in seen:
                seen.add(k)
                if len(seen) > max_vertices:
                    return Exceeded(max_vertices, len(seen))
                queue.append(k)
    return FiniteComponent(frozenset(seen))


def component_is_closed(f: FunctionHandle, vertices: Iterable[int]) -> bool:
    """Independent check that no edge leaves ``vertices``."""
    vs = set(vertices)
    for j in vs:
        if j >= 2 and f(j) not in vs:
            return False
        if any(k >= 2 and k not in vs for k in f.preimage(j)):
            return False
    return True

"""Passing between presentation 2-complexes and simplicial 2-complexes.

Forward: each generator loop is subdivided into a square, and each relator
of length n, viewed as an n-gon, is replaced by its second barycentric
subdivision (12n triangles), glued to the squares along its attaching word.
Vertex labels name the cell they are the barycentre of:

    v                    the 0-cell
    m<g>                 midpoint of generator loop g
    p<g>.0 / p<g>.1      midpoints of the first / second half of loop g
    r<j>.c               centre of 2-cell j
    r<j>.k<i> / r<j>.s<i>  spokes from the centre to corner i / to side i
    r<j>.a<i> / r<j>.b<i>  the two triangles of side i

Backward: a maximal tree is collapsed; the remaining edges are generators
and every triangle contributes one relator.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable

from .complexes import ChainComplex, PresentationComplex, RelatorWord
from .coset import FinitePresentation

__all__ = [
    "EmptyRelator",
    "Disconnected",
    "SimplicialComplex",
    "presentation_to_simplicial",
    "simplicial_to_presentation",
    "euler_characteristic",
    "simplicial_chain_complex",
    "export_simplicial",
    "parse_simplicial",
]


class EmptyRelator(ValueError):
    pass


class Disconnected(ValueError):
    def __init__(self, a, b):
        super().__init__(f"complex is disconnected: {a} and {b} lie in different components")
        self.witnesses = (a, b)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: frozenset
    edges: frozenset      # of sorted 2-tuples
    triangles: frozenset  # of sorted 3-tuples

    @classmethod
    def from_simplices(cls, vertices=(), edges=(), triangles=()) -> "SimplicialComplex":
        """Close the given simplices under taking faces."""
        V, E, T = set(vertices), set(), set()
        for t in triangles:
            t = tuple(sorted(t))
            if len(set(t)) != 3:
                raise ValueError(f"degenerate triangle {t}")
            T.add(t)
            a, b, c = t
            E.update({(a, b), (a, c), (b, c)})
        for e in edges:
            e = tuple(sorted(e))
            if len(set(e)) != 2:
                raise ValueError(f"degenerate edge {e}")
            E.add(e)
        for e in E:
            V.update(e)
        return cls(frozenset(V), frozenset(E), frozenset(T))

    def is_closed(self) -> bool:
        for a, b, c in self.triangles:
            if not {(a, b), (a, c), (b, c)} <= self.edges:
                return False
        return all(set(e) <= self.vertices for e in self.edges)

    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.triangles)


def _square_edges(g) -> list[tuple[str, str]]:
    v, m, p0, p1 = "v", f"m{g}", f"p{g}.0", f"p{g}.1"
    return [(v, p0), (p0, m), (m, p1), (p1, v)]


def presentation_to_simplicial(X: FinitePresentation | PresentationComplex) -> SimplicialComplex:
    """Simplicial complex homotopy equivalent to the presentation 2-complex of ``X``."""
    if isinstance(X, PresentationComplex):
        X = X.presentation()
    vertices = {"v"}
    edges: set = set()
    triangles: set = set()
    for g in X.generators:
        for e in _square_edges(g):
            edges.add(e)
            vertices.update(e)

    for j, word in enumerate(X.relators):
        n = len(word)
        if n == 0:
            raise EmptyRelator(f"relator {j} is empty")
        c = f"r{j}.c"
        # first subdivision of the n-gon: each simplex as (label, faces)
        simplices2 = []
        for i, (g, e) in enumerate(word):
            first, second = (f"p{g}.0", f"p{g}.1") if e > 0 else (f"p{g}.1", f"p{g}.0")
            mid, spoke_k, spoke_s = f"m{g}", f"r{j}.k{i}", f"r{j}.s{i}"
            spoke_next = f"r{j}.k{(i + 1) % n}"
            # edges as label -> endpoints
            a_edges = {spoke_k: (c, "v"), spoke_s: (c, mid), first: ("v", mid)}
            b_edges = {spoke_s: (c, mid), spoke_next: (c, "v"), second: (mid, "v")}
            simplices2.append((f"r{j}.a{i}", a_edges))
            simplices2.append((f"r{j}.b{i}", b_edges))
        for t_label, t_edges in simplices2:
            for e_label, ends in t_edges.items():
                for w in ends:
                    tri = tuple(sorted((w, e_label, t_label)))
                    triangles.add(tri)
    return SimplicialComplex.from_simplices(vertices, edges, triangles)


def euler_characteristic(X) -> int:
    """Alternating count of cells or simplices."""
    if isinstance(X, SimplicialComplex):
        v, e, t = X.counts()
        return v - e + t
    if isinstance(X, ChainComplex):
        return X.euler_characteristic()
    if isinstance(X, PresentationComplex):
        X = X.presentation()
    return 1 - len(X.generators) + len(X.relators)


def simplicial_chain_complex(K: SimplicialComplex) -> ChainComplex:
    """Oriented simplicial chain complex, orientation from sorted vertex order."""
    V = sorted(K.vertices, key=_key)
    E = sorted(K.edges, key=lambda e: tuple(map(_key, e)))
    T = sorted(K.triangles, key=lambda t: tuple(map(_key, t)))
    pv = {v: k for k, v in enumerate(V)}
    pe = {e: k for k, e in enumerate(E)}
    b1 = [{pv[b]: 1, pv[a]: -1} for a, b in E]
    b2 = []
    for a, b, c in T:
        b2.append({pe[(b, c)]: 1, pe[(a, c)]: -1, pe[(a, b)]: 1})
    return ChainComplex((V, E, T), b1, b2)


def _key(x):
    return (type(x).__name__, x)


def simplicial_to_presentation(K: SimplicialComplex) -> FinitePresentation:
    """Collapse a BFS spanning tree; generators are the remaining edges.

    The result's generators are the non-tree edges themselves (sorted vertex
    pairs); :func:`~collatz_complexes.coset.render_presentation` renumbers
    them for output.
    """
    if not K.vertices:
        raise ValueError("empty complex")
    adj: dict = {v: [] for v in K.vertices}
    for a, b in K.edges:
        adj[a].append(b)
        adj[b].append(a)
    root = min(K.vertices, key=_key)
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u], key=_key):
            if w not in seen:
                seen.add(w)
                tree.add(tuple(sorted((u, w), key=_key)))
                queue.append(w)
    if len(seen) != len(K.vertices):
        other = min(K.vertices - seen, key=_key)
        raise Disconnected(root, other)

    gens = tuple(sorted((e for e in K.edges if e not in tree), key=lambda e: tuple(map(_key, e))))
    rels = []
    for t in sorted(K.triangles, key=lambda t: tuple(map(_key, t))):
        a, b, c = sorted(t, key=_key)
        letters = []
        for e, sign in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            if e not in tree:
                letters.append((e, sign))
        rels.append(RelatorWord.reduced(letters))
    return FinitePresentation(gens, tuple(rels))


def export_simplicial(K: SimplicialComplex) -> str:
    lines = [f"v {v}" for v in sorted(K.vertices, key=_key)]
    lines += [f"e {a} {b}" for a, b in sorted(K.edges, key=lambda e: tuple(map(_key, e)))]
    lines += [f"t {a} {b} {c}" for a, b, c in sorted(K.triangles, key=lambda t: tuple(map(_key, t)))]
    return "\n".join(lines) + "\n"


def parse_simplicial(text: str) -> SimplicialComplex:
    V, E, T = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        tag, labels = parts[0], [_label(p) for p in parts[1:]]
        want = {"v": 1, "e": 2, "t": 3}.get(tag)
        if want is None or len(labels) != want:
            raise ValueError(f"line {lineno}: expected 'v a', 'e a b' or 't a b c'")
        {"v": V, "e": E, "t": T}[tag].append(labels[0] if tag == "v" else labels)
    return SimplicialComplex.from_simplices(V, E, T)


def _label(s: str) -> Hashable:
    return int(s) if s.lstrip("-").isdigit() else s

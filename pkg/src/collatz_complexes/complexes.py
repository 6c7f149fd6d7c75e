"""Presentation 2-complexes, the orbit graph, and their finite truncations.

Complexes built from a function (``P(f)``, ``Q(f)``, ``Gamma(f)``) are
infinite; they are represented by rules mapping a cell index to its data and
are only ever materialised on a finite ``f``-closed set of indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, NamedTuple, Sequence

from .gcf import FunctionHandle
from .orbit import DEFAULT_BUDGET, OrbitBudget, classify

__all__ = [
    "Letter",
    "RelatorWord",
    "PresentationComplex",
    "Graph",
    "ChainComplex",
    "ClosedSet",
    "NotClosed",
    "BudgetExhausted",
    "conjugation_relator",
    "build_P",
    "build_Q",
    "build_Gamma",
    "build_B",
    "build_H",
    "explicit",
    "orbit_closure",
    "truncate",
    "export_complex",
    "export_graph",
]


class NotClosed(ValueError):
    def __init__(self, witness: int, image: int):
        super().__init__(f"set is not closed: {witness} -> {image}")
        self.witness = witness
        self.image = image


class BudgetExhausted(RuntimeError):
    def __init__(self, seed: int, report=None):
        super().__init__(f"orbit of {seed} did not close within budget")
        self.seed = seed
        self.report = report


class Letter(NamedTuple):
    gen: Hashable
    exp: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.exp)

    def __str__(self) -> str:
        return ("+" if self.exp > 0 else "-") + str(self.gen)


def _free_reduce(letters: Iterable[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for l in letters:
        if out and out[-1].gen == l.gen and out[-1].exp == -l.exp:
            out.pop()
        else:
            out.append(l)
    return out


@dataclass(frozen=True)
class RelatorWord:
    """A freely and cyclically reduced word in signed generators."""

    letters: tuple[Letter, ...]

    @classmethod
    def reduced(cls, letters: Iterable) -> "RelatorWord":
        w = _free_reduce(Letter(g, e) for g, e in letters)
        while len(w) >= 2 and w[0].gen == w[-1].gen and w[0].exp == -w[-1].exp:
            w = w[1:-1]
        return cls(tuple(w))

    @classmethod
    def parse(cls, text: str) -> "RelatorWord":
        letters = []
        for tok in text.split():
            if tok[0] not in "+-" or not tok[1:].isdigit():
                raise ValueError(f"bad letter {tok!r}; expected +<i> or -<i>")
            letters.append((int(tok[1:]), 1 if tok[0] == "+" else -1))
        return cls.reduced(letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def is_cyclically_reduced(self) -> bool:
        w = self.letters
        n = len(w)
        return all(not (w[k].gen == w[(k + 1) % n].gen and w[k].exp == -w[(k + 1) % n].exp)
                   for k in range(n)) if n >= 2 else True

    def exponent_sums(self) -> dict:
        sums: dict = {}
        for g, e in self.letters:
            sums[g] = sums.get(g, 0) + e
        return {g: s for g, s in sums.items() if s}

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))


def conjugation_relator(i, j) -> RelatorWord:
    """``a_j^-1 a_i a_j a_i^-2``, reduced (``(-i)`` when ``i == j``)."""
    return RelatorWord.reduced([(j, -1), (i, 1), (j, 1), (i, -1), (i, -1)])


@dataclass(frozen=True)
class PresentationComplex:
    """One 0-cell, 1-cells = generators, 2-cells = relators.

    ``relator(i)`` gives the attaching word of 2-cell ``i``.  Finite kinds
    (``B``, ``H``, ``explicit``) also list their generators and relator
    indices; function kinds carry ``f`` and are indexed by the positive
    integers.
    """

    kind: str
    params: tuple = ()
    f: FunctionHandle | None = None
    rule: Callable[[Hashable], RelatorWord] | None = field(default=None, compare=False, repr=False)
    generator_list: tuple | None = None
    relator_indices: tuple | None = None

    @property
    def is_finite(self) -> bool:
        return self.generator_list is not None

    def relator(self, i) -> RelatorWord:
        if self.relator_indices is not None and i not in self.relator_indices:
            raise IndexError(f"{self.kind} has no 2-cell {i}")
        if self.f is not None and (not isinstance(i, int) or i < 1):
            raise IndexError(f"2-cells are indexed by positive integers, got {i!r}")
        return self.rule(i)

    def is_degenerate(self, i) -> bool:
        return len(self.relator(i)) == 0

    def header(self) -> str:
        if self.f is not None:
            return f"complex {self.kind} {self.f.name}"
        return " ".join(["complex", self.kind, *map(str, self.params)])

    def generators_for(self, cells: Iterable) -> list:
        """1-cells touched by the given 2-cells (plus the cells themselves for P/Q)."""
        gens = set()
        for i in cells:
            if self.f is not None:
                gens.add(i)
            gens |= self.relator(i).generators()
        return sorted(gens)

    def presentation(self, cells: Iterable | None = None):
        """A :class:`~collatz_complexes.coset.FinitePresentation` slice."""
        from .coset import FinitePresentation
        if cells is None:
            if not self.is_finite:
                raise ValueError("infinite complex: pass the 2-cells to include")
            gens, cells = list(self.generator_list), list(self.relator_indices)
        else:
            cells = sorted(cells)
            gens = self.generators_for(cells)
        return FinitePresentation(tuple(gens), tuple(self.relator(i) for i in cells))


def build_P(f: FunctionHandle) -> PresentationComplex:
    return PresentationComplex("P", f=f, rule=lambda i: conjugation_relator(i, f(i)))


def _q_relator(f: FunctionHandle, i: int) -> RelatorWord:
    if i == 1:
        return RelatorWord.reduced([(1, 1)])
    return RelatorWord.reduced([(i, 1), (f(i), -1)])


def build_Q(f: FunctionHandle) -> PresentationComplex:
    """``a_1 = 1`` and ``a_i = a_f(i)`` for ``i >= 2``.

    At a fixed point ``f(i) == i`` the relator is the empty word; the 2-cell
    is kept (see :meth:`PresentationComplex.is_degenerate`).
    """
    return PresentationComplex("Q", f=f, rule=lambda i: _q_relator(f, i))


def build_B(n: int) -> PresentationComplex:
    if n < 1:
        raise ValueError("n must be positive")
    return PresentationComplex(
        "B", (n,), rule=lambda i: conjugation_relator(i, i + 1),
        generator_list=tuple(range(1, n + 2)), relator_indices=tuple(range(1, n + 1)))


def build_H(n: int) -> PresentationComplex:
    if n < 1:
        raise ValueError("n must be positive")
    return PresentationComplex(
        "H", (n,), rule=lambda i: conjugation_relator(i, (i + 1) % n),
        generator_list=tuple(range(n)), relator_indices=tuple(range(n)))


def build_B_killed(n: int):
    """``B(n)`` with the extra relator ``a_{n+1}``, as a finite presentation."""
    from .coset import FinitePresentation
    p = build_B(n).presentation()
    return FinitePresentation(p.generators, p.relators + (RelatorWord.reduced([(n + 1, 1)]),))


def explicit(generators: Sequence, relators: Sequence[RelatorWord]) -> PresentationComplex:
    rels = tuple(relators)
    return PresentationComplex(
        "explicit", (len(generators),), rule=lambda i: rels[i],
        generator_list=tuple(generators), relator_indices=tuple(range(len(rels))))


@dataclass(frozen=True)
class Graph:
    """The graph with vertices ``v_j`` and edges ``e_i = (v_{i+1}, v_{f(i+1)})``."""

    f: FunctionHandle
    kind = "Gamma"

    def edge(self, i: int) -> tuple[int, int]:
        if i < 1:
            raise IndexError(f"edges are indexed by positive integers, got {i}")
        return i + 1, self.f(i + 1)

    def is_loop(self, i: int) -> bool:
        tail, head = self.edge(i)
        return tail == head

    def header(self) -> str:
        return f"graph Gamma {self.f.name}"


def build_Gamma(f: FunctionHandle) -> Graph:
    return Graph(f)


# ---------------------------------------------------------------------------
# closed sets and truncation

@dataclass(frozen=True)
class ClosedSet:
    elements: frozenset[int]

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements


def orbit_values(f: FunctionHandle, seed: int, budget: OrbitBudget = DEFAULT_BUDGET) -> list[int]:
    """The forward orbit of ``seed`` as a list (preperiod then one cycle)."""
    rep = classify(f, seed, budget)
    if not rep.found:
        raise BudgetExhausted(seed, rep)
    out = [seed]
    x = seed
    for _ in range(rep.preperiod + rep.period - 1):
        x = f(x)
        out.append(x)
    return out


def orbit_closure(f: FunctionHandle, seeds: Iterable[int],
                  budget: OrbitBudget = DEFAULT_BUDGET) -> ClosedSet:
    """Smallest ``f``-closed superset of ``seeds``; raises :class:`BudgetExhausted`."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    out: set[int] = set()
    for s in seeds:
        if s in out:
            continue
        out.update(orbit_values(f, s, budget))
    return ClosedSet(frozenset(out))


@dataclass
class ChainComplex:
    """Cellular chain complex in degrees 0..2 with sparse integer boundaries.

    ``boundary1[j]`` / ``boundary2[j]`` are dicts ``row -> coefficient``
    describing column ``j``; rows and columns index into ``labels``.
    """

    labels: tuple[list, list, list]
    boundary1: list[dict[int, int]]
    boundary2: list[dict[int, int]]

    @property
    def dims(self) -> tuple[int, int, int]:
        return tuple(len(l) for l in self.labels)

    def euler_characteristic(self) -> int:
        c0, c1, c2 = self.dims
        return c0 - c1 + c2

    def dense(self, degree: int) -> list[list[int]]:
        cols = self.boundary1 if degree == 1 else self.boundary2
        nrows = self.dims[degree - 1]
        m = [[0] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                m[i][j] = v
        return m

    def composition_is_zero(self) -> bool:
        for col in self.boundary2:
            acc: dict[int, int] = {}
            for e, c in col.items():
                for v, d in self.boundary1[e].items():
                    acc[v] = acc.get(v, 0) + c * d
            if any(acc.values()):
                return False
        return True

    def restrict(self, cells2: Iterable, cells1: Iterable, cells0: Iterable) -> "ChainComplex":
        """Sub-complex on the given labels (they must form a subcomplex)."""
        keep = [list(cells0), list(cells1), list(cells2)]
        pos = [{l: k for k, l in enumerate(self.labels[d])} for d in range(3)]
        new = [{l: k for k, l in enumerate(keep[d])} for d in range(3)]

        def remap(cols, d):
            out = []
            for lab in keep[d]:
                col = cols[pos[d][lab]]
                out.append({new[d - 1][self.labels[d - 1][i]]: v for i, v in col.items()})
            return out
        return ChainComplex(tuple(keep), remap(self.boundary1, 1), remap(self.boundary2, 2))


def _one_vertex_complex(X: PresentationComplex, cells2: list, cells1: list) -> ChainComplex:
    pos1 = {g: k for k, g in enumerate(cells1)}
    b2 = []
    for i in cells2:
        b2.append({pos1[g]: s for g, s in X.relator(i).exponent_sums().items()})
    return ChainComplex((["pt"], list(cells1), list(cells2)), [{} for _ in cells1], b2)


def truncate(X: PresentationComplex | Graph, S: ClosedSet | Iterable[int] | None = None) -> ChainComplex:
    """Chain complex of the subcomplex indexed by ``S``.

    For ``P(f)``/``Q(f)`` the 2-cells are ``S`` and the 1-cells ``S`` (which
    contains ``f(S)``).  For ``Gamma(f)``, ``S`` is a vertex set and the
    edges are ``e_{j-1}`` for ``j`` in ``S``, ``j >= 2``.  Finite kinds take
    ``S = None`` meaning all cells.  Raises :class:`NotClosed` with a
    witness when ``f(S)`` leaves ``S``.
    """
    if isinstance(X, Graph):
        verts = sorted(S)
        vs = set(verts)
        for j in verts:
            if X.f(j) not in vs and j >= 2:
                raise NotClosed(j, X.f(j))
        pos0 = {v: k for k, v in enumerate(verts)}
        edges = [j - 1 for j in verts if j >= 2]
        b1 = []
        for e in edges:
            tail, head = X.edge(e)
            col: dict[int, int] = {}
            if tail != head:
                col[pos0[head]] = 1
                col[pos0[tail]] = -1
            b1.append(col)
        return ChainComplex((verts, edges, []), b1, [])

    if X.f is None:
        if S is not None and set(S) != set(X.relator_indices):
            raise ValueError(f"{X.kind} complexes are truncated only as a whole")
        return _one_vertex_complex(X, list(X.relator_indices), list(X.generator_list))

    cells = sorted(S)
    cs = set(cells)
    for i in cells:
        j = X.f(i)
        if j not in cs:
            raise NotClosed(i, j)
    return _one_vertex_complex(X, cells, cells)


# ---------------------------------------------------------------------------
# text export

def export_complex(X: PresentationComplex, cells: Iterable | None = None) -> str:
    if cells is None:
        if not X.is_finite:
            raise ValueError("infinite complex: pass the 2-cells to export")
        gens, cells = X.generator_list, X.relator_indices
    else:
        cells = sorted(cells)
        gens = X.generators_for(cells)
    lines = [X.header()]
    lines += [f"gen {g}" for g in gens]
    lines += [f"rel {i}: {X.relator(i)}".rstrip() for i in cells]
    return "\n".join(lines) + "\n"


def export_graph(G: Graph, edges: Iterable[int]) -> str:
    lines = [G.header()]
    for i in edges:
        tail, head = G.edge(i)
        lines.append(f"edge {i}: {tail} {head}")
    return "\n".join(lines) + "\n"


def iter_relators(X: PresentationComplex, upto: int) -> Iterator[tuple[int, RelatorWord]]:
    for i in range(1, upto + 1):
        yield i, X.relator(i)

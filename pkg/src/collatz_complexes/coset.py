"""Todd-Coxeter coset enumeration over the trivial subgroup.

HLT strategy: every live coset, in order, has each relator scanned and
filled; coincidences are processed at once through a union-find on coset
numbers.  The budget counts every coset ever defined, so ``Exhausted`` is
reproducible.
"""
from __future__ import annotations

import warnings
from array import array
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .complexes import RelatorWord

__all__ = [
    "FinitePresentation",
    "CosetTable",
    "Index",
    "Exhausted",
    "Certified",
    "enumerate_cosets",
    "certify_trivial",
    "parse_presentation",
    "render_presentation",
]

UNDEF = -1


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple[Hashable, ...]
    relators: tuple[RelatorWord, ...]

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("repeated generator label")
        for w in self.relators:
            bad = w.generators() - gens
            if bad:
                raise ValueError(f"relator {w} uses unknown generators {sorted(bad, key=str)}")

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    def with_relator(self, word: RelatorWord) -> "FinitePresentation":
        return FinitePresentation(self.generators, self.relators + (word,))


@dataclass(frozen=True)
class Index:
    k: int
    defined: int = 0

    def to_text(self) -> str:
        return f"Index: {self.k}"


@dataclass(frozen=True)
class Exhausted:
    max_cosets: int
    defined: int = 0

    def to_text(self) -> str:
        return f"Exhausted: more than {self.max_cosets} cosets"


@dataclass(frozen=True)
class Certified:
    defined: int = 0

    def to_text(self) -> str:
        return "Certified: trivial (index 1)"


class _OutOfSpace(Exception):
    pass


class CosetTable:
    """Coset table with columns ``g0, g0^-1, g1, g1^-1, ...``.

    Entry ``(c, x) = d`` always comes with ``(d, x^-1) = c``.  Dead cosets
    point (eventually) to their representative through ``parent``.
    """

    def __init__(self, presentation: FinitePresentation, max_cosets: int):
        self.presentation = presentation
        self.max_cosets = max_cosets
        gen_pos = {g: k for k, g in enumerate(presentation.generators)}
        self.ncols = 2 * len(gen_pos)
        self.words = []
        for w in presentation.relators:
            self.words.append([2 * gen_pos[g] + (0 if e > 0 else 1) for g, e in w])
        self.table = array("q", [UNDEF] * self.ncols)
        self.parent = [0]
        self.defined = 1
        self.queue: list[int] = []

    # -- basic operations ----------------------------------------------------
    def __len__(self) -> int:
        return len(self.parent)

    def live(self) -> list[int]:
        return [c for c, p in enumerate(self.parent) if p == c]

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def entry(self, c: int, x: int) -> int:
        return self.table[c * self.ncols + x]

    def define(self, c: int, x: int) -> int:
        if self.defined >= self.max_cosets:
            raise _OutOfSpace
        d = len(self.parent)
        self.parent.append(d)
        self.table.extend([UNDEF] * self.ncols)
        self.defined += 1
        n = self.ncols
        self.table[c * n + x] = d
        self.table[d * n + (x ^ 1)] = c
        return d

    def rep(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def _merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        T, n = self.table, self.ncols
        self.queue = []
        self._merge(a, b)
        i = 0
        while i < len(self.queue):
            e = self.queue[i]
            i += 1
            for x in range(n):
                f = T[e * n + x]
                if f == UNDEF:
                    continue
                T[f * n + (x ^ 1)] = UNDEF
                e1, f1 = self.rep(e), self.rep(f)
                t = T[e1 * n + x]
                if t != UNDEF:
                    self._merge(f1, t)
                    continue
                t = T[f1 * n + (x ^ 1)]
                if t != UNDEF:
                    self._merge(e1, t)
                    continue
                T[e1 * n + x] = f1
                T[f1 * n + (x ^ 1)] = e1

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        T, n = self.table, self.ncols
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j:
                t = T[f * n + word[i]]
                if t == UNDEF:
                    break
                f = t
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                t = T[b * n + (word[j] ^ 1)]
                if t == UNDEF:
                    break
                b = t
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f * n + word[i]] = b
                T[b * n + (word[i] ^ 1)] = f
                return
            self.define(f, word[i])

    # -- checks --------------------------------------------------------------
    def is_consistent(self) -> bool:
        n = self.ncols
        for c in self.live():
            for x in range(n):
                d = self.entry(c, x)
                if d == UNDEF:
                    continue
                if not self.is_live(d) or self.entry(d, x ^ 1) != c:
                    return False
        return True

    def is_complete(self) -> bool:
        return all(self.entry(c, x) != UNDEF for c in self.live() for x in range(self.ncols))

    def relators_close(self) -> bool:
        for c in self.live():
            for w in self.words:
                d = c
                for x in w:
                    d = self.entry(d, x)
                    if d == UNDEF:
                        return False
                if d != c:
                    return False
        return True

    # -- driver --------------------------------------------------------------
    def run(self) -> bool:
        """Run HLT to completion; False if the coset budget ran out."""
        try:
            c = 0
            while c < len(self.parent):
                for w in self.words:
                    if self.parent[c] != c:
                        break
                    self.scan_and_fill(c, w)
                for x in range(self.ncols):
                    if self.parent[c] != c:
                        break
                    if self.table[c * self.ncols + x] == UNDEF:
                        self.define(c, x)
                c += 1
        except _OutOfSpace:
            return False
        return True


def _clean(p: FinitePresentation) -> FinitePresentation:
    rels = tuple(w for w in p.relators if len(w))
    if len(rels) != len(p.relators):
        warnings.warn(f"dropping {len(p.relators) - len(rels)} empty relator(s)", stacklevel=3)
    return FinitePresentation(p.generators, rels)


def enumerate_cosets(p: FinitePresentation, max_cosets: int = 10**5):
    """Group order as :class:`Index`, or :class:`Exhausted` past ``max_cosets``."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    p = _clean(p)
    if not p.generators:
        return Index(1, 1)
    table = CosetTable(p, max_cosets)
    if not table.run():
        return Exhausted(max_cosets, table.defined)
    return Index(len(table.live()), table.defined)


def coset_table(p: FinitePresentation, max_cosets: int = 10**5) -> CosetTable:
    """The finished (or abandoned) table, for inspection."""
    table = CosetTable(_clean(p), max_cosets)
    table.run()
    return table


def certify_trivial(p: FinitePresentation, max_cosets: int = 10**5):
    res = enumerate_cosets(p, max_cosets)
    if isinstance(res, Index):
        if res.k == 1:
            return Certified(res.defined)
        return res
    return res


# ---------------------------------------------------------------------------
# presentation files: "gens <k>" then "rel <signed letters>" lines, generators 1..k

def parse_presentation(text: str) -> FinitePresentation:
    k = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "gens":
            k = int(rest)
        elif head == "rel":
            if k is None:
                raise ValueError(f"line {lineno}: 'rel' before 'gens'")
            rels.append(RelatorWord.parse(rest))
        else:
            raise ValueError(f"line {lineno}: expected 'gens' or 'rel', got {head!r}")
    if k is None:
        raise ValueError("missing 'gens <k>' line")
    return FinitePresentation(tuple(range(1, k + 1)), tuple(rels))


def render_presentation(p: FinitePresentation) -> str:
    """Write ``p`` with its generators renumbered 1..k in listed order."""
    pos = {g: k for k, g in enumerate(p.generators, start=1)}
    lines = [f"gens {len(p.generators)}"]
    for w in p.relators:
        lines.append("rel " + " ".join(("+" if e > 0 else "-") + str(pos[g]) for g, e in w))
    return "\n".join(lines).rstrip() + "\n"

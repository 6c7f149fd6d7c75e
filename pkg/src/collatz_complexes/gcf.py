"""Generalized Collatz functions.

A generalized Collatz function on the positive integers is given by a
modulus ``m`` and one affine branch ``x -> a_i*x + b_i`` (with rational
``a_i``, ``b_i``) per residue class ``x = i (mod m)``.  This module parses
them from a small text format, checks that they really map positive integers
to positive integers, evaluates them exactly and inverts them.

It also defines the function-handle protocol used throughout the package:
anything with ``__call__(x)``, ``preimage(y)`` and a ``name``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

__all__ = [
    "GCFError",
    "GCFSyntaxError",
    "NotTotalError",
    "InfinitePreimageRisk",
    "FunctionHandle",
    "GCF",
    "Successor",
    "TableOverride",
    "ValidationReport",
    "parse_gcf",
    "render_gcf",
    "validate",
    "evaluate",
    "preimage",
    "collatz",
    "successor",
    "constant",
    "four_cycle",
]


class GCFError(ValueError):
    """Base class for malformed or non-total generalized Collatz functions."""


class GCFSyntaxError(GCFError):
    """Raised by :func:`parse_gcf`; carries 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotTotalError(GCFError):
    """The function does not map every positive integer to a positive integer."""

    def __init__(self, report: "ValidationReport"):
        super().__init__(str(report))
        self.report = report


class InfinitePreimageRisk(GCFError):
    """A constant branch hits the requested value on a whole residue class."""


class FunctionHandle:
    """Uniform interface to a self-map of the positive integers.

    Subclasses are immutable, picklable and evaluate exactly.
    """

    kind = "abstract"
    name = "f"

    def __call__(self, x: int) -> int:  # pragma: no cover - interface
        raise NotImplementedError

    def preimage(self, y: int) -> frozenset[int]:  # pragma: no cover - interface
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidationReport:
    accepted: bool
    residue: int | None = None
    witness: int | None = None
    value: Fraction | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def __str__(self) -> str:
        if self.accepted:
            return "ACCEPT"
        return (f"REJECT x={self.witness} gives {_fmt(self.value)} "
                f"(residue {self.residue}: {self.reason})")


def _fmt(q: Fraction | int | None) -> str:
    if q is None:
        return "?"
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _first_positive(residue: int, modulus: int) -> int:
    return residue if residue >= 1 else modulus


def _check_branch(i: int, m: int, a: Fraction, b: Fraction) -> ValidationReport | None:
    """Return a rejection for branch ``i`` or ``None`` if it is total."""
    x0 = _first_positive(i, m)
    period = lcm(a.denominator, b.denominator)
    bad_int = None
    for t in range(period):
        x = x0 + m * t
        v = a * x + b
        if v.denominator != 1:
            bad_int = (x, v)
            break

    if a == 0:
        if b.denominator != 1 or b < 1:
            return ValidationReport(False, i, x0, b, "constant branch must be a positive integer")
        return None

    if a < 0:
        # smallest x in the class with a*x + b < 1
        bound = (b - 1) / (-a)
        x = (bound.numerator // bound.denominator) + 1
        x = max(x, x0)
        x += (i - x) % m
        candidates = [(x, a * x + b, "negative slope")]
        if bad_int is not None:
            candidates.append((bad_int[0], bad_int[1], "non-integral value"))
        x, v, why = min(candidates, key=lambda c: c[0])
        if why == "negative slope":
            why = "negative slope; value not positive"
        return ValidationReport(False, i, x, v, why)

    # a > 0: a*x + b is increasing, so positivity fails first at x0 if at all
    candidates = []
    v0 = a * x0 + b
    if v0 <= 0:
        candidates.append((x0, v0, "value not positive"))
    if bad_int is not None:
        candidates.append((bad_int[0], bad_int[1], "non-integral value"))
    if candidates:
        x, v, why = min(candidates, key=lambda c: c[0])
        return ValidationReport(False, i, x, v, why)
    return None


# ---------------------------------------------------------------------------
# the GCF type

def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, tuple):
        return Fraction(*q)
    return Fraction(q)


@dataclass(frozen=True, eq=False)
class GCF(FunctionHandle):
    """A generalized Collatz function ``x -> a_i x + b_i`` for ``x = i mod m``.

    ``branches[i]`` holds ``(a_i, b_i)`` as :class:`fractions.Fraction`.
    Evaluation validates on first use and raises :class:`NotTotalError` if
    the function is not total into the positive integers.
    """

    modulus: int
    branches: tuple[tuple[Fraction, Fraction], ...]
    name: str = "gcf"
    kind = "gcf"
    _table: list = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus <= 0:
            raise GCFError(f"modulus must be a positive integer, got {self.modulus!r}")
        br = tuple((_as_fraction(a), _as_fraction(b)) for a, b in self.branches)
        if len(br) != self.modulus:
            raise GCFError(f"expected {self.modulus} branches, got {len(br)}")
        object.__setattr__(self, "branches", br)

    def __eq__(self, other):
        if not isinstance(other, GCF):
            return NotImplemented
        return self.modulus == other.modulus and self.branches == other.branches

    def __hash__(self):
        return hash((self.modulus, self.branches))

    def __getstate__(self):
        return {"modulus": self.modulus, "branches": self.branches, "name": self.name}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)
        object.__setattr__(self, "_table", None)

    def validate(self) -> ValidationReport:
        return validate(self)

    def _compiled(self) -> list[tuple[int, int, int]]:
        table = self._table
        if table is None:
            report = validate(self)
            if not report:
                raise NotTotalError(report)
            table = []
            for a, b in self.branches:
                d = lcm(a.denominator, b.denominator)
                table.append((a.numerator * (d // a.denominator),
                              b.numerator * (d // b.denominator), d))
            object.__setattr__(self, "_table", table)
        return table

    def __call__(self, x: int) -> int:
        if x < 1:
            raise ValueError(f"argument must be a positive integer, got {x}")
        A, B, D = self._compiled()[x % self.modulus]
        y = A * x + B
        return y if D == 1 else y // D

    def preimage(self, y: int) -> frozenset[int]:
        self._compiled()
        m = self.modulus
        out = set()
        for i, (a, b) in enumerate(self.branches):
            if a == 0:
                if b == y:
                    raise InfinitePreimageRisk(
                        f"{self.name}: branch {i} is constant {y}; preimage is a residue class")
                continue
            x = (y - b) / a
            if x.denominator == 1 and x >= 1 and x % m == i:
                out.add(int(x))
        return frozenset(out)


def validate(g: GCF) -> ValidationReport:
    """Check integrality and positivity of every branch of ``g``.

    The rejection, if any, names the smallest failing input found.
    """
    failures = []
    for i, (a, b) in enumerate(g.branches):
        r = _check_branch(i, g.modulus, a, b)
        if r is not None:
            failures.append(r)
    if not failures:
        return ValidationReport(True)
    return min(failures, key=lambda r: r.witness)


def evaluate(f: FunctionHandle, x: int) -> int:
    return f(x)


def preimage(f: FunctionHandle, y: int) -> frozenset[int]:
    return f.preimage(y)


# ---------------------------------------------------------------------------
# other handles

@dataclass(frozen=True)
class Successor(FunctionHandle):
    name: str = "successor"
    kind = "builtin-successor"

    def __call__(self, x: int) -> int:
        if x < 1:
            raise ValueError(f"argument must be a positive integer, got {x}")
        return x + 1

    def preimage(self, y: int) -> frozenset[int]:
        return frozenset({y - 1}) if y >= 2 else frozenset()


@dataclass(frozen=True, eq=False)
class TableOverride(FunctionHandle):
    """``base`` with the values on finitely many inputs replaced by ``table``."""

    table: Mapping[int, int]
    base: FunctionHandle
    name: str = "table"
    kind = "table-override"

    def __post_init__(self):
        table = dict(self.table)
        for k, v in table.items():
            if k < 1 or v < 1:
                raise GCFError(f"table entries must be positive integers, got {k}->{v}")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        v = self.table.get(x)
        return self.base(x) if v is None else v

    def preimage(self, y: int) -> frozenset[int]:
        out = {x for x in self.base.preimage(y) if x not in self.table}
        out.update(k for k, v in self.table.items() if v == y)
        return frozenset(out)


# ---------------------------------------------------------------------------
# text format

_NUM = r"[+-]?\s*\d+"
_RAT = rf"(?:\(\s*{_NUM}\s*(?:/\s*\d+\s*)?\)|{_NUM})"
_BRANCH_RE = re.compile(
    rf"""^\s*(?P<res>\d+)\s*:\s*
        (?:(?P<coef>{_RAT})?\s*\*?\s*(?P<x>x))?
        \s*(?:(?P<op>[+-])?\s*(?P<const>{_RAT}))?\s*$""",
    re.VERBOSE,
)
_MOD_RE = re.compile(r"^\s*mod\s+(?P<m>[+-]?\d+)\s*$")


def _parse_rat(tok: str, line: int, col: int) -> Fraction:
    s = tok.replace(" ", "").strip("()")
    if "/" in s:
        p, q = s.split("/")
        if int(q) == 0:
            raise GCFSyntaxError("zero denominator", line, col)
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def _segments(text: str):
    """Yield (line, column, segment) for each ';'- or newline-separated piece."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.replace("−", "-")
        line = raw.split("#", 1)[0]
        start = 0
        for piece in line.split(";"):
            col = start + 1 + (len(piece) - len(piece.lstrip()))
            start += len(piece) + 1
            if piece.strip():
                yield lineno, col, piece.strip()


def parse_gcf(text: str, name: str = "gcf") -> GCF:
    """Parse the ``mod m`` / ``i: <a>x + <b>`` text format.

    Declarations are separated by newlines or ``;``; ``#`` starts a comment.

    >>> parse_gcf("mod 2 ; 0: (1/2)x + 0 ; 1: 3x + 1")(7)
    22
    """
    segs = list(_segments(text))
    if not segs:
        raise GCFSyntaxError("empty input; expected 'mod <m>'", 1, 1)
    line, col, head = segs[0]
    mm = _MOD_RE.match(head)
    if not mm:
        raise GCFSyntaxError(f"expected 'mod <m>', got {head!r}", line, col)
    m = int(mm.group("m"))
    if m <= 0:
        raise GCFSyntaxError(f"modulus must be positive, got {m}", line, col + head.index(mm.group("m")))

    branches: dict[int, tuple[Fraction, Fraction]] = {}
    for line, col, seg in segs[1:]:
        bm = _BRANCH_RE.match(seg)
        if not bm or (bm.group("x") is None and bm.group("const") is None):
            raise GCFSyntaxError(f"cannot parse branch {seg!r}", line, col)
        res = int(bm.group("res"))
        if res >= m:
            raise GCFSyntaxError(f"residue {res} out of range 0..{m - 1}", line, col)
        if res in branches:
            raise GCFSyntaxError(f"duplicate residue {res}", line, col)
        if bm.group("x") is None:
            a = Fraction(0)
        elif bm.group("coef") is None:
            a = Fraction(1)
        else:
            a = _parse_rat(bm.group("coef"), line, col + bm.start("coef"))
        b = Fraction(0)
        if bm.group("const") is not None:
            if bm.group("x") is not None and bm.group("op") is None:
                raise GCFSyntaxError("expected '+' or '-' before constant", line, col + bm.start("const"))
            b = _parse_rat(bm.group("const"), line, col + bm.start("const"))
            if bm.group("op") == "-":
                b = -b
        branches[res] = (a, b)

    missing = [i for i in range(m) if i not in branches]
    if missing:
        line = segs[-1][0]
        raise GCFSyntaxError(f"missing residue {missing[0]}", line, 1)
    return GCF(m, tuple(branches[i] for i in range(m)), name=name)


def _fmt_coef(a: Fraction) -> str:
    if a.denominator == 1:
        return str(a.numerator)
    return f"({a.numerator}/{a.denominator})"


def render_gcf(g: GCF) -> str:
    """Inverse of :func:`parse_gcf` (up to whitespace and comments)."""
    lines = [f"mod {g.modulus}"]
    for i, (a, b) in enumerate(g.branches):
        lines.append(f"{i}: {_fmt_coef(a)}x + {_fmt_coef(b)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-ins

def collatz() -> GCF:
    """The Collatz map: ``n/2`` for even ``n``, ``3n+1`` for odd ``n``."""
    return GCF(2, ((Fraction(1, 2), Fraction(0)), (Fraction(3), Fraction(1))), name="collatz")


def successor() -> Successor:
    return Successor()


def constant(c: int = 1) -> GCF:
    return GCF(1, ((Fraction(0), Fraction(c)),), name=f"const{c}")


def four_cycle() -> TableOverride:
    """1 -> 2 -> 3 -> 4 -> 1, every other ``n`` goes to 1."""
    return TableOverride({1: 2, 2: 3, 3: 4, 4: 1}, constant(1), name="four_cycle")


def cycle_override(cycle: Iterable[int], base: FunctionHandle | None = None,
                   name: str | None = None) -> TableOverride:
    """Prescribe a cycle ``c0 -> c1 -> ... -> c0`` on top of ``base`` (default constant 1)."""
    cycle = list(cycle)
    table = {c: cycle[(k + 1) % len(cycle)] for k, c in enumerate(cycle)}
    return TableOverride(table, base if base is not None else constant(1),
                         name=name or "cycle_" + "_".join(map(str, cycle)))

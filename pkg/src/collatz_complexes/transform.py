"""The bijection ``N+ -> N+ x Z/4`` and the hat-transform of a self-map.

``phi(n) = ((n + 3) // 4, n mod 4)``.  The lifted map fixes the fibre over 1
and otherwise applies ``f`` to the first coordinate while stepping the
``Z/4`` coordinate; conjugating back by ``phi`` gives :func:`hat`.  Orbits of
``f`` through 1 become orbits of ``hat(f)`` ending at a fixed point, while
orbits avoiding 1 keep a period divisible by 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .gcf import FunctionHandle

__all__ = ["PhiPair", "phi", "phi_inv", "lift", "HatFunction", "hat"]


class PhiPair(NamedTuple):
    m: int
    r: int  # residue in 0..3


def phi(n: int) -> PhiPair:
    if n < 1:
        raise ValueError(f"phi is defined on positive integers, got {n}")
    return PhiPair((n + 3) // 4, n % 4)


def phi_inv(m: int | PhiPair, r: int | None = None) -> int:
    """The unique ``n`` in ``4m-3 .. 4m`` with ``n = r (mod 4)``."""
    if r is None:
        m, r = m
    if m < 1:
        raise ValueError(f"first coordinate must be positive, got {m}")
    return 4 * m - ((-r) % 4)


def lift(f: FunctionHandle, p: PhiPair) -> PhiPair:
    """The fibre-augmented map on ``N+ x Z/4``."""
    m, r = p
    if m == 1:
        return PhiPair(1, r % 4)
    return PhiPair(f(m), (r + 1) % 4)


@dataclass(frozen=True)
class HatFunction(FunctionHandle):
    base: FunctionHandle
    kind = "hat-wrapped"

    @property
    def name(self) -> str:
        return f"hat:{self.base.name}"

    def __call__(self, n: int) -> int:
        if n <= 4:
            if n < 1:
                raise ValueError(f"argument must be a positive integer, got {n}")
            return n
        m, r = (n + 3) // 4, n % 4
        return 4 * self.base(m) - ((-r - 1) % 4)

    def preimage(self, y: int) -> frozenset[int]:
        m1, r1 = phi(y)
        r0 = (r1 - 1) % 4
        out = {phi_inv(m, r0) for m in self.base.preimage(m1) if m >= 2}
        if m1 == 1:
            out.add(y)
        return frozenset(out)


def hat(f: FunctionHandle) -> HatFunction:
    return HatFunction(f)

"""Forward-orbit classification with resource budgets.

:func:`classify` runs Brent's cycle detection on a single seed and recovers
the exact preperiod and period.  :func:`scan` produces the same reports for a
whole range of seeds, but reuses the results of earlier seeds so that a
desk-scale verification of the Collatz map stays cheap.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .gcf import FunctionHandle

__all__ = [
    "CYCLE_FOUND",
    "BUDGET_EXHAUSTED",
    "OrbitBudget",
    "OrbitReport",
    "ScanSummary",
    "classify",
    "brent_cost",
    "iter_scan",
    "scan",
    "summarize",
    "small_cycle_census",
    "canonical_cycle",
    "format_reports",
]

CYCLE_FOUND = "CycleFound"
BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass(frozen=True)
class OrbitBudget:
    """Bounds on total function evaluations and on iterate bit length."""

    max_steps: int = 10**6
    max_value_bits: int = 4096

    def __post_init__(self):
        if self.max_steps < 1 or self.max_value_bits < 1:
            raise ValueError("budget bounds must be positive")

    def scaled(self, factor: int = 4, extra_steps: int = 4, extra_bits: int = 2) -> "OrbitBudget":
        return OrbitBudget(factor * self.max_steps + extra_steps, self.max_value_bits + extra_bits)


DEFAULT_BUDGET = OrbitBudget()


@dataclass(frozen=True, slots=True)
class OrbitReport:
    seed: int
    status: str
    preperiod: int | None
    period: int | None
    cycle: tuple[int, ...] | None
    contains_one: bool
    steps_used: int
    max_value_bits: int

    @property
    def found(self) -> bool:
        return self.status == CYCLE_FOUND

    def to_line(self) -> str:
        mu = "-" if self.preperiod is None else str(self.preperiod)
        lam = "-" if self.period is None else str(self.period)
        return "\t".join([str(self.seed), self.status, mu, lam,
                          str(self.contains_one).lower(), str(self.steps_used)])


def canonical_cycle(values: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cycle so that its minimum comes first."""
    k = min(range(len(values)), key=values.__getitem__)
    return tuple(values[k:]) + tuple(values[:k])


def brent_cost(preperiod: int, period: int) -> int:
    """Number of evaluations :func:`classify` spends on an orbit of shape (mu, lambda).

    Phase one ends once the tortoise sits at index ``2**k - 1 >= mu`` with a
    window ``2**k >= lambda``; the hare then needs ``lambda`` more steps.
    Recovering mu costs ``lambda + 2*mu`` and listing the cycle ``lambda - 1``.
    """
    power = 1
    while power - 1 < preperiod or power < period:
        power *= 2
    return (power - 1 + period) + (period + 2 * preperiod) + (period - 1)


class _Exhausted(Exception):
    pass


def classify(f: FunctionHandle, seed: int, budget: OrbitBudget = DEFAULT_BUDGET) -> OrbitReport:
    """Classify the forward orbit of ``seed`` under ``f``.

    Returns a ``CycleFound`` report with exact preperiod, period and the
    canonical cycle if the orbit closes within the budget, otherwise a
    ``BudgetExhausted`` report.  Every evaluation of ``f`` counts against
    ``budget.max_steps``, across all phases.
    """
    if seed < 1:
        raise ValueError(f"seed must be a positive integer, got {seed}")
    max_steps = budget.max_steps
    max_bits = budget.max_value_bits
    steps = 0
    top_bits = seed.bit_length()
    saw_one = seed == 1

    def exhausted() -> OrbitReport:
        return OrbitReport(seed, BUDGET_EXHAUSTED, None, None, None, saw_one, steps, top_bits)

    if top_bits > max_bits:
        return exhausted()

    # phase 1: Brent's power-of-two tortoise
    power = lam = 1
    tortoise = seed
    if max_steps < 1:
        return exhausted()
    hare = f(seed)
    steps = 1
    b = hare.bit_length()
    if b > top_bits:
        top_bits = b
    if hare == 1:
        saw_one = True
    if b > max_bits:
        return exhausted()
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        if steps >= max_steps:
            return exhausted()
        hare = f(hare)
        steps += 1
        b = hare.bit_length()
        if b > top_bits:
            top_bits = b
            if b > max_bits:
                return exhausted()
        if hare == 1:
            saw_one = True
        lam += 1

    # phase 2: exact preperiod
    if steps + lam > max_steps:
        steps = max_steps
        return exhausted()
    tortoise = hare = seed
    for _ in range(lam):
        hare = f(hare)
    steps += lam
    mu = 0
    while tortoise != hare:
        if steps + 2 > max_steps:
            steps = max_steps
            return exhausted()
        tortoise = f(tortoise)
        hare = f(hare)
        steps += 2
        mu += 1

    # phase 3: list the cycle
    if steps + lam - 1 > max_steps:
        steps = max_steps
        return exhausted()
    values = [tortoise]
    x = tortoise
    for _ in range(lam - 1):
        x = f(x)
        values.append(x)
    steps += lam - 1
    cycle = canonical_cycle(values)
    contains_one = saw_one or 1 in cycle
    return OrbitReport(seed, CYCLE_FOUND, mu, lam, cycle, contains_one, steps, top_bits)


# ---------------------------------------------------------------------------
# batch scanning

def _scan_chunk(f: FunctionHandle, lo: int, hi: int, budget: OrbitBudget) -> list[OrbitReport]:
    return list(_iter_chunk(f, lo, hi, budget))


def _iter_chunk(f: FunctionHandle, lo: int, hi: int, budget: OrbitBudget) -> Iterator[OrbitReport]:
    """Reports for seeds ``lo..hi`` identical to ``classify`` but memoized.

    Each orbit is walked until it meets (a) an element of an already known
    cycle, (b) a seed of this range classified earlier, or (c) itself.  The
    true (mu, lambda, max bits, contains-one) of the seed follows from the
    stopping point; ``brent_cost`` then tells whether ``classify`` would
    have fit in the budget.  Seeds that would not are handed to ``classify``.
    """
    max_steps = budget.max_steps
    max_bits = budget.max_value_bits
    size = hi - lo + 1
    memo_mu = [-1] * size
    memo_cyc = [0] * size
    memo_bits = [0] * size
    memo_one = [False] * size

    cycle_of: dict[int, int] = {}
    cycles: list[tuple[int, ...]] = []
    cycle_bits: list[int] = []
    cycle_one: list[bool] = []

    for seed in range(lo, hi + 1):
        path: dict[int, int] = {}
        x = seed
        k = 0
        bits = 0
        one = False
        ok = True
        mu = cid = None
        while True:
            c = cycle_of.get(x)
            if c is not None:
                mu, cid = k, c
                bits = max(bits, cycle_bits[c])
                one = one or cycle_one[c]
                break
            if lo <= x <= hi and x != seed and memo_mu[x - lo] >= 0:
                j = x - lo
                mu, cid = k + memo_mu[j], memo_cyc[j]
                bits = max(bits, memo_bits[j])
                one = one or memo_one[j]
                break
            j = path.get(x)
            if j is not None:
                vals = list(path)[j:]
                cyc = canonical_cycle(vals)
                cid = len(cycles)
                cycles.append(cyc)
                cycle_bits.append(max(v.bit_length() for v in cyc))
                cycle_one.append(1 in cyc)
                for v in cyc:
                    cycle_of[v] = cid
                mu = j
                break
            if k >= max_steps:
                ok = False
                break
            b = x.bit_length()
            if b > max_bits:
                ok = False
                break
            if b > bits:
                bits = b
            if x == 1:
                one = True
            path[x] = k
            x = f(x)
            k += 1

        if not ok:
            yield classify(f, seed, budget)
            continue
        lam = len(cycles[cid])
        if mu > 0:
            i = seed - lo
            memo_mu[i] = mu
            memo_cyc[i] = cid
            memo_bits[i] = bits
            memo_one[i] = one
        cost = brent_cost(mu, lam)
        if cost > max_steps or bits > max_bits:
            yield classify(f, seed, budget)
        else:
            yield OrbitReport(seed, CYCLE_FOUND, mu, lam, cycles[cid], one, cost, bits)


def iter_scan(f: FunctionHandle, seeds: range, budget: OrbitBudget = DEFAULT_BUDGET,
              workers: int = 1, chunk: int = 50_000) -> Iterator[OrbitReport]:
    """Yield one report per seed of ``seeds``, in seed order.

    ``seeds`` must be a contiguous range of positive integers.  With
    ``workers > 1`` chunks of the range are classified in separate
    processes (``f`` must be picklable; all handles in this package are).
    """
    if len(seeds) == 0:
        raise ValueError("empty seed range")
    if seeds.step != 1 or seeds.start < 1:
        raise ValueError("seeds must be a contiguous range of positive integers")
    lo, hi = seeds.start, seeds.stop - 1
    if workers <= 1 or len(seeds) <= chunk:
        yield from _iter_chunk(f, lo, hi, budget)
        return
    bounds = [(a, min(a + chunk - 1, hi)) for a in range(lo, hi + 1, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_scan_chunk, f, a, b, budget) for a, b in bounds]
        for fut in futures:
            yield from fut.result()


@dataclass
class ScanSummary:
    total: int = 0
    cycle_found: int = 0
    exhausted: int = 0
    max_preperiod: int = 0
    max_period: int = 0
    max_value_bits: int = 0
    long_period_seeds: list[int] = field(default_factory=list)
    missing_one_seeds: list[int] = field(default_factory=list)
    exhausted_seeds: list[int] = field(default_factory=list)
    cycles: set[tuple[int, ...]] = field(default_factory=set)

    def add(self, r: OrbitReport) -> None:
        self.total += 1
        self.max_value_bits = max(self.max_value_bits, r.max_value_bits)
        if r.found:
            self.cycle_found += 1
            self.max_preperiod = max(self.max_preperiod, r.preperiod)
            self.max_period = max(self.max_period, r.period)
            self.cycles.add(r.cycle)
            if r.period > 3:
                self.long_period_seeds.append(r.seed)
            if not r.contains_one:
                self.missing_one_seeds.append(r.seed)
        else:
            self.exhausted += 1
            self.exhausted_seeds.append(r.seed)

    def to_text(self) -> str:
        def seeds(xs):
            return " ".join(map(str, xs[:20])) + (" ..." if len(xs) > 20 else "") if xs else "none"
        lines = [
            f"total\t{self.total}",
            f"{CYCLE_FOUND}\t{self.cycle_found}",
            f"{BUDGET_EXHAUSTED}\t{self.exhausted}",
            f"max_preperiod\t{self.max_preperiod}",
            f"max_period\t{self.max_period}",
            f"max_value_bits\t{self.max_value_bits}",
            f"period_gt_3\t{seeds(self.long_period_seeds)}",
            f"cycle_without_1\t{seeds(self.missing_one_seeds)}",
        ]
        return "\n".join(lines)


def summarize(reports: Iterable[OrbitReport]) -> ScanSummary:
    s = ScanSummary()
    for r in reports:
        s.add(r)
    return s


def scan(f: FunctionHandle, seeds: range, budget: OrbitBudget = DEFAULT_BUDGET,
         workers: int = 1) -> tuple[list[OrbitReport], ScanSummary]:
    reports = list(iter_scan(f, seeds, budget, workers=workers))
    return reports, summarize(reports)


def format_reports(reports: Iterable[OrbitReport], summary: ScanSummary | None = None) -> str:
    reports = list(reports)
    lines = [r.to_line() for r in reports]
    if summary is None:
        summary = summarize(reports)
    return "\n".join(lines) + "\n\n" + summary.to_text() + "\n"


def small_cycle_census(f: FunctionHandle, bound: int, k_max: int) -> set[int]:
    """All ``n <= bound`` with ``f^k(n) == n`` for some ``1 <= k <= k_max``."""
    if bound < 1 or k_max < 1:
        raise ValueError("bound and k_max must be positive")
    found = set()
    for n in range(1, bound + 1):
        x = n
        for _ in range(k_max):
            x = f(x)
            if x == n:
                found.add(n)
                break
    return found


def default_workers() -> int:
    return os.cpu_count() or 1

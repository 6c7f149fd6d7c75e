"""Semi-decision procedures with checkable certificates.

Positive verdicts here are evidence only: ``NO_VIOLATION_FOUND`` says that
every tested orbit behaved, never that the infinite complex is contractible
or the graph connected.  Negative verdicts carry a certificate that is
re-verified by plain iteration before it is reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .complexes import Graph, PresentationComplex, build_Gamma, build_P, build_Q
from .gcf import GCF, FunctionHandle, InfinitePreimageRisk, collatz
from .homology import Exceeded, FiniteComponent, component_is_closed, finite_component
from .orbit import DEFAULT_BUDGET, OrbitBudget, OrbitReport, ScanSummary, classify, iter_scan
from .transform import HatFunction, hat, phi_inv

__all__ = [
    "CERTIFIED_NOT_CONTRACTIBLE",
    "CERTIFIED_DISCONNECTED",
    "NO_VIOLATION_FOUND",
    "INCONCLUSIVE",
    "CycleCertificate",
    "ComponentCertificate",
    "ContractibilityReport",
    "ConnectivityReport",
    "decide_contractibility",
    "decide_connectivity",
    "GCPReduction",
    "gcp_reduce",
    "hat_coherence_exceptions",
    "CollatzSummary",
    "collatz_verify",
]

CERTIFIED_NOT_CONTRACTIBLE = "CERTIFIED_NOT_CONTRACTIBLE"
CERTIFIED_DISCONNECTED = "CERTIFIED_DISCONNECTED"
NO_VIOLATION_FOUND = "NO_VIOLATION_FOUND"
INCONCLUSIVE = "INCONCLUSIVE"


def _range_text(seeds: range) -> str:
    return f"{seeds.start}..{seeds.stop - 1}"


@dataclass(frozen=True)
class CycleCertificate:
    seed: int
    preperiod: int
    cycle: tuple[int, ...]

    @property
    def period(self) -> int:
        return len(self.cycle)

    def verify(self, f: FunctionHandle) -> bool:
        """Re-check by plain iteration, independently of the cycle detector."""
        x = self.seed
        for _ in range(self.preperiod):
            x = f(x)
        if x not in self.cycle:
            return False
        y = self.cycle[0]
        for k in range(1, self.period + 1):
            y = f(y)
            if k < self.period and y != self.cycle[k]:
                return False
        if y != self.cycle[0] or len(set(self.cycle)) != self.period:
            return False
        # the preperiod is minimal: one step earlier was not yet on the cycle
        if self.preperiod > 0:
            x = self.seed
            for _ in range(self.preperiod - 1):
                x = f(x)
            if x in self.cycle:
                return False
        return True

    def to_text(self) -> str:
        return (f"certificate: seed {self.seed} preperiod {self.preperiod} period {self.period}\n"
                f"cycle: {' '.join(map(str, self.cycle))}")


@dataclass(frozen=True)
class ComponentCertificate:
    vertices: frozenset[int]

    def verify(self, f: FunctionHandle) -> bool:
        return bool(self.vertices) and component_is_closed(f, self.vertices)

    def to_text(self) -> str:
        return "certificate: finite component " + " ".join(f"v{v}" for v in sorted(self.vertices))


@dataclass
class _Report:
    function: str
    seeds: range
    budget: OrbitBudget
    verdict: str
    certificate: CycleCertificate | ComponentCertificate | None = None
    exhausted_seeds: list[int] = field(default_factory=list)
    violating_seeds: list[int] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f"function: {self.function}",
            f"seeds: {_range_text(self.seeds)}",
            f"budget: max_steps={self.budget.max_steps} max_value_bits={self.budget.max_value_bits}",
            f"verdict: {self.verdict}",
        ]
        if self.certificate is not None:
            lines.append(self.certificate.to_text())
        lines += [f"exhausted\t{s}" for s in self.exhausted_seeds]
        lines += [f"violating\t{s}" for s in self.violating_seeds]
        return "\n".join(lines) + "\n"


class ContractibilityReport(_Report):
    pass


class ConnectivityReport(_Report):
    pass


def decide_contractibility(f: FunctionHandle, seeds: range,
                           budget: OrbitBudget = DEFAULT_BUDGET) -> ContractibilityReport:
    """Look for an orbit whose eventual period exceeds 3.

    Such an orbit makes the presentation complex of ``f`` non-contractible.
    """
    cert = None
    exhausted, violating = [], []
    for r in iter_scan(f, seeds, budget):
        if not r.found:
            exhausted.append(r.seed)
        elif r.period > 3:
            violating.append(r.seed)
            if cert is None:
                c = CycleCertificate(r.seed, r.preperiod, r.cycle)
                if c.verify(f):
                    cert = c
    if cert is not None:
        verdict = CERTIFIED_NOT_CONTRACTIBLE
    elif exhausted:
        verdict = INCONCLUSIVE
    else:
        verdict = NO_VIOLATION_FOUND
    return ContractibilityReport(f.name, seeds, budget, verdict, cert, exhausted, violating)


def decide_connectivity(g: FunctionHandle, seeds: range, budget: OrbitBudget = DEFAULT_BUDGET,
                        component_probe: int | None = None) -> ConnectivityReport:
    """Look for an orbit that never reaches 1, or a finite graph component.

    A verified cycle avoiding 1 disconnects the orbit graph.  With
    ``component_probe`` set, seeds whose orbits did not close are also
    tested for lying in a finite component of at most that many vertices;
    any finite component disconnects the (infinite) graph.
    """
    cert = None
    exhausted, violating, unsettled = [], [], []
    for r in iter_scan(g, seeds, budget):
        if not r.found:
            unsettled.append(r.seed)
        if r.found and not r.contains_one:
            violating.append(r.seed)
            if cert is None:
                c = CycleCertificate(r.seed, r.preperiod, r.cycle)
                if c.verify(g) and 1 not in c.cycle:
                    cert = c
        elif not r.found and not r.contains_one:
            exhausted.append(r.seed)
    if cert is None and component_probe:
        for s in unsettled:
            try:
                comp = finite_component(g, s, component_probe)
            except InfinitePreimageRisk:
                break
            if isinstance(comp, FiniteComponent):
                c = ComponentCertificate(comp.vertices)
                if c.verify(g):
                    cert = c
                    break
    if cert is not None:
        verdict = CERTIFIED_DISCONNECTED
    elif exhausted:
        verdict = INCONCLUSIVE
    else:
        verdict = NO_VIOLATION_FOUND
    return ConnectivityReport(g.name, seeds, budget, verdict, cert, exhausted, violating)


# ---------------------------------------------------------------------------
# the reduction from "every orbit of g contains 1"

def hat_coherence_exceptions(g: FunctionHandle, seeds: Iterable[int],
                      budget: OrbitBudget = DEFAULT_BUDGET) -> list[tuple[int, str]]:
    """Seeds where the orbit behaviour of ``g`` and ``hat(g)`` disagree.

    For each seed ``s``: the ``g``-orbit contains 1 within ``budget`` iff all
    four ``hat(g)``-orbits of ``phi_inv(s, r)`` close with period <= 3 within
    the scaled budget; and a verified ``g``-cycle avoiding 1 forces every
    such ``hat(g)`` period to be a multiple of 4.
    """
    gh = hat(g)
    hb = budget.scaled()
    bad = []
    for s in seeds:
        r = classify(g, s, budget)
        lifted = [classify(gh, phi_inv(s, k), hb) for k in range(4)]
        short = all(h.found and h.period <= 3 for h in lifted)
        if r.contains_one != short:
            bad.append((s, "contains-1 / short-period mismatch"))
        if r.found and not r.contains_one:
            if not all(h.found and h.period % 4 == 0 for h in lifted):
                bad.append((s, "lifted period not divisible by 4"))
    return bad


@dataclass(frozen=True)
class GCPReduction:
    g: FunctionHandle
    ghat: HatFunction
    P_hat: PresentationComplex
    Gamma: Graph
    Q: PresentationComplex

    def hat_coherence_exceptions(self, seeds: Iterable[int], budget: OrbitBudget = DEFAULT_BUDGET):
        return hat_coherence_exceptions(self.g, seeds, budget)

    def describe(self, cells: int = 12) -> str:
        lines = [f"reduce {self.g.name}", f"hat: {self.ghat.name}"]
        lines += [f"P(hat) rel {i}: {self.P_hat.relator(i)}" for i in range(1, cells + 1)]
        lines += [f"Gamma edge {i}: {' '.join(map(str, self.Gamma.edge(i)))}" for i in range(1, cells + 1)]
        lines += [f"Q rel {i}: {self.Q.relator(i)}".rstrip() for i in range(1, cells + 1)]
        return "\n".join(lines) + "\n"


def gcp_reduce(g: FunctionHandle) -> GCPReduction:
    if isinstance(g, GCF):
        report = g.validate()
        if not report:
            from .gcf import NotTotalError
            raise NotTotalError(report)
    gh = hat(g)
    return GCPReduction(g, gh, build_P(gh), build_Gamma(g), build_Q(g))


# ---------------------------------------------------------------------------
# desk-scale Collatz check

@dataclass
class CollatzSummary:
    upto: range
    summary: ScanSummary
    counterexamples: list[OrbitReport]

    @property
    def all_reach_one(self) -> bool:
        s = self.summary
        return (s.exhausted == 0 and s.cycles == {(1, 4, 2)} and not self.counterexamples)

    def to_text(self) -> str:
        s = self.summary
        lines = [
            f"collatz verify {_range_text(self.upto)}",
            f"seeds: {s.total}",
            f"cycles: {' | '.join(' '.join(map(str, c)) for c in sorted(s.cycles))}",
            f"max_preperiod: {s.max_preperiod}",
            f"max_value_bits: {s.max_value_bits}",
            f"exhausted: {s.exhausted}",
            "result: all seeds reach cycle (1 4 2), period 3" if self.all_reach_one
            else "result: NOT all seeds verified",
        ]
        lines += [f"counterexample\t{r.to_line()}" for r in self.counterexamples]
        return "\n".join(lines) + "\n"


def collatz_verify(N: int | range, budget: OrbitBudget = DEFAULT_BUDGET,
                   workers: int = 1) -> CollatzSummary:
    seeds = range(1, N + 1) if isinstance(N, int) else N
    if len(seeds) == 0 or seeds.start < 1:
        raise ValueError("need a non-empty range of positive seeds")
    C = collatz()
    s = ScanSummary()
    bad = []
    for r in iter_scan(C, seeds, budget, workers=workers):
        s.add(r)
        if r.found and r.cycle != (1, 4, 2):
            bad.append(r)
    return CollatzSummary(seeds, s, bad)

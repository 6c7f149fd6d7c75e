"""Collatz-type dynamics, their presentation 2-complexes, and certificates.

Subpackages follow the pipeline: ``gcf`` (functions) -> ``orbit``
(classification) -> ``transform`` (hat-transform) -> ``complexes``
(P(f), Q(f), Gamma(f), B(n), H(n)) -> ``homology`` / ``coset`` /
``simplicial`` (exact checks) -> ``decider`` (semi-decision procedures).
"""
from .gcf import (GCF, FunctionHandle, Successor, TableOverride, collatz, constant,
                  cycle_override, four_cycle, parse_gcf, render_gcf, successor, validate)
from .orbit import OrbitBudget, OrbitReport, classify, iter_scan, scan, small_cycle_census
from .transform import hat, phi, phi_inv
from .complexes import (build_B, build_B_killed, build_Gamma, build_H, build_P, build_Q,
                        orbit_closure, truncate)
from .homology import finite_component, smith_normal_form, toph_stream
from .coset import FinitePresentation, certify_trivial, enumerate_cosets
from .simplicial import (euler_characteristic, presentation_to_simplicial,
                         simplicial_to_presentation)
from .decider import collatz_verify, decide_connectivity, decide_contractibility, gcp_reduce

__version__ = "0.1.0"

"""Command-line interface: ``collatz-complexes <group> <command> ...``.

Function references accepted wherever ``FN`` appears:

    collatz | C             the Collatz map
    successor | S           n -> n + 1
    const<k>                constant map
    four_cycle              1->2->3->4->1, everything else -> 1
    cycle:5,6,7             prescribed cycle, everything else -> 1
    table:1=2,2=1[@FN]      finite override of FN (default const1)
    hat:FN                  hat-transform of FN
    gcf:<text>              inline GCF source, ';' separated
    <path>.gcf | file:<path>  GCF source file ('-' for stdin)

Exit codes: 0 done (including Exhausted / INCONCLUSIVE), 2 usage,
3 parse or validation failure, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from contextlib import contextmanager

from . import coset, complexes, decider, gcf, homology, orbit, simplicial, transform

EXIT_USAGE, EXIT_INPUT, EXIT_IO = 2, 3, 4


class InputError(Exception):
    pass


class IOFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise IOFailure(str(exc)) from exc


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOFailure(str(exc)) from exc


def _load_gcf(text: str, name: str) -> gcf.GCF:
    try:
        g = gcf.parse_gcf(text, name=name)
    except gcf.GCFError as exc:
        raise InputError(str(exc)) from exc
    report = gcf.validate(g)
    if not report:
        raise InputError(str(report))
    return g


def resolve_function(ref: str) -> gcf.FunctionHandle:
    ref = ref.strip()
    low = ref.lower()
    if low in ("collatz", "c"):
        return gcf.collatz()
    if low in ("successor", "s"):
        return gcf.successor()
    if low == "four_cycle":
        return gcf.four_cycle()
    if low.startswith("const") and low[5:].isdigit():
        return gcf.constant(int(low[5:]))
    if low.startswith("hat:"):
        return transform.hat(resolve_function(ref[4:]))
    if low.startswith("cycle:"):
        try:
            values = [int(v) for v in ref[6:].split(",")]
        except ValueError as exc:
            raise InputError(f"bad cycle reference {ref!r}") from exc
        return gcf.cycle_override(values)
    if low.startswith("table:"):
        body, _, base = ref[6:].partition("@")
        try:
            table = dict((int(a), int(b)) for a, b in (kv.split("=") for kv in body.split(",")))
        except ValueError as exc:
            raise InputError(f"bad table reference {ref!r}") from exc
        return gcf.TableOverride(table, resolve_function(base) if base else gcf.constant(1), name=ref)
    if low.startswith("gcf:"):
        return _load_gcf(ref[4:], name="gcf")
    path = ref[5:] if low.startswith("file:") else ref
    if path == "-" or os.path.exists(path):
        name = os.path.splitext(os.path.basename(path))[0] if path != "-" else "stdin"
        return _load_gcf(_read(path), name=name)
    raise InputError(f"unknown function reference {ref!r}")


def parse_range(text: str) -> range:
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError as exc:
        raise InputError(f"bad range {text!r}; expected a..b") from exc
    if lo < 1 or hi < lo:
        raise InputError(f"bad range {text!r}")
    return range(lo, hi + 1)


def parse_int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ".." in part:
            out.extend(parse_range(part))
        else:
            out.append(int(part))
    return out


def _budget(args) -> orbit.OrbitBudget:
    return orbit.OrbitBudget(args.max_steps, args.max_bits)


def _add_budget(p, steps=10**6):
    p.add_argument("--max-steps", type=int, default=steps)
    p.add_argument("--max-bits", type=int, default=4096)


def _threads(args) -> int:
    return args.threads if args.threads else orbit.default_workers()


@contextmanager
def _stats(args, label):
    t = time.perf_counter()
    yield
    if getattr(args, "stats", False):
        args.timed = True
        print(f"[{label}] {time.perf_counter() - t:.3f}s", file=sys.stderr)


def _complex_from_args(args):
    """Build the complex named by KIND [N] / --fn for complex/homology/simplicial commands."""
    kind = args.kind
    if kind is None:
        raise InputError("missing complex kind (P, Q, Gamma, B or H)")
    if kind in ("B", "H"):
        if args.n is None:
            raise InputError(f"{kind} needs a size n")
        return (complexes.build_B if kind == "B" else complexes.build_H)(args.n)
    if args.fn is None:
        raise InputError(f"{kind} needs --fn")
    f = resolve_function(args.fn)
    return {"P": complexes.build_P, "Q": complexes.build_Q, "Gamma": complexes.build_Gamma}[kind](f)


def _cells_from_args(args, X):
    if isinstance(X, complexes.PresentationComplex) and X.is_finite:
        return None
    if getattr(args, "closure", None):
        return complexes.orbit_closure(X.f, parse_int_list(args.closure), _budget(args))
    if getattr(args, "cells", None):
        return parse_int_list(args.cells)
    raise InputError("infinite complex: pass --closure SEEDS or --cells a..b")


def _chain_text(K: complexes.ChainComplex) -> str:
    lines = [f"dims {' '.join(map(str, K.dims))}"]
    for d, cols in ((1, K.boundary1), (2, K.boundary2)):
        rows = K.labels[d - 1]
        for lab, col in zip(K.labels[d], cols):
            entries = " ".join(f"{rows[i]}:{v}" for i, v in sorted(col.items()))
            lines.append(f"d{d} {lab}: {entries}".rstrip())
    return "\n".join(lines) + "\n"


def _presentation_from_args(args) -> coset.FinitePresentation:
    if args.file:
        try:
            return coset.parse_presentation(_read(args.file))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    if args.family is None or args.n is None:
        raise InputError("give a family (H n, B n, Bkilled n) or --file")
    fam = args.family
    if fam == "H":
        return complexes.build_H(args.n).presentation()
    if fam == "B":
        return complexes.build_B(args.n).presentation()
    if fam.lower() == "bkilled":
        return complexes.build_B_killed(args.n)
    raise InputError(f"unknown family {fam!r}")


# ---------------------------------------------------------------------------
# commands

def cmd_gcf_check(args):
    text = _read(args.file)
    try:
        g = gcf.parse_gcf(text)
    except gcf.GCFError as exc:
        print(f"ERROR {exc}")
        return EXIT_INPUT
    report = gcf.validate(g)
    print(report)
    return 0 if report else EXIT_INPUT


def cmd_gcf_eval(args):
    f = resolve_function(args.fn)
    for x in args.x:
        print(f(x))
    return 0


def cmd_gcf_preimage(args):
    f = resolve_function(args.fn)
    try:
        pre = f.preimage(args.y)
    except gcf.InfinitePreimageRisk as exc:
        raise InputError(str(exc)) from exc
    print(" ".join(map(str, sorted(pre))))
    return 0


def cmd_orbit_classify(args):
    f = resolve_function(args.fn)
    r = orbit.classify(f, args.seed, _budget(args))
    lines = [r.to_line(), f"max_value_bits\t{r.max_value_bits}"]
    if r.found:
        lines.append("cycle\t" + " ".join(map(str, r.cycle)))
    print("\n".join(lines))
    return 0


def cmd_orbit_scan(args):
    f = resolve_function(args.fn)
    with _stats(args, "scan"):
        reports, summary = orbit.scan(f, parse_range(args.seeds), _budget(args), workers=_threads(args))
    _write(orbit.format_reports(reports, summary), args.output)
    return 0


def cmd_orbit_census(args):
    f = resolve_function(args.fn)
    found = orbit.small_cycle_census(f, args.bound, args.k_max)
    print(" ".join(map(str, sorted(found))))
    return 0


def cmd_hat_eval(args):
    f = transform.hat(resolve_function(args.fn))
    for n in args.n:
        print(f(n))
    return 0


def cmd_hat_wrap(args):
    f = transform.hat(resolve_function(args.fn))
    lines = [f"handle {f.name}"]
    for n in range(1, args.show + 1):
        m, r = transform.phi(n)
        lines.append(f"{n}\t({m},{r})\t{f(n)}")
    print("\n".join(lines))
    return 0


def cmd_complex_build(args):
    X = _complex_from_args(args)
    if isinstance(X, complexes.Graph):
        upto = args.upto
        print(X.header())
        print(f"edges e1..e{upto}: {sum(X.is_loop(i) for i in range(1, upto + 1))} loops")
        return 0
    if X.is_finite:
        p = X.presentation()
    else:
        cells = _cells_from_args(args, X) if (args.closure or args.cells) else range(1, args.upto + 1)
        p = X.presentation(cells)
    degenerate = sum(1 for w in p.relators if len(w) == 0)
    print(X.header())
    print(f"generators {len(p.generators)}")
    print(f"relators {len(p.relators)}")
    print(f"degenerate {degenerate}")
    print(f"euler {1 - len(p.generators) + len(p.relators)}")
    return 0


def cmd_complex_export(args):
    X = _complex_from_args(args)
    if isinstance(X, complexes.Graph):
        cells = _cells_from_args(args, X) if (args.closure or args.cells) else range(1, args.upto + 1)
        _write(complexes.export_graph(X, cells), args.output)
        return 0
    cells = None
    if not X.is_finite:
        cells = _cells_from_args(args, X) if (args.closure or args.cells) else range(1, args.upto + 1)
    _write(complexes.export_complex(X, cells), args.output)
    return 0


def cmd_complex_truncate(args):
    X = _complex_from_args(args)
    S = _cells_from_args(args, X)
    try:
        K = complexes.truncate(X, S)
    except complexes.NotClosed as exc:
        raise InputError(str(exc)) from exc
    _write(_chain_text(K), args.output)
    return 0


def cmd_homology_compute(args):
    X = _complex_from_args(args)
    S = _cells_from_args(args, X)
    try:
        K = complexes.truncate(X, S)
    except complexes.NotClosed as exc:
        raise InputError(str(exc)) from exc
    _write(homology.homology(K).to_text(), args.output)
    return 0


def cmd_homology_toph(args):
    X = _complex_from_args(args)
    res = homology.toph_stream(homology.boundary_columns(X), args.max_cells)
    print(res.to_text())
    return 0


def cmd_homology_component(args):
    f = resolve_function(args.fn)
    try:
        res = homology.finite_component(f, args.start, args.max_vertices)
    except gcf.InfinitePreimageRisk as exc:
        raise InputError(str(exc)) from exc
    print(res.to_text())
    return 0


def cmd_tc(args, certify: bool):
    p = _presentation_from_args(args)
    with _stats(args, "tc"):
        res = coset.certify_trivial(p, args.max_cosets) if certify else coset.enumerate_cosets(p, args.max_cosets)
    if isinstance(res, coset.Index) and certify:
        print(f"Not trivial: index {res.k}")
    else:
        print(res.to_text())
    return 0


def cmd_simplicial_convert(args):
    if args.file:
        p = _presentation_from_args(args)
    else:
        X = _complex_from_args(args)
        p = X.presentation() if X.is_finite else X.presentation(_cells_from_args(args, X))
    try:
        K = simplicial.presentation_to_simplicial(p)
    except simplicial.EmptyRelator as exc:
        raise InputError(str(exc)) from exc
    _write(simplicial.export_simplicial(K), args.output)
    return 0


def cmd_simplicial_fromsc(args):
    try:
        K = simplicial.parse_simplicial(_read(args.sc))
        p = simplicial.simplicial_to_presentation(K)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _write(coset.render_presentation(p), args.output)
    return 0


def cmd_simplicial_euler(args):
    if args.sc:
        try:
            K = simplicial.parse_simplicial(_read(args.sc))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        print(simplicial.euler_characteristic(K))
        return 0
    X = _complex_from_args(args)
    p = X.presentation() if X.is_finite else X.presentation(_cells_from_args(args, X))
    print(simplicial.euler_characteristic(p))
    return 0


def cmd_decide(args, which: str):
    f = resolve_function(args.fn)
    seeds = parse_range(args.seeds)
    with _stats(args, "decide"):
        if which == "contract":
            rep = decider.decide_contractibility(f, seeds, _budget(args))
        else:
            rep = decider.decide_connectivity(f, seeds, _budget(args), component_probe=args.probe)
    _write(rep.to_text(), args.output)
    return 0


def cmd_reduce(args):
    g = resolve_function(args.fn)
    bundle = decider.gcp_reduce(g)
    _write(bundle.describe(args.cells), args.output)
    return 0


def cmd_collatz_verify(args):
    with _stats(args, "collatz"):
        res = decider.collatz_verify(args.upto, _budget(args), workers=_threads(args))
    _write(res.to_text(), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="collatz-complexes", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = ap.add_subparsers(dest="group", required=True)

    def sub(group, name, func, **kw):
        p = group.add_parser(name, **kw)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", default=None, help="output path ('-' = stdout)")
        p.add_argument("--stats", action="store_true", help="print timing to stderr")
        return p

    def complex_args(p):
        p.add_argument("kind", nargs="?", choices=["P", "Q", "Gamma", "B", "H"])
        p.add_argument("n", nargs="?", type=int, default=None)
        p.add_argument("--fn", default=None)
        p.add_argument("--closure", default=None, help="seeds whose orbit closure to use")
        p.add_argument("--cells", default=None, help="explicit cells, e.g. 1..20")
        _add_budget(p)

    g = groups.add_parser("gcf").add_subparsers(dest="cmd", required=True)
    p = sub(g, "check", cmd_gcf_check)
    p.add_argument("file")
    p = sub(g, "eval", cmd_gcf_eval)
    p.add_argument("--fn", required=True)
    p.add_argument("x", nargs="+", type=int)
    p = sub(g, "preimage", cmd_gcf_preimage)
    p.add_argument("--fn", required=True)
    p.add_argument("y", type=int)

    g = groups.add_parser("orbit").add_subparsers(dest="cmd", required=True)
    p = sub(g, "classify", cmd_orbit_classify)
    p.add_argument("--fn", required=True)
    p.add_argument("seed", type=int)
    _add_budget(p)
    p = sub(g, "scan", cmd_orbit_scan)
    p.add_argument("--fn", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--threads", type=int, default=0)
    _add_budget(p)
    p = sub(g, "census", cmd_orbit_census)
    p.add_argument("fn")
    p.add_argument("bound", type=int)
    p.add_argument("k_max", type=int)

    g = groups.add_parser("hat").add_subparsers(dest="cmd", required=True)
    p = sub(g, "eval", cmd_hat_eval)
    p.add_argument("--fn", required=True)
    p.add_argument("n", nargs="+", type=int)
    p = sub(g, "wrap", cmd_hat_wrap)
    p.add_argument("fn")
    p.add_argument("--show", type=int, default=16)

    g = groups.add_parser("complex").add_subparsers(dest="cmd", required=True)
    for name, func in (("build", cmd_complex_build), ("export", cmd_complex_export),
                       ("truncate", cmd_complex_truncate)):
        p = sub(g, name, func)
        complex_args(p)
        p.add_argument("--upto", type=int, default=10)

    g = groups.add_parser("homology").add_subparsers(dest="cmd", required=True)
    p = sub(g, "compute", cmd_homology_compute)
    complex_args(p)
    p = sub(g, "toph", cmd_homology_toph)
    complex_args(p)
    p.add_argument("--max-cells", type=int, default=1000)
    p = sub(g, "component", cmd_homology_component)
    p.add_argument("--fn", required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--max-vertices", type=int, default=10**4)

    g = groups.add_parser("tc").add_subparsers(dest="cmd", required=True)
    for name, certify in (("certify", True), ("enumerate", False)):
        p = sub(g, name, lambda a, c=certify: cmd_tc(a, c))
        p.add_argument("family", nargs="?", default=None, help="H, B or Bkilled")
        p.add_argument("n", nargs="?", type=int, default=None)
        p.add_argument("--file", default=None, help="presentation file")
        p.add_argument("--max-cosets", type=int, default=10**5)

    g = groups.add_parser("simplicial").add_subparsers(dest="cmd", required=True)
    p = sub(g, "convert", cmd_simplicial_convert)
    complex_args(p)
    p.add_argument("--file", default=None, help="presentation file instead of KIND")
    p.set_defaults(family=None)
    p = sub(g, "fromsc", cmd_simplicial_fromsc)
    p.add_argument("sc")
    p = sub(g, "euler", cmd_simplicial_euler)
    p.add_argument("kind", nargs="?", choices=["P", "Q", "Gamma", "B", "H"])
    p.add_argument("n", nargs="?", type=int, default=None)
    p.add_argument("--fn", default=None)
    p.add_argument("--closure", default=None)
    p.add_argument("--cells", default=None)
    p.add_argument("--sc", default=None, help="simplicial complex file")
    _add_budget(p)

    g = groups.add_parser("decide").add_subparsers(dest="cmd", required=True)
    for name in ("contract", "connect"):
        p = sub(g, name, lambda a, w=name: cmd_decide(a, w))
        p.add_argument("--fn", required=True)
        p.add_argument("--seeds", required=True)
        p.add_argument("--threads", type=int, default=0)
        _add_budget(p)
        if name == "connect":
            p.add_argument("--probe", type=int, default=None,
                           help="also search finite components up to this size")

    p = sub(groups, "reduce", cmd_reduce)
    p.add_argument("--fn", required=True)
    p.add_argument("--cells", type=int, default=12)

    g = groups.add_parser("collatz").add_subparsers(dest="cmd", required=True)
    p = sub(g, "verify", cmd_collatz_verify)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--threads", type=int, default=0)
    _add_budget(p, steps=10**4)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        t = time.perf_counter()
        code = args.func(args)
        if args.stats and not getattr(args, "timed", False):
            print(f"[{args.group}] {time.perf_counter() - t:.3f}s", file=sys.stderr)
        return code
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (gcf.GCFError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

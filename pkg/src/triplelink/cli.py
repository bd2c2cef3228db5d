"""``triplelink`` command line.

Exit codes: 0 success or pass, 1 obstruction or violation, 2 usage or input
error, 3 inconclusive (a search ran out of budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

import networkx as nx

from . import constructions as cons
from .chains import ChainError
from .complex import (
    ComplexError,
    degree_histogram,
    format_scx,
    link,
    read_scx,
    skeleton,
    verify_link_count_identity,
)
from .graphs import DEFAULT_BUDGET, complex_from_graph, graph_from_complex
from .linking import (
    DegenerateConfigurationError,
    GeomParseError,
    linking_number,
    linking_number_auto,
    parse_cycle_spec,
    point,
    read_geom,
)
from .patterns import PATTERN_NAMES, pattern_graph
from .scan import ScanMode, Verdict, scan
from .setsystems import (
    SetSystemError,
    TripleBoundViolation,
    bound_fd,
    fano_plane,
    read_setsystem,
    recursion_exponent,
    verify_lemma_chain,
    verify_triple_identity,
)

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_schema(name: str) -> dict:
    """The JSON schema shipped for a subcommand's report."""
    return json.loads(resources.files("triplelink").joinpath(f"schemas/{name}.schema.json").read_text())


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _pretty(args, text: str) -> None:
    if getattr(args, "pretty", False):
        sys.stderr.write(text.rstrip() + "\n")


def _frac(x: Fraction) -> str:
    return str(x)


# --- analyze --------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    K = read_scx(args.file)
    links = []
    for v in sorted(K.vertices):
        L = link(K, v)
        links.append([v, list(L.f_vector())])
    identity = []
    for k in range(1, K.dimension + 1):
        r = verify_link_count_identity(K, k)
        identity.append({"k": k, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal})
    report = {
        "dimension": K.dimension,
        "f_vector": list(K.f_vector()),
        "num_facets": len(K.facets),
        "link_f_vectors": links,
        "link_count_identity": identity,
        "degree_histogram": [[d, c] for d, c in degree_histogram(K).items()],
    }
    _emit(report)
    _pretty(args, f"dim {K.dimension}, f = {K.f_vector()}, identity holds: {all(r['equal'] for r in identity)}")
    return EXIT_OK if all(r["equal"] for r in identity) else EXIT_FOUND


# --- scan ---------------------------------------------------------------------------------

def cmd_scan(args) -> int:
    K = read_scx(args.file)
    report = scan(K, ScanMode(args.mode), budget=args.budget)
    if args.reproducible:
        report.statistics["elapsed_ms"] = 0
    _emit(report.to_json_dict())
    _pretty(args, report.verdict_text)
    return {Verdict.PASS: EXIT_OK, Verdict.OBSTRUCTION: EXIT_FOUND,
            Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[report.verdict]


# --- construct ---------------------------------------------------------------------------------

def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _input_graph(args) -> nx.Graph:
    if args.graph and args.pattern:
        raise UsageError("give either --graph or --pattern, not both")
    if args.graph:
        return graph_from_complex(read_scx(args.graph), strict=True)
    if args.pattern:
        return pattern_graph(args.pattern)
    raise UsageError("this construction needs --graph FILE or --pattern NAME")


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"{args.kind} needs --{name.replace('_', '-')}")


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "complete":
        _need(args, "d", "m")
        K = cons.complete_complex(args.d, args.m)
    elif kind == "grunbaum":
        _need(args, "dims")
        K = cons.grunbaum_join(_ints(args.dims))
    elif kind == "cyclic":
        _need(args, "n")
        K = cons.cyclic_polytope_boundary(args.n, tuple(_ints(args.drop)) if args.drop else None)
    elif kind == "double-cone":
        K = cons.double_cone(_input_graph(args))
    elif kind == "staircase":
        _need(args, "a", "b")
        K = cons.staircase_complex(args.a, args.b)
    elif kind in ("apex", "maximal-planar"):
        _need(args, "n")
        G = cons.maximal_planar_graph(args.n, args.seed)
        if kind == "apex":
            G = cons.apex_graph(G)
        K = complex_from_graph(G)
    elif kind == "pattern":
        K = complex_from_graph(_input_graph(args))
    else:  # argparse restricts choices
        raise UsageError(f"unknown construction {kind!r}")
    if args.skeleton is not None:
        K = skeleton(K, args.skeleton)
    text = format_scx(K, comment=f"triplelink construct {kind}")
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        _emit({"kind": kind, "dimension": K.dimension, "f_vector": list(K.f_vector()),
               "output": str(args.output)})
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- linking -------------------------------------------------------------------------------------

def _parse_apex(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--apex needs x,y,z")
    try:
        return point(*parts)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad apex {text!r}") from None


def cmd_linking(args) -> int:
    curves = read_geom(args.file)
    try:
        z1 = curves.edge_chain(parse_cycle_spec(args.cycle1))
        z2 = curves.edge_chain(parse_cycle_spec(args.cycle2))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.apex and not args.auto_perturb:
        res = linking_number(z1, z2, _parse_apex(args.apex))
    else:
        res = linking_number_auto(z1, z2)
    _emit({
        "linking_number": res.value,
        "apex": [_frac(x) for x in res.apex],
        "attempts": res.attempts,
        "crossings": [
            {"segment": [[_frac(x) for x in p] for p in c.first],
             "triangle": [[_frac(x) for x in p] for p in c.second],
             "sign": c.sign, "weight": c.weight}
            for c in res.crossings
        ],
        "predicates_checked": len(res.certificate.checks),
    })
    _pretty(args, f"linking number {res.value}")
    return EXIT_OK


# --- setsystem / bounds ------------------------------------------------------------------------

def cmd_setsystem(args) -> int:
    S = fano_plane() if args.file == "fano" else read_setsystem(args.file)
    try:
        report = verify_lemma_chain(S, args.f_bound)
    except TripleBoundViolation as exc:
        sys.stderr.write(f"triplelink: precondition violated: {exc}\n")
        _emit({"holds": False, "violation": {"triple": list(exc.triple), "size": exc.size,
                                             "f": args.f_bound}})
        return EXIT_FOUND
    out = report.to_json_dict()
    ident = verify_triple_identity(S)
    out["triple_identity"] = {"lhs": ident.lhs, "rhs": ident.rhs, "equal": ident.equal}
    _emit(out)
    _pretty(args, "\n".join(f"{'ok ' if s.holds else 'BAD'} {s.name}: {s.lhs} {s.relation} {s.rhs}"
                            for s in report.steps))
    return EXIT_OK if report.holds and ident.equal else EXIT_FOUND


def _d_range(text: str) -> range:
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            return range(lo, hi + 1)
        d = int(text)
        return range(d, d + 1)
    except ValueError:
        raise UsageError(f"--d expects an integer or a range a:b, got {text!r}") from None


def cmd_bounds(args) -> int:
    rows = []
    for d in _d_range(args.d):
        if d < 1:
            raise UsageError("d must be at least 1")
        b = bound_fd(args.n, d)
        rows.append({"d": d, "exponent": _frac(b.exponent),
                     "recursion_exponent": _frac(recursion_exponent(d)),
                     "exponent_float": float(b.exponent),
                     "n": args.n, "ceiling": b.ceiling})
    _emit({"rows": rows})
    _pretty(args, "\n".join(f"d={r['d']}: e={r['exponent']}" for r in rows))
    return EXIT_OK


# --- wiring -------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triplelink", description="Link-complex embeddability obstructions.")
    p.add_argument("--pretty", action="store_true", help="also print a human-readable summary to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="f-vector, links and the link counting identity")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="triple link intersection obstruction scan")
    s.add_argument("file")
    s.add_argument("--mode", required=True, choices=[m.value for m in ScanMode])
    s.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="seconds per graph search")
    s.add_argument("--reproducible", action="store_true", help="report elapsed_ms as 0")
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("construct", help="write a named complex as .scx")
    c.add_argument("kind", choices=["complete", "grunbaum", "cyclic", "double-cone", "staircase",
                                    "apex", "maximal-planar", "pattern"])
    c.add_argument("--d", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--a", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--dims")
    c.add_argument("--drop", help="facet to remove, e.g. 0,1,2,3")
    c.add_argument("--graph", help="1-dimensional .scx input")
    c.add_argument("--pattern", choices=PATTERN_NAMES)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--skeleton", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("linking", help="exact linking number of two cycles in a .geom file")
    k.add_argument("file")
    k.add_argument("--cycle1", required=True, help="edges as u:v,..., prefix - for coefficient -1")
    k.add_argument("--cycle2", required=True)
    k.add_argument("--apex", help="cone apex x,y,z (rationals allowed)")
    k.add_argument("--auto-perturb", action="store_true",
                   help="retry with the deterministic apex sequence on degeneracy")
    k.set_defaults(func=cmd_linking)

    t = sub.add_parser("setsystem", help="check the triple-intersection counting chain")
    t.add_argument("file", help="set-system file, or 'fano'")
    t.add_argument("--f-bound", type=int, required=True)
    t.set_defaults(func=cmd_setsystem)

    b = sub.add_parser("bounds", help="exponent table e(d) = d + 1 - 3^-(d-1)")
    b.add_argument("--d", required=True, help="d or a range lo:hi")
    b.add_argument("--n", type=int)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateConfigurationError as exc:
        sys.stderr.write(f"triplelink: {exc}\n")
        return EXIT_USAGE
    except (UsageError, ComplexError, ChainError, GeomParseError, SetSystemError,
            ValueError, OSError) as exc:
        sys.stderr.write(f"triplelink: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

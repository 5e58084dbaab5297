"""Command-line entry point: ``latkit <command> ...``.

Every command prints one JSON document on stdout (``dot`` prints DOT).
Exit status: 0 on success, 2 when the input is mathematically refuted
(not a lattice, non-convex region, a failed check), 1 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .analysis import analyze
from .congruence import generated_congruence, quotient
from .constructors import ImplicitTwoByZ, two_by_z_window
from .core import FiniteLattice, enumerate_lattices
from .doubling import DoublingSpec, day_double
from .dsl import parse_construction
from .errors import (
    CapExceeded,
    LatticeError,
    NotALattice,
    NotAPartialOrder,
    NotAHomomorphism,
    NotConvex,
    NotDistributive,
    ParseError,
    ProbeOutsideVariety,
    SizeGuard,
    UnknownFixture,
)
from .gj import decide_free_embeddable, find_gadgets
from .spanning import (
    check_theorem6_hypothesis,
    two_by_z_canonical,
    verify_spanning_pair,
    witness_from_document,
)
from .terms import check_identity, explore_relatively_free, in_variety, variety_identities

REFUTATIONS = (NotALattice, NotAPartialOrder, NotAHomomorphism, NotConvex, NotDistributive, ProbeOutsideVariety)
USAGE_ERRORS = (ParseError, io.DocumentError, UnknownFixture, CapExceeded, SizeGuard, KeyError, ValueError, OSError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load(source: str) -> FiniteLattice:
    """A lattice from a JSON file, ``-`` (stdin) or a construction expression."""
    if source == "-":
        return io.lattice_from_document(sys.stdin.read())
    path = Path(source)
    if source.endswith(".json") or path.is_file():
        return io.lattice_from_document(path.read_text(encoding="utf-8"))
    return parse_construction(source)


def _names(L: FiniteLattice, xs) -> list[str]:
    return [L.names[x] for x in xs]


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args) -> int:
    _emit(io.lattice_to_document(parse_construction(args.expr)))
    return 0


def cmd_analyze(args) -> int:
    _emit(analyze(load(args.source)))
    return 0


def cmd_quotient(args) -> int:
    L = load(args.source)
    pairs = [(L.element(a), L.element(b)) for a, b in args.collapse or []]
    theta = generated_congruence(L, pairs)
    Q, _ = quotient(L, theta)
    doc = io.lattice_to_document(Q)
    doc["metadata"] = {**doc.get("metadata", {}), "classes": [_names(L, c) for c in theta.classes]}
    _emit(doc)
    return 0


def cmd_double(args) -> int:
    L = load(args.source)
    region = {L.element(r) for r in args.region}
    D = day_double(DoublingSpec(L, region, args.interval))
    _emit(io.lattice_to_document(D.lattice))
    return 0


def cmd_decide(args) -> int:
    L = load(args.source)
    v = decide_free_embeddable(L)
    ev = dict(v.evidence)
    if "elements" in ev:
        ev["elements"] = _names(L, ev["elements"])
    if "block" in ev:
        ev["block"] = _names(L, ev["block"])
    if "violation" in ev:
        ev["violation"] = _names(L, ev["violation"])
        ev["sublattice"] = _names(L, ev["sublattice"])
    _emit({"free_embeddable": v.verdict, "reason": v.reason, "evidence": ev})
    return 0


def cmd_gadgets(args) -> int:
    L = load(args.source)
    out = [
        {"p": L.names[g.p], "q": L.names[g.q], "r": L.names[g.r], "shared_bound": g.shared_bound_kind,
         "class": g.iso_class, "generated": _names(L, sorted(g.generated))}
        for g in find_gadgets(L)
    ]
    _emit({"count": len(out), "gadgets": out})
    return 0


def cmd_explore(args) -> int:
    identities = variety_identities(args.variety)
    if args.probe:
        probes = [load(p) for p in args.probe]
    else:
        probes = [L for n in range(1, args.probe_size + 1) for L in enumerate_lattices(n) if in_variety(L, identities)]
    res = explore_relatively_free(identities, args.generators, args.depth, probes)
    doc = {"variety": args.variety, "generators": args.generators, "depth": args.depth,
           "probes": len(probes), "coordinates": res.coordinates, "counts": list(res.counts)}
    if args.terms:
        doc["representatives"] = [str(t) for t in res.representatives]
    _emit(doc)
    return 0


def cmd_spanning(args) -> int:
    if args.window:
        host = two_by_z_window(args.window[0], args.window[1], dual=args.dual)
    else:
        host = ImplicitTwoByZ(args.dual)
    if args.witness:
        w = witness_from_document(json.loads(Path(args.witness).read_text(encoding="utf-8")))
    else:
        w = two_by_z_canonical(args.dual)
    report = verify_spanning_pair(host, w, args.prefix)
    doc = report.to_document()
    ok = report.ok
    if args.bound is not None and args.window:
        hyp = check_theorem6_hypothesis(host, args.bound)
        doc["reducible_antichain"] = {"holds": hyp.holds, "size": hyp.witness[0],
                                      "antichain": _names(host.lattice, hyp.witness[1])}
        ok = ok and hyp.holds
    _emit(doc)
    return 0 if ok else 2


def cmd_dot(args) -> int:
    sys.stdout.write(io.emit_dot(load(args.source), args.name))
    return 0


def cmd_identity(args) -> int:
    from .terms import parse_identity

    L = load(args.source)
    spec = parse_identity(args.identity)
    c = check_identity(L, spec)
    doc = {"identity": str(spec), "holds": c.holds}
    if not c:
        doc["witness"] = {v: L.names[x] for v, x in c.witness}
    _emit(doc)
    return 0 if c else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="latkit", description="Finite lattice toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("construct", help="evaluate a construction expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_construct)

    for name, func, help_ in (("analyze", cmd_analyze, "structural report"),
                              ("decide", cmd_decide, "free-lattice embeddability verdict"),
                              ("gadgets", cmd_gadgets, "list and classify gadgets")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("source", help="JSON file, '-' or construction expression")
        s.set_defaults(func=func)

    s = sub.add_parser("quotient", help="quotient by the congruence generated by pairs")
    s.add_argument("source")
    s.add_argument("--collapse", nargs=2, action="append", metavar=("A", "B"), required=True)
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("double", help="double a convex region")
    s.add_argument("source")
    s.add_argument("--region", nargs="+", required=True)
    s.add_argument("--interval", action="store_true")
    s.set_defaults(func=cmd_double)

    s = sub.add_parser("explore-variety", help="lower bounds for a relatively free lattice")
    s.add_argument("--variety", required=True, help="distributive, sdNv, sdN^ or sdN")
    s.add_argument("--generators", type=int, default=3)
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--probe", action="append", help="probe lattice (repeatable)")
    s.add_argument("--probe-size", type=int, default=6, help="use every member up to this size")
    s.add_argument("--terms", action="store_true", help="list representative terms")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("spanning-check", help="check a spanning pair in 2 x Z or a window")
    s.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    s.add_argument("--dual", action="store_true")
    s.add_argument("--prefix", type=int, default=10)
    s.add_argument("--witness", help="JSON witness file (default: canonical)")
    s.add_argument("--bound", type=int, help="claimed bound on reducible antichains (window only)")
    s.set_defaults(func=cmd_spanning)

    s = sub.add_parser("dot", help="Hasse diagram in DOT")
    s.add_argument("source")
    s.add_argument("--name", default="lattice")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("identity", help="check a lattice identity")
    s.add_argument("source")
    s.add_argument("identity", help="e.g. 'x^(y v z) = (x^y) v (x^z)'")
    s.set_defaults(func=cmd_identity)
    return p


def _error(exc: Exception, kind: str) -> dict:
    doc = {"error": type(exc).__name__, "kind": kind, "message": str(exc)}
    witness = getattr(exc, "witness", None)
    if witness is not None:
        doc["witness"] = list(witness) if isinstance(witness, tuple) else witness
    return doc


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _emit({"error": "UsageError", "kind": "usage", "message": str(exc)})
        return 1
    except REFUTATIONS as exc:
        _emit(_error(exc, "refutation"))
        return 2
    except USAGE_ERRORS as exc:
        _emit(_error(exc, "usage"))
        return 1
    except LatticeError as exc:
        _emit(_error(exc, "usage"))
        return 1


if __name__ == "__main__":
    sys.exit(main())

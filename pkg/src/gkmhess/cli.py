"""Command-line entry point: ``gkmhess <command> ...``.

Machine-readable output goes to stdout, progress to stderr.  Exit codes:
0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .automorphisms import aut_star, enumerate_aut, worker_count
from .cohomology import betti_numbers, equivariant_basis
from .gkm_graph import GkmGraph, validate
from .hessenberg import (
    GRAPH_MAX_N,
    HessenbergFunction,
    InvalidHessenbergFunction,
    build_gkm_graph,
    star_condition,
)
from .unipotent import sweep

COMPUTE_MAX_N = 5

log = logging.getLogger("gkmhess")


class UsageError(Exception):
    pass


def _h(text):
    try:
        return HessenbergFunction.parse(text)
    except InvalidHessenbergFunction as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _guard(n, limit, args, what):
    if n > limit and not getattr(args, "unsafe_large", False):
        raise UsageError("n=%d exceeds the %s guard of %d (pass --unsafe-large to override)"
                         % (n, what, limit))


def _dump(obj):
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


# ---------------------------------------------------------------------------
# commands


def cmd_graph_build(args, out):
    _guard(args.h.n, GRAPH_MAX_N, args, "graph")
    g = build_gkm_graph(args.h, unsafe_large=args.unsafe_large)
    text = g.to_dot() if args.format == "dot" else g.to_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        log.info("wrote %s (%d vertices)", args.out, len(g))
    else:
        out.write(text)
    return 0


def cmd_graph_validate(args, out):
    try:
        with open(args.input) as fh:
            g = GkmGraph.from_json(fh.read())
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (args.input, exc)) from exc
    except ValueError as exc:
        raise UsageError("cannot parse %s: %s" % (args.input, exc)) from exc
    report = validate(g)
    out.write(json.dumps(report.to_json_dict(), sort_keys=True, indent=1) + "\n")
    return 0 if report.ok else 1


def cmd_aut_enumerate(args, out):
    _guard(args.h.n, COMPUTE_MAX_N, args, "automorphism")
    g = build_gkm_graph(args.h, unsafe_large=args.unsafe_large)
    auts = enumerate_aut(g, workers=worker_count())
    if args.count_only:
        out.write("%d\n" % len(auts))
    else:
        out.write(json.dumps([a.to_json_dict() for a in auts], sort_keys=True) + "\n")
    return 0


def cmd_aut_star(args, out):
    _guard(args.h.n, COMPUTE_MAX_N, args, "automorphism")
    g = build_gkm_graph(args.h, unsafe_large=args.unsafe_large)
    star = aut_star(g, args.max_degree)
    out.write(json.dumps([a.to_json_dict() for a in star], sort_keys=True) + "\n")
    return 0


def cmd_star_condition(args, out):
    out.write("true\n" if star_condition(args.h) else "false\n")
    return 0


def cmd_betti(args, out):
    _guard(args.h.n, COMPUTE_MAX_N, args, "cohomology")
    g = build_gkm_graph(args.h, unsafe_large=args.unsafe_large)
    out.write(_dump(betti_numbers(g)) + "\n")
    return 0


def cmd_equivariant(args, out):
    _guard(args.h.n, COMPUTE_MAX_N, args, "cohomology")
    if args.degree < 0:
        raise UsageError("degree must be non-negative")
    g = build_gkm_graph(args.h, unsafe_large=args.unsafe_large)
    lattice = {"t": "T", "that": "T_hat"}[args.lattice]
    basis = equivariant_basis(g, lattice, args.degree)
    payload = {"h": list(args.h.values), "degree": args.degree, "lattice": args.lattice,
               "dimension": len(basis), "basis": [xi.table() for xi in basis]}
    out.write(json.dumps(payload, indent=1) + "\n")
    return 0


def cmd_unipotent_sweep(args, out):
    _guard(args.n, COMPUTE_MAX_N, args, "sweep")
    if args.n < 1:
        raise UsageError("n must be positive")
    certs = sweep(args.n, workers=worker_count())
    for c in certs:
        out.write(_dump(c) + "\n")
    missing = sum(1 for c in certs if c["witness"] is None)
    log.info("%d certificates, %d without witness", len(certs), missing)
    return 0


def cmd_verify_all(args, out):
    from .verify import run_all

    results = run_all(args.n)
    for r in results:
        out.write(r.line() + "\n")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkmhess", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def with_h(sp):
        sp.add_argument("--h", type=_h, required=True, help="Hessenberg function, e.g. 2,3,3")
        sp.add_argument("--unsafe-large", action="store_true")
        return sp

    graph = sub.add_parser("graph").add_subparsers(dest="action", required=True)
    sp = with_h(graph.add_parser("build"))
    sp.add_argument("--out")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.set_defaults(func=cmd_graph_build)
    sp = graph.add_parser("validate")
    sp.add_argument("--in", dest="input", required=True)
    sp.set_defaults(func=cmd_graph_validate)

    aut = sub.add_parser("aut").add_subparsers(dest="action", required=True)
    sp = with_h(aut.add_parser("enumerate"))
    sp.add_argument("--count-only", action="store_true")
    sp.set_defaults(func=cmd_aut_enumerate)
    sp = with_h(aut.add_parser("star"))
    sp.add_argument("--max-degree", type=int, required=True,
                    help="check ordinary H^2k for k = 1..K")
    sp.set_defaults(func=cmd_aut_star)

    sp = sub.add_parser("star-condition")
    sp.add_argument("--h", type=_h, required=True)
    sp.set_defaults(func=cmd_star_condition)

    coh = sub.add_parser("cohomology").add_subparsers(dest="action", required=True)
    sp = with_h(coh.add_parser("betti"))
    sp.set_defaults(func=cmd_betti)
    sp = with_h(coh.add_parser("equivariant"))
    sp.add_argument("--degree", type=int, required=True, help="cohomological degree 2k")
    sp.add_argument("--lattice", choices=["t", "that"], default="t")
    sp.set_defaults(func=cmd_equivariant)

    uni = sub.add_parser("unipotent").add_subparsers(dest="action", required=True)
    sp = uni.add_parser("sweep")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--unsafe-large", action="store_true")
    sp.set_defaults(func=cmd_unipotent_sweep)

    ver = sub.add_parser("verify").add_subparsers(dest="action", required=True)
    sp = ver.add_parser("all")
    sp.add_argument("--n", type=int, default=None, help="largest n to sweep (default: full ranges)")
    sp.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())

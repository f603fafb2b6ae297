"""Command line entry point: ``cutdom <command> ...``.

JSON goes to stdout (or ``--out``), a short human summary to stderr.
Exit codes: 0 success, 1 failed verdict, 2 refused input, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .campaigns import verify_fn, verify_main_theorem
from .cutspace import certify_facet, structural_report
from .family import FixtureError, growth_table, load_fixtures
from .graph import Multigraph
from .minors import PATTERNS, has_minor
from .polyhedron import DEFAULT_DD_BUDGET, DDBudgetExceeded, SizeGuardError, ef_report, facet_list, kstar
from .ratmat import as_rational

EXIT_OK, EXIT_FAIL, EXIT_REFUSED, EXIT_INVARIANT = 0, 1, 2, 3


class Refused(Exception):
    pass


def load_graph(path) -> Multigraph:
    try:
        return Multigraph.load(path)
    except OSError as exc:
        raise Refused(f"cannot read {path}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise Refused(f"{path} is not a graph file: {exc}") from exc


def load_weights(path, g: Multigraph):
    try:
        with open(path) as fh:
            data = json.load(fh)
        w = data["weights"]
        if set(w) != {str(i) for i in range(g.m)}:
            raise ValueError(f"expected weights for edges 0..{g.m - 1}")
        return tuple(as_rational(w[str(i)]) for i in range(g.m))
    except OSError as exc:
        raise Refused(f"cannot read {path}: {exc}") from exc
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise Refused(f"{path} is not a weights file: {exc}") from exc


def emit(obj, out):
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def note(msg):
    print(msg, file=sys.stderr)


def cmd_kstar(args) -> int:
    g = load_graph(args.graph)
    value = kstar(g, budget=args.dd_budget)
    facets = []
    if g.is_connected():
        facets = [c.to_json() for c in facet_list(g.simplify()[0], budget=args.dd_budget)]
    if args.json or args.out:
        emit({"kstar": value, "facets": facets}, args.out)
    if not args.json:
        print(f"kstar = {value}")
        for f in facets:
            lhs = " + ".join(f"{c}*x{e}" for e, c in enumerate(f["min_int_coeffs"]) if c)
            print(f"  {lhs} >= {f['min_int_rhs']}")
    return EXIT_OK


def cmd_certify(args) -> int:
    g = load_graph(args.graph)
    w = load_weights(args.weights, g)
    cert = certify_facet(g, w)
    out = cert.to_json()
    if cert.status != "zero_lambda":
        out["structural"] = structural_report(g, w, args.k, cert.family)
        out["is_witness_for_k"] = args.k if cert.is_facet and cert.min_int_rhs > args.k else None
    emit(out, args.out)
    note(f"status={cert.status} lambda={out['lambda']} min_int_rhs={cert.min_int_rhs}")
    return EXIT_OK


def cmd_minor(args) -> int:
    g = load_graph(args.host)
    if g.n > 12:
        raise Refused("minor search is limited to hosts with 12 nodes")
    model = has_minor(g, args.pattern)
    emit({"pattern": args.pattern, "present": model is not None,
          "model": None if model is None else model.to_json()}, args.out)
    note(f"{args.pattern}: {'present' if model else 'absent'}")
    return EXIT_OK


def _campaign(report, out) -> int:
    emit(report.to_json(), out)
    note(f"{report.campaign}: {report.verdict} {json.dumps(report.summary)}")
    return EXIT_OK if report.verdict == "PASS" else EXIT_FAIL


def cmd_verify_main(args) -> int:
    try:
        report = verify_main_theorem(args.max_nodes, args.max_edges, jobs=args.jobs, budget=args.dd_budget)
    except ValueError as exc:
        raise Refused(str(exc)) from exc
    return _campaign(report, args.out)


def cmd_verify_fn(args) -> int:
    try:
        report = verify_fn(args.max_nodes, args.max_edges, jobs=args.jobs, budget=args.dd_budget)
    except ValueError as exc:
        raise Refused(str(exc)) from exc
    return _campaign(report, args.out)


def cmd_family(args) -> int:
    fixtures = []
    for path in args.fixtures:
        try:
            fixtures.extend(load_fixtures(path))
        except OSError as exc:
            raise Refused(f"cannot read {path}: {exc}") from exc
        except (KeyError, TypeError, ValueError) as exc:
            raise Refused(f"{path} is not a fixture file: {exc}") from exc
    try:
        rows, doubling = growth_table(fixtures)
    except FixtureError as exc:
        emit({"ok": False, "fixture": exc.name, "condition": exc.condition, "detail": exc.detail}, args.out)
        note(str(exc))
        return EXIT_FAIL
    emit({"ok": doubling, "doubling": doubling, "members": rows}, args.out)
    for r in rows:
        note(f"{r['name']:>6}  nodes={r['nodes']:<3} edges={r['edges']:<3} min_int_rhs={r['min_int_rhs']}")
    return EXIT_OK if doubling else EXIT_FAIL


def cmd_ef_check(args) -> int:
    g = load_graph(args.graph)
    try:
        rep = ef_report(g, args.root, budget=args.dd_budget)
    except SizeGuardError as exc:
        raise Refused(str(exc)) from exc
    emit(rep.to_json(), args.out)
    note(f"ef-check root={args.root}: {rep.ok}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cutdom", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("--dd-budget", type=int, default=DEFAULT_DD_BUDGET,
                        help="intermediate ray limit for vertex enumeration")

    sp = sub.add_parser("kstar", help="k* and the facet list of a graph")
    sp.add_argument("graph")
    sp.add_argument("--json", action="store_true", help="print JSON instead of text")
    common(sp)
    sp.set_defaults(func=cmd_kstar)

    sp = sub.add_parser("certify", help="facet certificate for a weighting")
    sp.add_argument("graph")
    sp.add_argument("weights")
    sp.add_argument("--k", type=int, default=2, help="level for the structural checks")
    common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("minor", help="test for a forbidden minor")
    sp.add_argument("host")
    sp.add_argument("--pattern", required=True, choices=sorted(PATTERNS))
    common(sp)
    sp.set_defaults(func=cmd_minor)

    for name, func in (("verify-main", cmd_verify_main), ("verify-fn", cmd_verify_fn)):
        sp = sub.add_parser(name, help="catalog campaign")
        sp.add_argument("--max-nodes", type=int, required=True)
        sp.add_argument("--max-edges", type=int, default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0, help="accepted for symmetry; campaigns are deterministic")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("family", help="certify family fixtures and their growth")
    sp.add_argument("fixtures", nargs="+")
    common(sp)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("ef-check", help="arborescence formulation projection check")
    sp.add_argument("graph")
    sp.add_argument("--root", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_ef_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (Refused, SizeGuardError, DDBudgetExceeded) as exc:
        note(f"refused: {exc}")
        return EXIT_REFUSED
    except AssertionError as exc:
        note(f"invariant violation: {exc}")
        return EXIT_INVARIANT
    except ValueError as exc:
        # remaining ValueErrors come from input checks (e.g. negative weights)
        note(f"refused: {exc}")
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Elements are given either in tree-pair notation, e.g.
``"(00,01,10,11) -> (0,100,101,11)"``, or as named constants (zeta, x0,
x1, ..., case-a-alpha, case-b-alpha, case-c-alpha-5, kappa1-a, kappa1-c,
kappa1-c-tau, rotation:1/2, identity).  Output is canonical notation,
JSON (schema-tagged) or DOT, and is byte-stable for fixed inputs and
seed.

Exit codes: 0 success, 2 parse error, 3 precondition failure,
4 reproduction mismatch.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .dyadic import CirclePoint, dyadic
from .plmap import CIRCLE, MapError, PLMap, compose, conjugate, inverse, rotation
from .treepair import ParseError, TreePair
from .groupcalc import (DEFAULT_ORDER_BOUND, INFINITE, UnknownOrder, is_prime,
                        order_of, torsion_rep, x, zeta)
from .core2 import build_core, coarsen, initial_relation
from .golan import DEFAULT_SEARCH_DEPTH, generates_F
from .construct import (ConstructionError, PipelineError, prop_finite_data,
                        prop_infinite_pipeline)
from . import repro

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4


def resolve_element(text):
    """Named constant or tree-pair notation to a PLMap."""
    s = text.strip()
    low = s.lower()
    if low in ("id", "identity"):
        return PLMap.identity()
    if low in ("zeta", "kappa0"):
        return zeta()
    m = re.fullmatch(r"x(\d+)", low)
    if m:
        return x(int(m.group(1)))
    if low in ("case-a-alpha", "alpha-a"):
        return torsion_rep(2)
    if low in ("case-b-alpha", "alpha-b"):
        return torsion_rep(3)
    m = re.fullmatch(r"(?:case-c-alpha|alpha-c)-(\d+)", low)
    if m:
        p = int(m.group(1))
        if p < 5 or not is_prime(p):
            raise ValueError("the torsion case needs a prime p >= 5, got %d" % p)
        return torsion_rep(p)
    if low == "kappa1-a":
        return prop_finite_data("a").kappa1
    if low == "kappa1-c":
        return prop_finite_data("c").kappa1
    if low == "kappa1-c-tau":
        return prop_finite_data("c").kappa1_tau
    m = re.fullmatch(r"rot(?:ation)?:(.+)", low)
    if m:
        return rotation(dyadic(m.group(1)))
    return TreePair.parse(s).to_plmap()


def _notation(f):
    return TreePair.from_plmap(f).render()


def _emit_element(f, output):
    if output == "json":
        print(json.dumps({"schema": "element/1", "carrier": f.carrier,
                          "notation": _notation(f)}, indent=2, sort_keys=True))
    else:
        print(_notation(f))


def _emit_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


def cmd_eval(args):
    f = resolve_element(args.element)
    point = dyadic(args.point)
    if f.carrier == CIRCLE:
        print(str(f.eval(CirclePoint(point))))
    else:
        print(str(f.eval(point)))
    return EXIT_OK


def cmd_compose(args):
    elts = [resolve_element(e) for e in args.elements]
    carrier = elts[0].carrier
    if any(e.carrier != carrier for e in elts):
        elts = [e.as_circle() for e in elts]
    out = elts[0]
    for e in elts[1:]:
        out = compose(out, e)
    if args.with_inverse_of_self:
        out = compose(out, inverse(out))
    _emit_element(out, args.output)
    return EXIT_OK


def cmd_inverse(args):
    _emit_element(inverse(resolve_element(args.element)), args.output)
    return EXIT_OK


def cmd_conjugate(args):
    f = resolve_element(args.element)
    g = resolve_element(args.by)
    if f.carrier != g.carrier:
        f, g = f.as_circle(), g.as_circle()
    _emit_element(conjugate(f, g), args.output)
    return EXIT_OK


def cmd_order(args):
    n = order_of(resolve_element(args.element), args.order_bound)
    if n is INFINITE:
        print("Infinite")
    elif isinstance(n, UnknownOrder):
        print("unknown (searched to %d)" % n.bound)
    else:
        print(n)
    return EXIT_OK


def cmd_core(args):
    pairs = [TreePair.from_plmap(resolve_element(e).to_interval())
             for e in args.elements]
    forest, rel0 = initial_relation(pairs)
    rel = coarsen(forest, rel0)
    core = build_core(pairs)
    if args.output == "json":
        _emit_json({"schema": "core/1",
                    "initial_classes": rel0.class_count(),
                    "final_classes": rel.class_count(),
                    "generation_graph": core.is_generation_graph(),
                    "dot": core.to_dot()})
        return EXIT_OK
    if args.stages:
        print("%d initial classes, %d final classes"
              % (rel0.class_count(), rel.class_count()))
    if args.output == "text":
        print("generation graph: %s" % ("yes" if core.is_generation_graph() else "no"))
    sys.stdout.write(core.to_dot())
    return EXIT_OK


def cmd_generates(args):
    gens = [resolve_element(e).to_interval() for e in args.elements]
    verdict = generates_F(gens, args.depth)
    if args.output == "json":
        _emit_json(verdict.to_json_dict())
    else:
        print("verdict: %s" % verdict.verdict)
        if verdict.witnesses is not None and verdict.witnesses.found:
            w = verdict.witnesses
            print("mu = %s" % " ".join(w.mu_word))
            print("nu = %s" % " ".join(w.nu_word))
            print("xi = %s at x = %s" % (" ".join(w.xi_word), w.x))
        if verdict.failed_condition:
            print("failed condition: %s" % verdict.failed_condition)
    return EXIT_OK


def cmd_pipeline(args):
    alpha = resolve_element(args.alpha)
    zeta_elt = resolve_element(args.zeta)
    at = dyadic(args.at) if args.at else None
    state = prop_infinite_pipeline(alpha, zeta_elt, a=at)
    if args.output == "json":
        _emit_json(state.to_json_dict())
    else:
        for c in state.report:
            print("[%s] %s" % ("pass" if c.passed else "FAIL", c.name))
        print("pipeline: %s (%d checks)"
              % ("pass" if state.passed() else "FAIL", len(state.report)))
    return EXIT_OK if state.passed() else EXIT_MISMATCH


def cmd_repro(args):
    checks = repro.run_suite(args.suite, seed=args.seed, depth=args.depth)
    failed = [c for c in checks if not c.passed]
    if args.output == "json":
        _emit_json({"schema": "repro-report/1", "suite": args.suite,
                    "seed": args.seed, "passed": not failed,
                    "checks": [c.to_json_dict() for c in checks]})
    else:
        for c in checks:
            line = "[%s] %s" % ("pass" if c.passed else "FAIL", c.name)
            if not c.passed and c.detail:
                line += "  (%s)" % c.detail
            print(line)
        print("%s: %d checks, %d failed" % (args.suite, len(checks), len(failed)))
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thompson",
        description="Exact computation in Thompson's groups F and T.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, choices=("text", "json"), default="text"):
        p.add_argument("--output", choices=choices, default=default,
                       help="output format (default %(default)s)")

    p = sub.add_parser("eval", help="apply an element to a dyadic point")
    p.add_argument("element")
    p.add_argument("point")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compose", help="compose elements left to right")
    p.add_argument("elements", nargs="+")
    p.add_argument("--with-inverse-of-self", action="store_true",
                   help="append the inverse of the product (sanity check)")
    add_output(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("inverse", help="invert an element")
    p.add_argument("element")
    add_output(p)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("conjugate", help="conjugate an element: g^-1 f g")
    p.add_argument("element")
    p.add_argument("--by", required=True)
    add_output(p)
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("order", help="order of an element (exact or Infinite)")
    p.add_argument("element")
    p.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("core", help="2-core of interval elements, as DOT")
    p.add_argument("elements", nargs="+")
    p.add_argument("--stages", action="store_true",
                   help="also print initial and folded class counts")
    add_output(p, choices=("dot", "text", "json"), default="dot")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("generates", help="do the elements generate F?")
    p.add_argument("elements", nargs="+")
    p.add_argument("--depth", type=int, default=DEFAULT_SEARCH_DEPTH,
                   help="witness search depth (default %(default)s)")
    add_output(p)
    p.set_defaults(func=cmd_generates)

    p = sub.add_parser("pipeline",
                       help="run the infinite-order construction and report")
    p.add_argument("alpha")
    p.add_argument("zeta")
    p.add_argument("--at", help="dyadic hop base inside the support of alpha")
    add_output(p, default="json")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("repro", help="reproduction suites")
    p.add_argument("suite", choices=repro.SUITES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=DEFAULT_SEARCH_DEPTH)
    add_output(p)
    p.set_defaults(func=cmd_repro)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (PipelineError, ConstructionError) as exc:
        print("construction failed: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except (MapError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

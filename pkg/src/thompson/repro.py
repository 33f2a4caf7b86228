"""Reproduction suites: every explicitly exhibited computation, plus the
seeded property suites, packaged as named pass/fail checks.

Each suite returns a list of ``CheckResult``; the CLI renders them and
sets the exit code, and the acceptance tests assert them directly.  The
seeded suites are deterministic functions of their seed.
"""

from __future__ import annotations

from random import Random

from .dyadic import Dyadic, dyadic
from .plmap import (Arc, ArcMap, CIRCLE, INTERVAL, PLMap, compose, conjugate,
                    inverse, power, rotation, thompson_like_map, transport,
                    union_covers_circle)
from .treepair import TreePair, parse_element
from .groupcalc import (HopCertificate, INFINITE, admits_hops, factor_over_cover,
                        order_of, rotation_number, torsion_rep, x, zeta)
from .core2 import build_core, coarsen, criterion_graph, initial_relation
from .golan import find_witnesses, generates_F, germ
from .construct import (CheckResult, ConjugatorSpec, PipelineError, _hop_base,
                        construct_conjugator, prop_finite_data,
                        prop_infinite_pipeline)

ZETA_NOTATION = "(00, 01, 10, 11) -> (0, 100, 101, 11)"
X0_NOTATION = "(00, 01, 1) -> (0, 10, 11)"
X1_NOTATION = "(0, 100, 101, 11) -> (0, 10, 110, 111)"
KAPPA1_A_NOTATION = "(00, 010, 011, 100, 101, 11) -> (00, 01, 100, 101, 110, 111)"
KAPPA1_C_NOTATION = "(00, 010, 011, 10, 110, 111) -> (00, 01, 10, 1100, 1101, 111)"
KAPPA1_C_TAU_NOTATION = "(00, 010, 011, 1) -> (00, 01, 10, 11)"


def _c(name, ok, detail=""):
    return CheckResult(name, bool(ok), detail)


def _notation(f):
    return TreePair.from_plmap(f).render()


def suite_figures():
    checks = []
    zeta_pair = parse_element(ZETA_NOTATION)
    formula = PLMap(INTERVAL, [("0", "0"), ("1/4", "1/2"), ("3/4", "3/4"), ("1", "1")])
    checks.append(_c("zeta-pair-equals-three-piece-formula",
                     zeta_pair.to_plmap() == formula))
    checks.append(_c("zeta-formula-recovers-pair",
                     TreePair.from_plmap(formula) == zeta_pair))
    checks.append(_c("zeta-values",
                     formula.eval(dyadic("1/8")) == dyadic("1/4")
                     and formula.eval(dyadic("1/2")) == dyadic("5/8")
                     and formula.eval(dyadic("7/8")) == dyadic("7/8")))
    checks.append(_c("x0-pair", _notation(x(0)) == X0_NOTATION))
    checks.append(_c("x1-pair", _notation(x(1)) == X1_NOTATION))
    checks.append(_c("x0-moves-quarter-to-half",
                     x(0).eval(dyadic("1/4")) == dyadic("1/2")))
    data = prop_finite_data("a")
    forest, rel0 = initial_relation([TreePair.from_plmap(data.kappa0),
                                     TreePair.from_plmap(data.kappa1)])
    checks.append(_c("initial-relation-has-23-classes", rel0.class_count() == 23,
                     "got %d" % rel0.class_count()))
    rel = coarsen(forest, rel0)
    checks.append(_c("folded-relation-has-4-classes", rel.class_count() == 4,
                     "got %d" % rel.class_count()))
    core = build_core([TreePair.from_plmap(data.kappa0), TreePair.from_plmap(data.kappa1)])
    checks.append(_c("core-graph-matches-criterion-dot",
                     core.to_dot() == criterion_graph().to_dot()))
    return checks


def _witness_checks(prefix, gens, expected_x, depth):
    checks = []
    ws = find_witnesses(gens, depth)
    checks.append(_c(prefix + "-witnesses-found", ws.found, repr(ws)))
    if ws.found:
        checks.append(_c(prefix + "-mu-is-first-generator", ws.mu == gens[0]))
        checks.append(_c(prefix + "-nu-is-second-generator-inverse",
                         ws.nu == inverse(gens[1])))
        checks.append(_c(prefix + "-xi-is-second-generator", ws.xi == gens[1]))
        checks.append(_c(prefix + "-x", ws.x == dyadic(expected_x), str(ws.x)))
        checks.append(_c(prefix + "-mu-germ", germ(ws.mu) == (1, 0)))
        checks.append(_c(prefix + "-nu-germ", germ(ws.nu) == (0, 1)))
        checks.append(_c(prefix + "-xi-fixes-x-with-slopes-1-2",
                         ws.xi.eval(ws.x) == ws.x
                         and ws.xi.one_sided_slope(ws.x, "left") == 0
                         and ws.xi.one_sided_slope(ws.x, "right") == 1))
    return checks


def suite_case_a(depth=8):
    checks = []
    data = prop_finite_data("a")
    checks.append(_c("alpha-is-half-rotation", data.alpha == rotation(dyadic("1/2"))))
    checks.append(_c("alpha-order-2", order_of(data.alpha) == 2))
    checks.append(_c("alpha-rotation-number",
                     rotation_number(data.alpha) is not None
                     and str(rotation_number(data.alpha)) == "1/2"))
    checks.append(_c("kappa1-printed-form", _notation(data.kappa1) == KAPPA1_A_NOTATION,
                     _notation(data.kappa1)))
    checks.extend(_witness_checks("case-a", [data.kappa0, data.kappa1], "1/4", depth))
    verdict = generates_F([data.kappa0, data.kappa1], depth)
    checks.append(_c("generates-F", verdict.verdict == "yes", verdict.verdict))
    core = build_core([TreePair.from_plmap(data.kappa0), TreePair.from_plmap(data.kappa1)])
    checks.append(_c("core-is-criterion-graph", core.is_generation_graph()))
    box = Arc(0, 0)
    image = Arc(data.alpha.eval(box.start_point()), data.alpha.eval(box.start_point()))
    checks.append(_c("two-boxes-cover-circle", union_covers_circle([box, image])))
    return checks


def suite_case_b():
    checks = []
    data = prop_finite_data("b")
    zc = zeta().as_circle()
    za = conjugate(zc, data.alpha)
    checks.append(_c("alpha-order-3", order_of(data.alpha) == 3))
    checks.append(_c("zeta-conjugate-is-x1", za == x(1).as_circle(),
                     _notation(za)))
    checks.append(_c("zeta-times-conjugate-is-x0",
                     compose(zc, za) == x(0).as_circle(),
                     _notation(compose(zc, za))))
    checks.append(_c("reduced-pairs-match",
                     TreePair.from_plmap(za) == parse_element(X1_NOTATION)
                     and TreePair.from_plmap(compose(zc, za)) == parse_element(X0_NOTATION)))
    return checks


def suite_case_c(p=5, depth=8):
    checks = []
    data = prop_finite_data("c", p)
    checks.append(_c("alpha-order-p", order_of(data.alpha) == p))
    checks.append(_c("alpha-rotation-number",
                     str(rotation_number(data.alpha)) == "1/%d" % p))
    checks.append(_c("kappa1-printed-form", _notation(data.kappa1) == KAPPA1_C_NOTATION,
                     _notation(data.kappa1)))
    checks.append(_c("flattening-map-is-thompson-like",
                     data.tau == ArcMap(Arc(0, "7/8"), Arc(0, 0),
                                        [("0", "0"), ("3/4", "3/4"), ("7/8", "1")])))
    checks.append(_c("kappa0-unmoved-by-flattening",
                     transport(data.kappa0, data.tau) == data.kappa0.as_circle()))
    checks.append(_c("kappa1-flattened-printed-form",
                     _notation(data.kappa1_tau) == KAPPA1_C_TAU_NOTATION,
                     _notation(data.kappa1_tau)))
    gens = [data.kappa0, data.kappa1_tau]
    core = build_core([TreePair.from_plmap(g) for g in gens])
    checks.append(_c("core-is-criterion-graph", core.is_generation_graph()))
    checks.extend(_witness_checks("case-c", gens, "1/4", depth))
    verdict = generates_F(gens, depth)
    checks.append(_c("generates-F", verdict.verdict == "yes", verdict.verdict))
    box = Arc(0, "7/8")
    arcs = []
    cur = PLMap.identity(CIRCLE)
    for _ in range(p):
        arcs.append(Arc(cur.eval(box.start_point()), cur.eval(box.end_point())))
        cur = compose(cur, data.alpha)
    checks.append(_c("box-orbit-covers-circle", union_covers_circle(arcs)))
    return checks


def suite_prop_infinite():
    checks = []
    for label, alpha in (("x0", x(0)), ("zeta", zeta())):
        try:
            state = prop_infinite_pipeline(alpha, zeta())
            checks.append(_c("pipeline-%s-zeta" % label, state.passed(),
                             "%d checks" % len(state.report)))
        except PipelineError as exc:
            checks.append(_c("pipeline-%s-zeta" % label, False,
                             "failed at %s" % exc.failing))
    return checks


# ---------------------------------------------------------------------------
# seeded property suites


def _random_word(rng, pool, max_len):
    out = PLMap.identity(pool[0].carrier)
    for _ in range(rng.randint(1, max_len)):
        g = rng.choice(pool)
        if rng.random() < 0.5:
            g = inverse(g)
        out = compose(out, g)
    return out


def suite_conjugator_random(seed, count=100):
    """Seeded hop-conjugator instances; every one must pass both
    postconditions (they are verified inside the builder)."""
    rng = Random(seed)
    zc = zeta().as_circle()
    pool = [x(0).as_circle(), x(1).as_circle(), zc, rotation(dyadic("1/4")),
            rotation(dyadic("1/2"))]
    passed = 0
    first_failure = ""
    for trial in range(count):
        k = rng.choice([1, 2, 3])
        mu = conjugate(power(zc, rng.choice([1, 2])), _random_word(rng, pool, 2))
        nu = conjugate(power(zc, rng.choice([1, 2])), _random_word(rng, pool, 2))
        try:
            _, p, _ = _hop_base(mu, allow_invert=False)
            _, q, _ = _hop_base(nu, allow_invert=False)
            orbit = [q]
            for _ in range(k + 1):
                orbit.append(nu.eval(orbit[-1]))
            gap = Arc(orbit[k + 1], q)
            j1 = rng.randrange(1, 62)
            j2 = rng.randrange(j1 + 1, 63)
            spec = ConjugatorSpec(mu, nu, k, p, q,
                                  gap.interp(Dyadic(j1, 6)), gap.interp(Dyadic(j2, 6)))
            construct_conjugator(spec)
            passed += 1
        except Exception as exc:  # noqa: BLE001 - report, do not crash the suite
            if not first_failure:
                first_failure = "trial %d: %s" % (trial, exc)
    return [_c("conjugator-random-%d" % count, passed == count,
               first_failure or "%d/%d" % (passed, count))]


def suite_factorisation_random(seed, count=200):
    """Seeded two-box factorisations: exact product and support
    containment for every instance."""
    rng = Random(seed)
    pool = [x(0), x(1), zeta()]
    passed = 0
    first_failure = ""
    for trial in range(count):
        ticks = sorted(rng.sample(range(17), 4))
        a, b, c, d = (Dyadic(t, 4) for t in ticks)
        g0 = _random_word(rng, pool, 4)
        tau = thompson_like_map(Arc(0, 0), Arc(a, d))
        gam = transport(g0, tau).to_interval()
        try:
            fact = factor_over_cover(gam, a, b, c, d)
            ok = (fact.product() == gam
                  and fact.alpha.support().issubset_of([Arc(a, c)])
                  and fact.beta.support().issubset_of([Arc(b, d)]))
            if ok:
                passed += 1
            elif not first_failure:
                first_failure = "trial %d: postcondition" % trial
        except Exception as exc:  # noqa: BLE001
            if not first_failure:
                first_failure = "trial %d: %s" % (trial, exc)
    return [_c("factorisation-random-%d" % count, passed == count,
               first_failure or "%d/%d" % (passed, count))]


def suite_schedules(seed, count=20):
    """Coarsening is schedule-independent: shuffled scan orders must give
    the identical partition on both benchmark generator sets."""
    rng = Random(seed)
    data = prop_finite_data("a")
    cases = {
        "kappa": [TreePair.from_plmap(data.kappa0), TreePair.from_plmap(data.kappa1)],
        "x0x1": [TreePair.from_plmap(x(0)), TreePair.from_plmap(x(1))],
    }
    checks = []
    for label, pairs in cases.items():
        forest, rel0 = initial_relation(pairs)
        reference = coarsen(forest, rel0).classes()
        agree = all(coarsen(forest, rel0, rng=Random(rng.randrange(1 << 30))).classes()
                    == reference for _ in range(count))
        checks.append(_c("schedule-independence-%s-%d-runs" % (label, count), agree))
    return checks


SUITES = ("figures", "case-a", "case-b", "case-c", "prop-infinite", "all")


def run_suite(name, seed=0, depth=8):
    """Checks for one suite tag; "all" adds the seeded property suites."""
    if name == "figures":
        return suite_figures()
    if name == "case-a":
        return suite_case_a(depth)
    if name == "case-b":
        return suite_case_b()
    if name == "case-c":
        return suite_case_c(5, depth)
    if name == "prop-infinite":
        return suite_prop_infinite()
    if name == "all":
        checks = []
        for tag in ("figures", "case-a", "case-b", "case-c", "prop-infinite"):
            for c in run_suite(tag, seed, depth):
                c = CheckResult("%s/%s" % (tag, c.name), c.passed, c.detail)
                checks.append(c)
        checks.extend(suite_conjugator_random(seed))
        checks.extend(suite_factorisation_random(seed))
        checks.extend(suite_schedules(seed))
        return checks
    raise ValueError("unknown suite %r (try one of %s)" % (name, ", ".join(SUITES)))

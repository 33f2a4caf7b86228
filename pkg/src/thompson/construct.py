"""Executable constructions behind the generation theorems for T.

Three builders live here.  ``construct_conjugator`` produces, from two
maps with verified hop certificates, a circle map conjugating the first
onto the second over an initial block of fundamental domains while
steering two marked points into a prescribed arc.  ``prop_infinite_pipeline``
runs the whole infinite-order argument: local generators transported
into a box, the perturbed map beta, the conjugator, the two commuting
box generators mu0/mu1, and the final 22-arc cover of the circle, with
every intermediate identity checked exactly and reported.
``prop_finite_data`` builds the explicit torsion-case data (alpha,
kappa0, kappa1 and, for the third case, the flattening map tau).

All checks raise ``PipelineError`` carrying the partial report, so a
failure names the first identity that broke and where.
"""

from __future__ import annotations

from .dyadic import CirclePoint, Dyadic, dyadic, circle
from .plmap import (Arc, ArcMap, CIRCLE, PLMap, compose, conjugate, inverse,
                    dyadic_points_in_arc, position, power, restrict_patch,
                    thompson_like_map, transport, union_covers_circle, _rel)
from .groupcalc import (HopCertificate, INFINITE, UnknownOrder, admits_hops,
                        is_prime, order_of, torsion_rep, x, zeta)
from .treepair import TreePair


class ConstructionError(RuntimeError):
    """A builder's verified postcondition failed."""


def position_chain(points):
    """Points pairwise distinct and in counterclockwise order, positions
    given as anything coercible (including non-dyadic rationals)."""
    ps = [position(p) for p in points]
    offs = [_rel(p, ps[0]) for p in ps]
    return all(offs[i] < offs[i + 1] for i in range(len(offs) - 1))


# ---------------------------------------------------------------------------
# the conjugator of the hop construction


class ConjugatorSpec:
    """Input bundle: mu, nu with k+3 hops at p, q, and a target arc
    [r, s] inside the complement of the first k+1 fundamental domains
    of nu."""

    __slots__ = ("mu", "nu", "k", "p", "q", "r", "s")

    def __init__(self, mu, nu, k, p, q, r, s):
        self.mu = mu.as_circle()
        self.nu = nu.as_circle()
        self.k = int(k)
        self.p = circle(p)
        self.q = circle(q)
        self.r = circle(r)
        self.s = circle(s)

    def validate(self):
        if self.k < 1:
            raise ValueError("hop parameter k must be at least 1")
        cert_mu = admits_hops(self.mu, self.p, self.k + 3)
        if not isinstance(cert_mu, HopCertificate):
            raise ValueError("first map does not admit %d hops at %s: %r"
                             % (self.k + 3, self.p, cert_mu))
        cert_nu = admits_hops(self.nu, self.q, self.k + 3)
        if not isinstance(cert_nu, HopCertificate):
            raise ValueError("second map does not admit %d hops at %s: %r"
                             % (self.k + 3, self.q, cert_nu))
        if self.r == self.s:
            raise ValueError("target arc is degenerate")
        q_top = cert_nu.orbit[self.k + 1]
        if not position_chain([q_top, self.r, self.s, self.q]):
            raise ValueError("target arc [%s, %s] is not inside the complement "
                             "of [%s, %s]" % (self.r, self.s, self.q, q_top))
        return cert_mu, cert_nu

    def __repr__(self):
        return ("ConjugatorSpec(k=%d, p=%s, q=%s, r=%s, s=%s)"
                % (self.k, self.p, self.q, self.r, self.s))


def construct_conjugator(spec):
    """Build the conjugator gamma for a validated ConjugatorSpec.

    gamma sends the i-th fundamental domain of mu at p onto the i-th of
    nu at q for i <= k, forcing the conjugate of mu to copy nu there;
    the complement is crossed through four marked points chosen so that
    r and s land, under the conjugated map, strictly between s and q.
    Both postconditions are re-verified exactly before returning.
    """
    cert_mu, cert_nu = spec.validate()
    mu, nu, k = spec.mu, spec.nu, spec.k
    P = list(cert_mu.orbit)  # p, p mu, ..., p mu^{k+3}
    Q = list(cert_nu.orbit)
    mu_inv = inverse(mu)
    frags = [thompson_like_map(Arc(P[0], P[1]), Arc(Q[0], Q[1]))]
    for i in range(1, k + 1):
        step = mu_inv.restrict(Arc(P[i], P[i + 1]))
        tail = nu.restrict(Arc(Q[i - 1], Q[i]))
        frags.append(step.then(frags[i - 1]).then(tail))
    m1 = Arc(P[k + 1], P[k + 2]).interp("1/2")
    m2 = Arc(P[k + 1], P[k + 2]).interp("3/4")
    m1m, m2m = mu.eval(m1), mu.eval(m2)
    n1 = Arc(spec.s, spec.q).interp("1/2")
    n2 = Arc(spec.s, spec.q).interp("3/4")
    frags += [
        thompson_like_map(Arc(P[k + 1], m1), Arc(Q[k + 1], spec.r)),
        thompson_like_map(Arc(m1, m2), Arc(spec.r, spec.s)),
        thompson_like_map(Arc(m2, m1m), Arc(spec.s, n1)),
        thompson_like_map(Arc(m1m, m2m), Arc(n1, n2)),
        thompson_like_map(Arc(m2m, P[0]), Arc(n2, Q[0])),
    ]
    gamma = restrict_patch(frags, CIRCLE)
    mg = conjugate(mu, gamma)
    if not mg.agrees_with(nu, Arc(Q[0], Q[k])):
        raise ConstructionError("conjugate does not copy the target map on "
                                "[%s, %s]" % (Q[0], Q[k]))
    chain = [Q[k + 1], spec.r, spec.s, mg.eval(spec.r), mg.eval(spec.s), Q[0]]
    if not position_chain(chain):
        raise ConstructionError("circular chain fails: %s"
                                % " < ".join(str(z) for z in chain))
    return gamma


# ---------------------------------------------------------------------------
# torsion-case data


class FiniteCaseData:
    """Explicit elements for the three torsion cases."""

    __slots__ = ("case", "p", "alpha", "kappa0", "kappa1", "tau", "kappa1_tau")

    def __init__(self, case, p, alpha, kappa0, kappa1, tau, kappa1_tau):
        self.case = case
        self.p = p
        self.alpha = alpha
        self.kappa0 = kappa0
        self.kappa1 = kappa1
        self.tau = tau
        self.kappa1_tau = kappa1_tau

    def __repr__(self):
        return "FiniteCaseData(case=%r, p=%d)" % (self.case, self.p)


def case_c_flattening():
    """The map (0, 7/8) -> (0, 1): identity up to 3/4, then slope 2."""
    return ArcMap(Arc(0, "7/8"), Arc(0, 0),
                  [("0", "0"), ("3/4", "3/4"), ("7/8", "1")])


def prop_finite_data(case, p=None):
    """(alpha, kappa0, kappa1, tau?) for a torsion case tag 'a', 'b', 'c'."""
    zc = zeta().as_circle()
    if case == "a":
        alpha = torsion_rep(2)
        half_turnled = compose(alpha, zc)
        kappa1 = conjugate(zc, compose(half_turnled, half_turnled)).to_interval()
        return FiniteCaseData("a", 2, alpha, zeta(), kappa1, None, None)
    if case == "b":
        alpha = torsion_rep(3)
        kappa1 = conjugate(zc, alpha).to_interval()
        return FiniteCaseData("b", 3, alpha, zeta(), kappa1, None, None)
    if case == "c":
        p = 5 if p is None else p
        if p < 5 or not is_prime(p):
            raise ValueError("the third case needs a prime p >= 5, got %r" % (p,))
        alpha = torsion_rep(p)
        kappa1 = conjugate(zc, alpha).to_interval()
        tau = case_c_flattening()
        kappa1_tau = transport(kappa1, tau).to_interval()
        return FiniteCaseData("c", p, alpha, zeta(), kappa1, tau, kappa1_tau)
    raise ValueError("case must be 'a', 'b' or 'c', got %r" % (case,))


# ---------------------------------------------------------------------------
# power search


def power_search(alpha, bound=64):
    """Least n <= bound with the n-th power having a fixed point, with
    that power; None when the bound is exhausted."""
    if bound < 1:
        raise ValueError("bound must be positive")
    g = alpha.as_circle()
    cur = g
    for n in range(1, bound + 1):
        if not cur.fixed_points().is_empty():
            return n, cur
        cur = compose(cur, g)
    return None


# ---------------------------------------------------------------------------
# the infinite-order pipeline


class CheckResult:
    __slots__ = ("name", "passed", "detail")

    def __init__(self, name, passed, detail=""):
        self.name = name
        self.passed = passed
        self.detail = detail

    def to_json_dict(self):
        d = {"name": self.name, "passed": self.passed}
        if self.detail:
            d["detail"] = self.detail
        return d

    def __repr__(self):
        return "[%s] %s" % ("pass" if self.passed else "FAIL", self.name)


class PipelineError(RuntimeError):
    """An identity in the pipeline failed; carries the partial report."""

    def __init__(self, name, detail, report):
        super().__init__("%s: %s" % (name, detail) if detail else name)
        self.failing = name
        self.report = report


class PipelineState:
    """All named objects of the infinite-order construction plus the
    full check report."""

    __slots__ = ("alpha", "zeta", "a", "c", "d", "a_orbit", "b_orbit", "tau",
                 "beta", "gamma", "zeta_conj", "eta", "mu0", "mu1",
                 "p", "q", "r", "s", "hop_base", "cover", "report")

    def __init__(self, **kw):
        for name in self.__slots__:
            object.__setattr__(self, name, kw[name])

    def __setattr__(self, name, value):
        raise AttributeError("PipelineState is immutable")

    def passed(self):
        return all(c.passed for c in self.report)

    def to_json_dict(self):
        return {
            "schema": "pipeline-report/1",
            "passed": self.passed(),
            "points": {
                "a": str(self.a), "p": str(self.p), "q": str(self.q),
                "r": str(self.r), "s": str(self.s), "hop_base": str(self.hop_base),
                "c": str(self.c), "d": str(self.d),
            },
            "cover_size": len(self.cover),
            "checks": [c.to_json_dict() for c in self.report],
        }


SAMPLES_PER_ARC = 50
ORBIT_SAMPLES = 50


class _Run:
    def __init__(self):
        self.report = []

    def check(self, name, ok, detail=""):
        self.report.append(CheckResult(name, bool(ok), detail))
        if not ok:
            raise PipelineError(name, detail, self.report)

    def fail(self, name, detail):
        self.check(name, False, detail)


def _increasing_at(g, comp, pt):
    y = g.eval(pt)
    return comp.rel(y) > comp.rel(pt)


def _hop_base(g, allow_invert):
    """A dyadic breakpoint inside a support component where the map
    moves points counterclockwise; optionally tries the inverse."""
    candidates = (g, inverse(g)) if allow_invert else (g,)
    for cand in candidates:
        supp = cand.support()
        for b in cand.breakpoints():
            pt = CirclePoint(b)
            comp = supp.component_containing(pt.pos.as_fraction())
            if comp is not None and _increasing_at(cand, comp, pt):
                return cand, pt, comp
    return None


def prop_infinite_pipeline(alpha, zeta_elt, a=None):
    """Run the infinite-order construction and verify every identity.

    Preconditions: both maps of infinite order; alpha with a fixed point
    (apply power_search first otherwise).  When ``a`` is omitted it is
    chosen as the smallest dyadic breakpoint of alpha inside a support
    component on which alpha is increasing, inverting alpha if needed.
    """
    run = _Run()
    al = alpha.as_circle()
    ze = zeta_elt.as_circle()

    n = order_of(al)
    if n is not INFINITE:
        raise PipelineError("alpha-infinite-order",
                            "order came out %r" % (n,), run.report)
    n = order_of(ze)
    if n is not INFINITE:
        raise PipelineError("zeta-infinite-order",
                            "order came out %r" % (n,), run.report)
    if al.fixed_points().is_empty():
        raise PipelineError("alpha-has-fixed-point",
                            "no fixed point; replace alpha by a power first "
                            "(see power_search)", run.report)
    run.check("alpha-infinite-order", True)
    run.check("zeta-infinite-order", True)
    run.check("alpha-has-fixed-point", True)

    # orientation normalization and the choice of a
    if a is not None:
        a = circle(a)
        comp = al.support().component_containing(a.pos.as_fraction())
        if comp is None:
            raise PipelineError("a-in-support", "%s is fixed by alpha" % a, run.report)
        if not _increasing_at(al, comp, a):
            al = inverse(al)
            comp = al.support().component_containing(a.pos.as_fraction())
    else:
        found = _hop_base(al, allow_invert=True)
        if found is None:
            raise PipelineError("alpha-increasing-component",
                                "no support component on which alpha or its "
                                "inverse moves points counterclockwise", run.report)
        al, a, comp = found
    run.check("a-in-support", True, "a = %s on component %s" % (a, comp))
    c, d = comp.start, comp.end

    # orbit points a_i = a alpha^i
    a_pt = {0: a}
    al_inv = inverse(al)
    for i in range(1, 21):
        a_pt[i] = al.eval(a_pt[i - 1])
    for i in range(-1, -12, -1):
        a_pt[i] = al_inv.eval(a_pt[i + 1])

    cert = admits_hops(al, a, 18)
    run.check("alpha-18-hops-at-a", isinstance(cert, HopCertificate), repr(cert))

    # the box (a8, a10), its local generators, and beta
    tau = ArcMap.concat([
        thompson_like_map(Arc(0, "1/2"), Arc(a_pt[8], a_pt[9])),
        thompson_like_map(Arc("1/2", 0), Arc(a_pt[9], a_pt[10])),
    ])
    x0t = transport(x(0), tau)
    x1t = transport(x(1), tau)
    x0t2 = conjugate(x0t, power(al, -2))
    run.check("local-x0-conjugate-support",
              x0t2.support().issubset_of([Arc(a_pt[6], a_pt[8])]),
              str(x0t2.support()))
    run.check("local-x1-support",
              x1t.support().issubset_of([Arc(a_pt[8], a_pt[10])]),
              str(x1t.support()))
    beta = compose(al, x0t2, x1t)

    b_pt = {0: a}
    for i in range(1, 19):
        b_pt[i] = beta.eval(b_pt[i - 1])

    run.check("b_i-equals-a_i-for-i<=6",
              all(b_pt[i] == a_pt[i] for i in range(7)),
              "first disagreement at i = %s"
              % next((i for i in range(7) if b_pt[i] != a_pt[i]), None))
    run.check("a_i<b_i<a_{i+1}-for-7<=i<=17",
              all(position_chain([a_pt[i], b_pt[i], a_pt[i + 1]])
                  for i in range(7, 18)))
    cert_b = admits_hops(beta, a, 18)
    run.check("beta-18-hops-at-a", isinstance(cert_b, HopCertificate), repr(cert_b))

    # marked points and the conjugator
    r = Arc(b_pt[16], b_pt[17]).interp("1/2")
    s = Arc(a_pt[-1], a_pt[0]).interp("3/4")
    found = _hop_base(ze, allow_invert=False)
    if found is None:
        raise PipelineError("zeta-hop-base",
                            "the conjugating element has no support component "
                            "on which it moves points counterclockwise; "
                            "the hop construction does not apply", run.report)
    _, p_zeta, _ = found
    cert_z = admits_hops(ze, p_zeta, 18)
    run.check("zeta-18-hops", isinstance(cert_z, HopCertificate),
              "base %s" % p_zeta)

    gamma = construct_conjugator(ConjugatorSpec(ze, beta, 15, p_zeta, a, r, s))
    zg = conjugate(ze, gamma)
    run.check("conjugate-copies-beta-on-[b0,b15]",
              zg.agrees_with(beta, Arc(b_pt[0], b_pt[15])))
    run.check("chain-b16<r<b17<c<a_-1<s<rzg<szg<a0",
              position_chain([b_pt[16], r, b_pt[17], c, a_pt[-1], s,
                              zg.eval(r), zg.eval(s), a_pt[0]]))

    # displays: how alpha and the conjugated map move the two end arcs
    for y in dyadic_points_in_arc(Arc(b_pt[15], c), SAMPLES_PER_ARC):
        if not Arc(b_pt[16], c).contains(al.eval(y)):
            run.fail("display-alpha-pushes-(b15,c)-into-(b16,c)", "point %s" % y)
    run.check("display-alpha-pushes-(b15,c)-into-(b16,c)", True)
    for y in dyadic_points_in_arc(Arc(c, a_pt[1]), SAMPLES_PER_ARC):
        if not Arc(c, a_pt[0]).contains(al_inv.eval(y)):
            run.fail("display-alpha-inverse-pushes-(c,a1)-into-(c,a0)", "point %s" % y)
    run.check("display-alpha-inverse-pushes-(c,a1)-into-(c,a0)", True)

    zg_inv = inverse(zg)
    run.check("r-lands-in-(b15,c)", position_chain([b_pt[15], r, c]))
    y = b_pt[17]
    for i in range(ORBIT_SAMPLES):
        if not Arc(c, a_pt[0]).contains(zg.eval(y)):
            run.fail("display-b17-orbit-into-(c,a0)", "i = %d" % i)
        y = al.eval(y)
    run.check("display-b17-orbit-into-(c,a0)", True)
    y = a_pt[-1]
    for i in range(ORBIT_SAMPLES):
        if not Arc(b_pt[15], r).contains(zg_inv.eval(y)):
            run.fail("display-a_-1-orbit-into-(b15,r)", "i = %d" % i)
        y = al_inv.eval(y)
    run.check("display-a_-1-orbit-into-(b15,r)", True)

    # eta and the two box generators
    eta = compose(al_inv, zg)
    run.check("eta-trivial-on-[a1,a6]", eta.is_trivial_on(Arc(a_pt[1], a_pt[6])))
    run.check("eta-trivial-on-[a10,b16]", eta.is_trivial_on(Arc(a_pt[10], b_pt[16])))
    run.check("eta-copies-local-generators-on-[a6,a10]",
              eta.agrees_with(compose(x0t2, x1t), Arc(a_pt[6], a_pt[10])))
    run.check("eta-equals-local-x1-on-[a8,a10]",
              eta.agrees_with(x1t, Arc(a_pt[8], a_pt[10])))

    mu0 = conjugate(conjugate(eta, power(al, 2)),
                    compose(power(al, 2), zg, power(al, -3)))
    mu1 = conjugate(eta, compose(power(al, -4), zg_inv, power(al, 5)))
    run.check("mu0-equals-local-x0-on-[a8,a10]",
              mu0.agrees_with(x0t, Arc(a_pt[8], a_pt[10])))
    run.check("mu1-equals-local-x1-on-[a8,a10]",
              mu1.agrees_with(x1t, Arc(a_pt[8], a_pt[10])))
    run.check("supp-mu0-in-(a8,a12)u(c,a3)",
              mu0.support().issubset_of([Arc(a_pt[8], a_pt[12]), Arc(c, a_pt[3])]),
              str(mu0.support()))
    run.check("supp-mu1-in-(a6,a10)u(b16,c)",
              mu1.support().issubset_of([Arc(a_pt[6], a_pt[10]), Arc(b_pt[16], c)]),
              str(mu1.support()))
    run.check("supp-mu0-meets-mu1-only-in-(a8,a10)",
              mu0.support().intersect(mu1.support()).issubset_of([Arc(a_pt[8], a_pt[10])]))

    # the covering family
    p = Arc(a_pt[8], a_pt[9]).interp("1/2")
    q = Arc(al.eval(p), a_pt[10]).interp("1/2")
    run.check("chain-a8<p<a9<palpha<q<a10",
              position_chain([a_pt[8], p, a_pt[9], al.eval(p), q, a_pt[10]]))
    pows = {0: PLMap.identity(CIRCLE)}
    for i in range(1, 11):
        pows[i] = compose(pows[i - 1], al)
        pows[-i] = compose(pows[-(i - 1)], al_inv)
    cover = [("alpha^%d" % i, pows[i]) for i in range(-10, 10)]
    cover.append(("alpha^-10*conj^-1", compose(pows[-10], zg_inv)))
    cover.append(("alpha^-9*conj^-1", compose(pows[-9], zg_inv)))
    run.check("cover-has-22-members", len(cover) == 22)
    arcs = [Arc(d_map.eval(p), d_map.eval(q)) for _, d_map in cover]
    run.check("cover-arcs-fill-circle", union_covers_circle(arcs))

    return PipelineState(
        alpha=al, zeta=ze, a=a, c=c, d=d, a_orbit=a_pt, b_orbit=b_pt, tau=tau,
        beta=beta, gamma=gamma, zeta_conj=zg, eta=eta, mu0=mu0, mu1=mu1,
        p=p, q=q, r=r, s=s, hop_base=p_zeta, cover=cover, report=run.report)

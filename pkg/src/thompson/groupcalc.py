"""Group-level queries for F and T: standard elements, membership,
orders, rotation numbers, hop certificates, box transport and the
two-box factorisation.

Conventions: F is realized as interval maps fixing 0 and 1, T as circle
maps; any interval map embeds in T by gluing the endpoints.  The
standard generating pair of F is ``x(0)``, ``x(1)``; the higher
generators satisfy x_{i+1} = x_i ^ x_0.
"""

from __future__ import annotations

from fractions import Fraction

from .dyadic import ZERO, CirclePoint, Dyadic, circle, dyadic
from .plmap import (Arc, ArcMap, CIRCLE, INTERVAL, PLMap, SupportSet, compose,
                    conjugate, inverse, power, restrict_patch, rotation,
                    thompson_like_map, transport)
from .treepair import TreePair, element_map


# ---------------------------------------------------------------------------
# standard elements


def zeta():
    """The element (00,01,10,11) -> (0,100,101,11): doubles on [0,1/4],
    halves on (1/4,3/4], rests on (3/4,1]."""
    return element_map("(00,01,10,11) -> (0,100,101,11)")


_X_CACHE = {}


def x(n):
    """The standard generators of F: x(0), x(1) from their tree pairs,
    x(n+1) = x(n) conjugated by x(0)."""
    if n < 0:
        raise ValueError("generator index must be nonnegative")
    if n not in _X_CACHE:
        if n == 0:
            _X_CACHE[0] = element_map("(00,01,1) -> (0,10,11)")
        elif n == 1:
            _X_CACHE[1] = element_map("(0,100,101,11) -> (0,10,110,111)")
        else:
            _X_CACHE[n] = conjugate(x(n - 1), x(0))
    return _X_CACHE[n]


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def torsion_rep(p):
    """The standard torsion element of rotation number 1/p, p prime.

    p = 2 is the half rotation (0,1) -> (1,0); p = 3 is
    (0,10,11) -> (10,11,0); for p >= 5 the leaves are
    00, 01, 10, 110, ..., 1^{p-3}0, 1^{p-2} rotated by one.
    """
    if not is_prime(p):
        raise ValueError("torsion representatives are indexed by primes, got %d" % p)
    if p == 2:
        words = ["0", "1"]
    elif p == 3:
        words = ["0", "10", "11"]
    else:
        words = ["00", "01"] + ["1" * k + "0" for k in range(1, p - 2)] + ["1" * (p - 2)]
    images = words[1:] + words[:1]
    return TreePair(sorted(words), images).to_plmap(CIRCLE)


# ---------------------------------------------------------------------------
# membership


def is_member(f, group, box=None):
    """Validator membership test.

    ``group`` is "F" or "T"; passing ``box`` restricts to the pointwise
    stabiliser of the box complement (support contained in the open box).
    Structural validity (dyadic breakpoints, power-of-two slopes) is
    guaranteed by the PLMap type itself.
    """
    if group not in ("F", "T"):
        raise ValueError("group must be 'F' or 'T'")
    if group == "F" and f.as_circle().ys[0] != ZERO:
        return False
    if box is None:
        return True
    a = box if isinstance(box, Arc) else Arc(box[0], box[1])
    return f.support().issubset_of([a])


# ---------------------------------------------------------------------------
# order and rotation number


class _Infinite:
    __slots__ = ()

    def __repr__(self):
        return "Infinite"


INFINITE = _Infinite()


class UnknownOrder:
    """Bounded search gave up; carries the bound that was exhausted."""

    __slots__ = ("bound",)

    def __init__(self, bound):
        self.bound = bound

    def __repr__(self):
        return "Unknown(bound=%d)" % self.bound

    def __eq__(self, other):
        return isinstance(other, UnknownOrder) and other.bound == self.bound


DEFAULT_ORDER_BOUND = 4096


def order_of(f, bound=DEFAULT_ORDER_BOUND):
    """Exact order if at most ``bound``; Infinite when certifiable.

    A nontrivial orientation-preserving finite-order circle map has no
    fixed point, so a nonempty fixed set certifies infinite order (this
    covers every nontrivial element of F).  Otherwise the orbit of 0 is
    traced: if it first returns after m steps, the order is m when
    f^m = 1 and infinite when f^m is a nontrivial map fixing 0.
    """
    if bound < 1:
        raise ValueError("order bound must be positive")
    g = f.as_circle()
    if g.is_identity():
        return 1
    if not g.fixed_points().is_empty():
        return INFINITE
    start = CirclePoint(0)
    z = start
    for m in range(1, bound + 1):
        z = g.eval(z)
        if z == start:
            return m if power(g, m).is_identity() else INFINITE
    return UnknownOrder(bound)


def rotation_number(f, bound=DEFAULT_ORDER_BOUND):
    """Rotation number of a finite-order map as a reduced Fraction;
    None when the order cannot be certified within the bound."""
    n = order_of(f, bound)
    if n is INFINITE or isinstance(n, UnknownOrder):
        return None
    if n == 1:
        return Fraction(0)
    g = f.as_circle()
    bps = g.breakpoints()
    seed = CirclePoint(bps[0] if bps else ZERO)
    orbit = [seed]
    for _ in range(n - 1):
        orbit.append(g.eval(orbit[-1]))
    order_key = sorted(orbit, key=lambda z: z.pos.as_fraction())
    k = (order_key.index(orbit[1]) - order_key.index(orbit[0])) % n
    return Fraction(k, n)


# ---------------------------------------------------------------------------
# hops


class HopCertificate:
    """A verified orbit p, pf, ..., pf^k whose step arcs are pairwise
    disjoint; each arc [pf^i, pf^{i+1}) is a fundamental domain."""

    __slots__ = ("base", "k", "orbit")

    def __init__(self, base, k, orbit):
        self.base = base
        self.k = k
        self.orbit = tuple(orbit)

    def arcs(self):
        return [Arc(self.orbit[i], self.orbit[i + 1]) for i in range(self.k)]

    def validate(self):
        arcs = self.arcs()
        return all(arcs[i].disjoint_from(arcs[j])
                   for i in range(len(arcs)) for j in range(i + 1, len(arcs)))

    def __repr__(self):
        return "HopCertificate(base=%s, k=%d)" % (self.base, self.k)


class HopFailure:
    """First pair of overlapping orbit arcs found."""

    __slots__ = ("i", "j")

    def __init__(self, i, j):
        self.i = i
        self.j = j

    def __repr__(self):
        return "HopFailure(i=%d, j=%d)" % (self.i, self.j)


def admits_hops(f, p, k):
    """Certificate that f admits k hops at p, or the violating pair."""
    if k < 1:
        raise ValueError("hop count must be positive")
    g = f.as_circle()
    p = circle(p)
    if not g.support().contains(p.pos.as_fraction()):
        raise ValueError("hop base %s is fixed by the map" % p)
    orbit = [p]
    for _ in range(k + 1):
        orbit.append(g.eval(orbit[-1]))
    arcs = [Arc(orbit[i], orbit[i + 1]) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if not arcs[i].disjoint_from(arcs[j]):
                return HopFailure(i, j)
    return HopCertificate(p, k, orbit[:k + 1])


# ---------------------------------------------------------------------------
# box transport and the two-box factorisation


def box_generators(box, base_gens):
    """Conjugates of the given maps into a box by the canonical
    Thompson-like map, extended by the identity outside."""
    target = box if isinstance(box, Arc) else Arc(box[0], box[1])
    tau = thompson_like_map(Arc(0, 0), target)
    out = []
    for g in base_gens:
        h = transport(g, tau)
        if g.carrier == INTERVAL and not target.contains(0):
            h = h.to_interval()
        out.append(h)
    return out


class Factorisation:
    """gamma written as a product of an [a,c]-supported and a
    [b,d]-supported factor.

    When the left-to-right order had to come from factoring the inverse,
    ``inverted`` is set and the product is beta-then-alpha instead of
    alpha-then-beta.
    """

    __slots__ = ("alpha", "beta", "inverted")

    def __init__(self, alpha, beta, inverted):
        self.alpha = alpha
        self.beta = beta
        self.inverted = inverted

    def product(self):
        if self.inverted:
            return compose(self.beta, self.alpha)
        return compose(self.alpha, self.beta)

    def __repr__(self):
        order = "beta*alpha" if self.inverted else "alpha*beta"
        return "Factorisation(%s)" % order


def factor_over_cover(gamma, a, b, c, d):
    """Split gamma, supported in [a,d], over the cover [a,c] u [b,d].

    Follows the constructive proof: with e the preimage of b, the first
    factor copies gamma on [a,e] and crosses [e,c] to [b,c] by the
    canonical Thompson-like map; the second factor is what remains and
    automatically fixes [a,b].  When the preimage of b lies above b the
    construction is applied to the inverse and the two factors are
    inverted, which reverses the product order (see Factorisation).
    """
    a, b, c, d = dyadic(a), dyadic(b), dyadic(c), dyadic(d)
    if not a < b < c < d:
        raise ValueError("need a < b < c < d")
    g = gamma.to_interval()
    if not g.support().issubset_of([Arc(a, d)]):
        raise ValueError("map is not supported in [%s, %s]" % (a, d))

    def split(h):
        e = inverse(h).eval(b)
        frag1 = h.restrict(Arc(a, e)) if e != a else None
        frag2 = thompson_like_map(Arc(e, c), Arc(b, c))
        frags = [f for f in (frag1, frag2) if f is not None]
        frags.append(ArcMap.identity(Arc(c, a)))
        alpha = restrict_patch(frags, INTERVAL)
        beta = compose(inverse(alpha), h)
        return alpha, beta

    e = inverse(g).eval(b)
    if a < e <= b:
        alpha, beta = split(g)
        fact = Factorisation(alpha, beta, inverted=False)
    else:
        alpha1, beta1 = split(inverse(g))
        fact = Factorisation(inverse(alpha1), inverse(beta1), inverted=True)
    if fact.product() != g:
        raise AssertionError("factorisation does not multiply back to the input")
    if not fact.alpha.support().issubset_of([Arc(a, c)]):
        raise AssertionError("left factor escapes [%s, %s]" % (a, c))
    if not fact.beta.support().issubset_of([Arc(b, d)]):
        raise AssertionError("right factor escapes [%s, %s]" % (b, d))
    return fact

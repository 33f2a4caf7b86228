"""Dyadic piecewise-linear homeomorphisms of the interval and the circle.

A ``PLMap`` stores the lift of an orientation-preserving PL bijection:
breakpoint pairs (x_i, y_i) with 0 = x_0 < ... < x_n = 1, y strictly
increasing, y_n = y_0 + 1 and y_0 in [0, 1).  Interval maps additionally
have y_0 = 0.  Slopes of all pieces must be integer powers of two and
all breakpoints dyadic; the constructor enforces this and merges
redundant breakpoints, so equality of maps is equality of the stored
tuples.

Composition is written left to right throughout the package: points are
acted on from the right, ``compose(f, g)`` is "apply f, then g", and
``conjugate(f, g) == compose(inverse(g), f, g)``.

``Arc`` is an open counterclockwise arc of the circle.  By convention an
arc whose endpoints coincide is the complement of that single point;
this is exactly the support of a map whose only fixed point is the
shared endpoint.  Arc endpoints are exact rationals: support components
can end at isolated fixed points, and isolated fixed points of dyadic
PL maps may have odd denominators (a slope-4 piece through the diagonal
fixes a point such as 1/3).

``ArcMap`` is a PL fragment between two arcs, used to restrict maps,
to build Thompson-like maps between boxes, and to reassemble global maps
with ``restrict_patch``.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction

from .dyadic import ONE, ZERO, CirclePoint, Dyadic, circle, dyadic, is_power_of_two


class MapError(ValueError):
    """A would-be map violates the dyadic PL homeomorphism invariants."""


# ---------------------------------------------------------------------------
# positions and arcs


def position(x):
    """Coerce a point-like value to an exact Fraction in [0, 1)."""
    if isinstance(x, CirclePoint):
        t = x.pos.as_fraction()
    elif isinstance(x, Dyadic):
        t = x.as_fraction()
    elif isinstance(x, (int, Fraction)):
        t = Fraction(x)
    elif isinstance(x, str):
        t = dyadic(x).as_fraction()
    else:
        raise TypeError("not a circle position: %r" % (x,))
    return t - (t.numerator // t.denominator)


def _rel(x, base):
    """Counterclockwise distance from base to x, in [0, 1)."""
    d = x - base
    return d - (d.numerator // d.denominator)


class Arc:
    """An open counterclockwise arc (start, end) of the circle.

    start == end denotes the complement of the single point ``start``.
    """

    __slots__ = ("start", "end")

    def __init__(self, start, end):
        object.__setattr__(self, "start", position(start))
        object.__setattr__(self, "end", position(end))

    def __setattr__(self, name, value):
        raise AttributeError("Arc is immutable")

    def span(self):
        r = _rel(self.end, self.start)
        return r if r else Fraction(1)

    def rel(self, x):
        return _rel(position(x), self.start)

    def contains(self, x):
        """Strict (open-arc) membership."""
        r = self.rel(x)
        return 0 < r < self.span()

    def contains_closure(self, x):
        r = self.rel(x)
        return r <= self.span()

    def is_subarc_of(self, outer):
        """Open-arc containment self `subset of` outer."""
        if self.span() > outer.span():
            return False
        u = _rel(self.start, outer.start)
        return u + self.span() <= outer.span()

    def disjoint_from(self, other):
        """True iff the two open arcs have empty intersection."""
        if self.start == other.start:
            return False
        return not (self.contains(other.start) or other.contains(self.start)
                    or other.is_subarc_of(self) or self.is_subarc_of(other))

    def intersect(self, other):
        """Intersection with another open arc, as 0, 1 or 2 open arcs."""
        s1 = self.span()
        u = _rel(other.start, self.start)
        s2 = other.span()
        pieces = []
        for lo in (u, u - 1):
            a = max(lo, Fraction(0))
            b = min(lo + s2, s1)
            if a < b:
                pieces.append(Arc(self.start + a, self.start + b))
        return pieces

    def interp(self, t):
        """Dyadic point at fraction t along the arc (endpoints must be dyadic)."""
        t = dyadic(t)
        step = Dyadic.from_fraction(self.span()) * t
        return CirclePoint(Dyadic.from_fraction(self.start) + step)

    def midpoint(self):
        return self.interp(Dyadic(1, 1))

    def start_point(self):
        return CirclePoint(Dyadic.from_fraction(self.start))

    def end_point(self):
        return CirclePoint(Dyadic.from_fraction(self.end))

    def __eq__(self, other):
        if not isinstance(other, Arc):
            return NotImplemented
        return self.start == other.start and self.end == other.end

    def __hash__(self):
        return hash((self.start, self.end))

    def __str__(self):
        end = "1" if self.end == 0 and self.start != 0 else str(self.end)
        return "(%s, %s)" % (self.start, end)

    __repr__ = __str__


def arc(a, b):
    return Arc(a, b)


def union_covers_circle(arcs):
    """Exact test that a finite union of open arcs is the whole circle.

    The complement of the union is closed and its boundary consists of
    arc endpoints, so the union is everything iff every endpoint lies
    strictly inside some arc.
    """
    arcs = list(arcs)
    if not arcs:
        return False
    for a in arcs:
        for p in (a.start, a.end):
            if not any(other.contains(p) for other in arcs):
                return False
    return True


WHOLE_CIRCLE = object()


def normalize_arc_union(arcs):
    """Union of open arcs as disjoint maximal open arcs.

    Returns WHOLE_CIRCLE when the union is the full circle.
    """
    arcs = [a for a in arcs if a is not None]
    if not arcs:
        return []
    if union_covers_circle(arcs):
        return WHOLE_CIRCLE
    base = None
    for a in arcs:
        for p in (a.start, a.end):
            if not any(other.contains(p) for other in arcs):
                base = p
                break
        if base is not None:
            break
    # base is uncovered, so every arc unrolls to a subinterval of [0, 1]
    ivals = sorted((_rel(a.start, base), _rel(a.start, base) + a.span()) for a in arcs)
    merged = []
    lo, hi = ivals[0]
    for a, b in ivals[1:]:
        if a < hi:
            hi = max(hi, b)
        else:
            merged.append((lo, hi))
            lo, hi = a, b
    merged.append((lo, hi))
    return [Arc(base + a, base + b) for a, b in merged]


def arc_in_union(inner, arcs):
    """True iff the open arc ``inner`` is contained in the union of arcs."""
    norm = normalize_arc_union(arcs)
    if norm is WHOLE_CIRCLE:
        return True
    return any(inner.is_subarc_of(a) for a in norm)


def dyadic_points_in_arc(a, n):
    """n distinct dyadic circle points strictly inside an arc, evenly spread."""
    if n < 1:
        raise ValueError("need at least one sample")
    span = a.span()
    j = 0
    while Fraction(1 << j) * span < n + 2:
        j += 1
    den = 1 << j
    k_first = a.start.numerator * den // a.start.denominator + 1
    # unrolled grid points k/den with start < k/den < start + span
    hi = a.start + span
    k_last = -((-hi.numerator * den) // hi.denominator) - 1  # ceil - 1
    count = k_last - k_first + 1
    if count < n:
        raise ValueError("arc too small for %d samples" % n)
    picks = [k_first + (i * (count - 1)) // (n - 1) for i in range(n)] if n > 1 else [k_first]
    return [CirclePoint(Dyadic(k, j)) for k in picks]


# ---------------------------------------------------------------------------
# fixed sets and supports


class FixedSet:
    """The fixed-point set of a PL map: fixed arcs plus isolated points.

    Arcs are closed counterclockwise arcs with dyadic endpoints (they
    are unions of slope-one pieces).  Isolated points are exact
    rationals and need not be dyadic.
    """

    __slots__ = ("everything", "arcs", "points")

    def __init__(self, everything=False, arcs=(), points=()):
        object.__setattr__(self, "everything", everything)
        object.__setattr__(self, "arcs", tuple(arcs))
        object.__setattr__(self, "points", tuple(points))

    def __setattr__(self, name, value):
        raise AttributeError("FixedSet is immutable")

    def is_empty(self):
        return not self.everything and not self.arcs and not self.points

    def contains(self, x):
        if self.everything:
            return True
        x = position(x)
        if any(x == p for p in self.points):
            return True
        return any(_rel(x, lo) <= _rel(hi, lo) for lo, hi in self.arcs)

    def __str__(self):
        if self.everything:
            return "everything"
        parts = ["[%s, %s]" % (lo, hi) for lo, hi in self.arcs]
        parts += ["{%s}" % p for p in self.points]
        return " u ".join(parts) if parts else "empty"

    __repr__ = __str__


class SupportSet:
    """Maximal disjoint open arcs moved by a map."""

    __slots__ = ("whole", "arcs")

    def __init__(self, arcs=(), whole=False):
        object.__setattr__(self, "whole", whole)
        object.__setattr__(self, "arcs", tuple(arcs))

    def __setattr__(self, name, value):
        raise AttributeError("SupportSet is immutable")

    def is_empty(self):
        return not self.whole and not self.arcs

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self):
        return len(self.arcs)

    def contains(self, x):
        if self.whole:
            return True
        return any(a.contains(x) for a in self.arcs)

    def component_containing(self, x):
        for a in self.arcs:
            if a.contains(x):
                return a
        return None

    def issubset_of(self, arcs):
        """Support contained in a union of open arcs (exact)."""
        if self.whole:
            return normalize_arc_union(arcs) is WHOLE_CIRCLE
        return all(arc_in_union(a, arcs) for a in self.arcs)

    def intersect(self, other):
        if self.whole:
            return other
        if other.whole:
            return self
        pieces = []
        for a in self.arcs:
            for b in other.arcs:
                pieces.extend(a.intersect(b))
        return SupportSet(pieces)

    def __str__(self):
        if self.whole:
            return "whole"
        return " u ".join(str(a) for a in self.arcs) if self.arcs else "empty"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# PL fragments between arcs


class ArcMap:
    """A PL bijection between two arcs with dyadic data.

    Stored as offset pairs from the arc start points: strictly
    increasing dyadic pairs (u_i, v_i) from (0, 0) to (src span,
    dst span), every piece slope a power of two.
    """

    __slots__ = ("src", "dst", "offs", "ks")

    def __init__(self, src, dst, offs):
        pts = [(dyadic(u), dyadic(v)) for u, v in offs]
        if len(pts) < 2:
            raise MapError("a fragment needs at least two sample points")
        if pts[0] != (ZERO, ZERO):
            raise MapError("fragment offsets must start at (0, 0)")
        span_u = Dyadic.from_fraction(src.span())
        span_v = Dyadic.from_fraction(dst.span())
        if pts[-1] != (span_u, span_v):
            raise MapError("fragment offsets must end at the arc spans")
        pts = _merge_collinear(pts)
        ks = _piece_slopes(pts)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "offs", tuple(pts))
        object.__setattr__(self, "ks", tuple(ks))

    def __setattr__(self, name, value):
        raise AttributeError("ArcMap is immutable")

    @staticmethod
    def identity(a):
        s = Dyadic.from_fraction(a.span())
        return ArcMap(a, a, [(ZERO, ZERO), (s, s)])

    def eval_off(self, u):
        us = tuple(p[0] for p in self.offs)
        if not (ZERO <= u <= us[-1]):
            raise ValueError("offset %s outside fragment domain" % u)
        i = max(min(bisect_right(us, u), len(us) - 1) - 1, 0)
        return self.offs[i][1] + (u - us[i]).mul_pow2(self.ks[i])

    def inv_off(self, v):
        vs = tuple(p[1] for p in self.offs)
        if not (ZERO <= v <= vs[-1]):
            raise ValueError("offset %s outside fragment range" % v)
        i = max(min(bisect_right(vs, v), len(vs) - 1) - 1, 0)
        return self.offs[i][0] + (v - self.offs[i][1]).mul_pow2(-self.ks[i])

    def eval_point(self, x):
        u = circle(x).offset_from(self.src.start_point())
        return self.dst.start_point() + self.eval_off(u)

    def inverse(self):
        return ArcMap(self.dst, self.src, [(v, u) for u, v in self.offs])

    def then(self, other):
        """Composite fragment: apply self, then other (dst must chain)."""
        if self.dst != other.src:
            raise MapError("fragments do not chain: %s vs %s" % (self.dst, other.src))
        us = {u for u, _ in self.offs}
        us.update(self.inv_off(w) for w, _ in other.offs)
        pts = [(u, other.eval_off(self.eval_off(u))) for u in sorted(us)]
        return ArcMap(self.src, other.dst, pts)

    @staticmethod
    def concat(frags):
        """Join fragments on consecutive arcs into one fragment."""
        if not frags:
            raise MapError("nothing to concatenate")
        for a, b in zip(frags, frags[1:]):
            if a.src.end != b.src.start or a.dst.end != b.dst.start:
                raise MapError("fragments are not consecutive")
        src = Arc(frags[0].src.start, frags[-1].src.end)
        dst = Arc(frags[0].dst.start, frags[-1].dst.end)
        pts = []
        cu = cv = ZERO
        for f in frags:
            for u, v in f.offs[:-1]:
                pts.append((cu + u, cv + v))
            cu = cu + f.offs[-1][0]
            cv = cv + f.offs[-1][1]
        pts.append((cu, cv))
        if cu.as_fraction() != src.span() or cv.as_fraction() != dst.span():
            raise MapError("concatenated fragments wrap past a full turn")
        return ArcMap(src, dst, pts)

    def is_identity(self):
        return self.src == self.dst and len(self.offs) == 2 and self.ks == (0,)

    def __eq__(self, other):
        if not isinstance(other, ArcMap):
            return NotImplemented
        return (self.src, self.dst, self.offs) == (other.src, other.dst, other.offs)

    def __hash__(self):
        return hash((self.src, self.dst, self.offs))

    def __repr__(self):
        return "ArcMap(%s -> %s, %d pieces)" % (self.src, self.dst, len(self.offs) - 1)


def _merge_collinear(pts):
    """Drop interior sample points where the slope does not change."""
    for (x0, _), (x1, _) in zip(pts, pts[1:]):
        if not x0 < x1:
            raise MapError("sample points are not strictly increasing")
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        x0, y0 = out[-1]
        x1, y1 = pts[i]
        x2, y2 = pts[i + 1]
        if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
            continue
        out.append(pts[i])
    out.append(pts[-1])
    return out


def _log2_ratio(dy, dx):
    """log2(dy/dx) when the ratio is a power of two, else MapError."""
    if dy <= ZERO or dx <= ZERO:
        raise MapError("breakpoints are not strictly monotone")
    ny, nx = dy.num, dx.num
    if ny != nx:
        raise MapError("piece slope %s/%s is not a power of two" % (dy, dx))
    return dx.exp - dy.exp


def _piece_slopes(pts):
    ks = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        ks.append(_log2_ratio(y1 - y0, x1 - x0))
    return ks


# ---------------------------------------------------------------------------
# the homeomorphism type


INTERVAL = "interval"
CIRCLE = "circle"


class PLMap:
    """A dyadic PL homeomorphism of [0,1] or of the circle (its lift)."""

    __slots__ = ("carrier", "xs", "ys", "ks")

    def __init__(self, carrier, points):
        if carrier not in (INTERVAL, CIRCLE):
            raise MapError("unknown carrier %r" % (carrier,))
        pts = sorted({(dyadic(x), dyadic(y)) for x, y in points},
                     key=lambda p: p[0].as_fraction())
        if pts[0][0] != ZERO or pts[-1][0] != ONE:
            raise MapError("breakpoints must run from 0 to 1")
        if pts[-1][1] != pts[0][1] + ONE:
            raise MapError("lift must increase by exactly 1 over a period")
        if not (ZERO <= pts[0][1] < ONE):
            raise MapError("lift base value must lie in [0, 1)")
        if carrier == INTERVAL and pts[0][1] != ZERO:
            raise MapError("an interval map must fix 0")
        pts = _merge_collinear(pts)
        ks = _piece_slopes(pts)
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "xs", tuple(p[0] for p in pts))
        object.__setattr__(self, "ys", tuple(p[1] for p in pts))
        object.__setattr__(self, "ks", tuple(ks))

    def __setattr__(self, name, value):
        raise AttributeError("PLMap is immutable")

    # -- construction --------------------------------------------------

    @staticmethod
    def identity(carrier=INTERVAL):
        return PLMap(carrier, [(ZERO, ZERO), (ONE, ONE)])

    @staticmethod
    def from_graph(carrier, points):
        """Build from lift samples over any window of length one.

        The window is cut at integers and shifted back to [0, 1], and
        the values are shifted by an integer so the base value lands in
        [0, 1).  Used by inversion and patching, where graphs naturally
        come out anchored elsewhere.
        """
        pts = [(dyadic(x), dyadic(y)) for x, y in points]
        pts.sort(key=lambda p: p[0].as_fraction())
        if pts[-1][0] != pts[0][0] + ONE:
            raise MapError("graph window must have length exactly 1")
        u0 = pts[0][0]
        if u0.frac() != ZERO:
            m = Dyadic(u0.floor() + 1)  # first integer strictly above u0
            if not any(p[0] == m for p in pts):
                lo = max(i for i, p in enumerate(pts) if p[0] < m)
                x0, y0 = pts[lo]
                x1, y1 = pts[lo + 1]
                k = _log2_ratio(y1 - y0, x1 - x0)
                pts.append((m, y0 + (m - x0).mul_pow2(k)))
                pts.sort(key=lambda p: p[0].as_fraction())
            shifted = [(x - m + 1, y - m + 1) for x, y in pts if x <= m]
            shifted += [(x - m, y - m) for x, y in pts if x >= m]
            pts = sorted(set(shifted), key=lambda p: p[0].as_fraction())
        shift = Dyadic(pts[0][1].floor())
        pts = [(x, y - shift) for x, y in pts]
        return PLMap(carrier, pts)

    # -- basic queries --------------------------------------------------

    def pieces(self):
        for i in range(len(self.ks)):
            yield self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1], self.ks[i]

    def is_identity(self):
        return len(self.ks) == 1 and self.ks[0] == 0 and self.ys[0] == ZERO

    def lift_eval(self, t):
        if not (ZERO <= t <= ONE):
            raise ValueError("lift argument %s outside [0, 1]" % t)
        i = max(min(bisect_right(self.xs, t), len(self.xs) - 1) - 1, 0)
        return self.ys[i] + (t - self.xs[i]).mul_pow2(self.ks[i])

    def lift_eval_ext(self, t):
        n = t.floor()
        return self.lift_eval(t - Dyadic(n)) + Dyadic(n)

    def lift_inverse(self, t):
        if not (self.ys[0] <= t <= self.ys[-1]):
            raise ValueError("lift value %s outside range" % t)
        i = max(min(bisect_right(self.ys, t), len(self.ys) - 1) - 1, 0)
        return self.xs[i] + (t - self.ys[i]).mul_pow2(-self.ks[i])

    def lift_inverse_ext(self, t):
        n = (t - self.ys[0]).floor()
        return self.lift_inverse(t - Dyadic(n)) + Dyadic(n)

    def eval(self, x):
        """Image of a point: Dyadic in [0,1] for interval maps,
        CirclePoint for circle maps."""
        if self.carrier == INTERVAL:
            x = dyadic(x) if not isinstance(x, Dyadic) else x
            if not (ZERO <= x <= ONE):
                raise ValueError("point %s outside [0, 1]" % x)
            return self.lift_eval(x)
        p = circle(x)
        return CirclePoint(self.lift_eval(p.pos))

    def __call__(self, x):
        return self.eval(x)

    def breakpoints(self):
        """Positions where the slope genuinely changes."""
        pts = list(self.xs[1:-1])
        if self.carrier == CIRCLE and self.ks[0] != self.ks[-1]:
            pts.insert(0, ZERO)
        return pts

    def one_sided_slope(self, x, side):
        """log2 of the one-sided derivative at x."""
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if self.carrier == INTERVAL:
            t = dyadic(x) if not isinstance(x, Dyadic) else x
            if not (ZERO <= t <= ONE):
                raise ValueError("point outside carrier")
            if (t == ZERO and side == "left") or (t == ONE and side == "right"):
                raise ValueError("no %s derivative at %s on the interval" % (side, t))
        else:
            t = circle(x).pos
        if side == "right":
            i = max(min(bisect_right(self.xs, t), len(self.xs) - 1) - 1, 0)
        else:
            if t == ZERO:
                return self.ks[-1]
            i = bisect_right(self.xs, t) - 1
            if self.xs[i] == t:
                i -= 1
        return self.ks[i]

    def as_circle(self):
        return self if self.carrier == CIRCLE else PLMap(CIRCLE, zip(self.xs, self.ys))

    def to_interval(self):
        if self.carrier == INTERVAL:
            return self
        if self.ys[0] != ZERO:
            raise MapError("map does not fix 0; it has no interval form")
        return PLMap(INTERVAL, zip(self.xs, self.ys))

    # -- fixed sets -----------------------------------------------------

    def fixed_points(self):
        """Exact fixed set, solved piece by piece on the lift."""
        comps = []  # closed intervals [lo, hi] in [0, 1], Fractions
        for x0, x1, y0, y1, k in self.pieces():
            fx0, fx1 = x0.as_fraction(), x1.as_fraction()
            fy0 = y0.as_fraction()
            if k == 0:
                off = fy0 - fx0
                if off.denominator == 1 and off in (0, 1):
                    comps.append((fx0, fx1))
                continue
            s = Fraction(2) ** k
            g0, g1 = fy0 - fx0, (y1.as_fraction() - fx1)
            lo, hi = min(g0, g1), max(g0, g1)
            m = lo.numerator // lo.denominator
            if m < lo:
                m += 1
            while m <= hi:
                xstar = (Fraction(m) - fy0 + s * fx0) / (s - 1)
                if fx0 <= xstar <= fx1:
                    comps.append((xstar, xstar))
                m += 1
        comps.sort()
        merged = []
        for lo, hi in comps:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        if self.carrier == INTERVAL:
            if merged == [(Fraction(0), Fraction(1))]:
                return FixedSet(everything=True)
            arcs = [(lo, hi) for lo, hi in merged if lo != hi]
            points = [lo for lo, hi in merged if lo == hi]
            return FixedSet(arcs=arcs, points=points)
        # circle: glue the window ends (0 is fixed iff 1 is fixed)
        if merged == [(Fraction(0), Fraction(1))]:
            return FixedSet(everything=True)
        if len(merged) >= 2 and merged[0][0] == 0 and merged[-1][1] == 1:
            first = merged.pop(0)
            lo, _ = merged.pop()
            merged.append((lo, first[1]))
        arcs = []
        points = []
        for lo, hi in merged:
            lo_m = lo - (lo.numerator // lo.denominator)
            hi_m = hi - (hi.numerator // hi.denominator)
            if lo_m == hi_m:
                points.append(lo_m)
            else:
                arcs.append((lo_m, hi_m))
        return FixedSet(arcs=arcs, points=points)

    def support(self):
        """Complement of the fixed set, as maximal open arcs.

        Computed with the circle topology: an interval map fixes 0 and 1,
        so its support arcs never cross the glued endpoint and read off
        as plain subintervals of (0, 1).
        """
        fixed = self.as_circle().fixed_points()
        if fixed.everything:
            return SupportSet(())
        comps = [(lo, hi) for lo, hi in fixed.arcs]
        comps += [(p, p) for p in fixed.points]
        if not comps:
            return SupportSet((), whole=True)
        comps.sort(key=lambda c: c[0])
        arcs = []
        for i, (lo, hi) in enumerate(comps):
            nxt = comps[(i + 1) % len(comps)][0]
            arcs.append(Arc(hi, nxt))
        return SupportSet(arcs)

    # -- restriction and serialization -----------------------------------

    def restrict(self, a):
        """The fragment of the map over an arc with dyadic endpoints."""
        f = self.as_circle()
        s0 = a.start_point()
        span = Dyadic.from_fraction(a.span())
        offs = {ZERO, span}
        for b in f.xs[:-1]:
            r = CirclePoint(b).offset_from(s0)
            if ZERO < r < span:
                offs.add(r)
        base_val = f.lift_eval(s0.pos)
        pts = []
        for u in sorted(offs):
            t = s0.pos + u
            pts.append((u, f.lift_eval_ext(t) - base_val))
        dst = Arc(CirclePoint(base_val.frac()), CirclePoint(f.lift_eval_ext(s0.pos + span).frac()))
        return ArcMap(a, dst, pts)

    def agrees_with(self, other, a):
        return self.restrict(a) == other.as_circle().restrict(a)

    def is_trivial_on(self, a):
        return self.restrict(a) == ArcMap.identity(a)

    def to_json_dict(self):
        return {
            "schema": "plmap/1",
            "carrier": self.carrier,
            "breaks": [[str(x), str(y)] for x, y in zip(self.xs, self.ys)],
        }

    @staticmethod
    def from_json_dict(data):
        try:
            carrier = data["carrier"]
            pts = [(dyadic(x), dyadic(y)) for x, y in data["breaks"]]
        except (KeyError, TypeError) as exc:
            raise MapError("malformed map object: %s" % exc) from None
        except ValueError as exc:
            raise MapError(str(exc)) from None
        return PLMap(carrier, pts)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return (self.carrier, self.xs, self.ys) == (other.carrier, other.xs, other.ys)

    def __hash__(self):
        return hash((self.carrier, self.xs, self.ys))

    def __repr__(self):
        pts = ", ".join("(%s,%s)" % (x, y) for x, y in zip(self.xs, self.ys))
        return "PLMap(%s, [%s])" % (self.carrier, pts)


# ---------------------------------------------------------------------------
# the group operations


def compose(f, g, *rest):
    """Apply f, then g (then any further maps), left to right."""
    if rest:
        out = compose(f, g)
        for h in rest:
            out = compose(out, h)
        return out
    if f.carrier != g.carrier:
        raise MapError("cannot compose maps on different carriers")
    xs = set(f.xs)
    lo, hi = f.ys[0], f.ys[-1]
    for c in g.xs[:-1]:
        m = (lo - c).floor()
        for shift in (m, m + 1, m + 2):
            t = c + Dyadic(shift)
            if lo <= t <= hi:
                xs.add(f.lift_inverse(t))
    pts = [(x, g.lift_eval_ext(f.lift_eval(x))) for x in sorted(xs, key=lambda d: d.as_fraction())]
    return PLMap.from_graph(f.carrier, pts)


def inverse(f):
    return PLMap.from_graph(f.carrier, [(y, x) for x, y in zip(f.xs, f.ys)])


def power(f, n):
    if n == 0:
        return PLMap.identity(f.carrier)
    base = f if n > 0 else inverse(f)
    out = None
    k = abs(n)
    while k:
        if k & 1:
            out = base if out is None else compose(out, base)
        base = compose(base, base) if k > 1 else base
        k >>= 1
    return out

def conjugate(f, by):
    """g^{-1} f g with the right-action convention."""
    return compose(inverse(by), f, by)


def commutator(f, g):
    return compose(inverse(f), inverse(g), f, g)


def rotation(a):
    """The rigid rotation x -> x + a of the circle."""
    a = CirclePoint(dyadic(a) if not isinstance(a, Dyadic) else a).pos
    return PLMap(CIRCLE, [(ZERO, a), (ONE, a + 1)])


# ---------------------------------------------------------------------------
# Thompson-like maps, patching, transport


def _std_decomposition(lo, hi):
    """Greedy left-to-right split of [lo, hi] into maximal standard
    dyadic intervals [m/2^j, (m+1)/2^j]."""
    out = []
    t = lo
    while t < hi:
        delta = hi - t
        if delta >= ONE:
            j0 = 0
        else:
            j0 = delta.exp - (abs(delta.num).bit_length() - 1)
        j = max(t.exp, j0)
        step = Dyadic(1, j)
        out.append((t, t + step))
        t = t + step
    return out


def _arc_decomposition(a):
    """Standard dyadic decomposition of an arc, in counterclockwise order."""
    lo = Dyadic.from_fraction(a.start)
    hi = Dyadic.from_fraction(a.end)
    if lo < hi:
        return _std_decomposition(lo, hi)
    if hi == ZERO:
        return _std_decomposition(lo, ONE)
    return _std_decomposition(lo, ONE) + _std_decomposition(ZERO, hi)


def thompson_like_map(src, dst):
    """The canonical Thompson-like bijection between two dyadic arcs.

    Both arcs are decomposed greedily into maximal standard dyadic
    intervals; while the counts differ, the largest interval on the
    shorter list is halved (leftmost first on ties).  Matching the
    lists up entry by entry gives a PL map all of whose slopes are
    powers of two.
    """
    if not isinstance(src, Arc):
        src = Arc(src[0], src[1])
    if not isinstance(dst, Arc):
        dst = Arc(dst[0], dst[1])
    a = _arc_decomposition(src)
    b = _arc_decomposition(dst)

    def split_once(seq):
        sizes = [v - u for u, v in seq]
        i = sizes.index(max(sizes, key=lambda d: d.as_fraction()))
        u, v = seq[i]
        m = u + (v - u).mul_pow2(-1)
        seq[i:i + 1] = [(u, m), (m, v)]

    while len(a) < len(b):
        split_once(a)
    while len(b) < len(a):
        split_once(b)
    pts = [(ZERO, ZERO)]
    cu = cv = ZERO
    for (u0, u1), (v0, v1) in zip(a, b):
        cu = cu + (u1 - u0)
        cv = cv + (v1 - v0)
        pts.append((cu, cv))
    return ArcMap(src, dst, pts)


def restrict_patch(fragments, carrier=CIRCLE):
    """Assemble a PLMap from fragments whose source arcs tile the carrier.

    Fragment targets must chain end to start as well, so the assembled
    graph is continuous; every other defect (slope, monotonicity,
    wrap-around total) is caught by the PLMap constructor.
    """
    frags = sorted(fragments, key=lambda f: f.src.start)
    n = len(frags)
    if n == 0:
        raise MapError("nothing to patch")
    for i in range(n):
        nxt = frags[(i + 1) % n]
        if frags[i].src.end != nxt.src.start:
            raise MapError("source arcs do not tile: gap after %s" % (frags[i].src,))
        if frags[i].dst.end != nxt.dst.start:
            raise MapError("fragments disagree at %s" % (frags[i].src.end_point(),))
    total = sum(f.src.span() for f in frags)
    if total != 1:
        raise MapError("source arcs cover %s of the circle, not all of it" % total)
    if sum(f.dst.span() for f in frags) != 1:
        raise MapError("target arcs do not cover the circle once")
    x0 = Dyadic.from_fraction(frags[0].src.start)
    y0 = Dyadic.from_fraction(frags[0].dst.start)
    pts = []
    cu = cv = ZERO
    for f in frags:
        for u, v in f.offs[:-1]:
            pts.append((x0 + cu + u, y0 + cv + v))
        cu = cu + f.offs[-1][0]
        cv = cv + f.offs[-1][1]
    pts.append((x0 + 1, y0 + 1))
    return PLMap.from_graph(carrier, pts)


def transport(f, tau):
    """Conjugate a map supported in tau's source arc to tau's target arc.

    This realizes the box-to-box transport: the result agrees with
    ``tau^-1 . f . tau`` on the target arc and is the identity
    elsewhere, so a map of one box becomes a map of the other.
    """
    g = f.as_circle()
    if not g.support().issubset_of([tau.src]):
        raise MapError("support %s is not inside %s" % (g.support(), tau.src))
    inner = tau.inverse().then(g.restrict(tau.src)).then(tau)
    frags = [inner]
    if tau.dst.span() != 1:
        frags.append(ArcMap.identity(Arc(tau.dst.end, tau.dst.start)))
    return restrict_patch(frags, CIRCLE)

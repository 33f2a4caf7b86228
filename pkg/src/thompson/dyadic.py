"""Exact dyadic rationals and the circular order on the dyadic circle.

Every coordinate in this package is a dyadic rational num/2^exp, kept in
the normalized form where the numerator is odd unless the exponent is
zero.  Normalization makes equality structural, so dyadics hash cheaply
and canonical forms compare exactly.  ``CirclePoint`` is a dyadic
position reduced mod 1.  The predicates at the bottom of the module
(``circ_between``, ``circ_chain``, ``circ_interp``) pin down the
counterclockwise orientation convention used everywhere else.

No floating point enters at any stage; the only rationals with
non-power-of-two denominators ever produced by this package are isolated
fixed points of maps, and those are reported as ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction


def _val2(n):
    """2-adic valuation of a nonzero integer."""
    return (n & -n).bit_length() - 1


def is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


class Dyadic:
    """The rational num / 2^exp, normalized (exp == 0 or num odd)."""

    __slots__ = ("num", "exp")

    def __init__(self, num=0, exp=0):
        if not isinstance(num, int) or not isinstance(exp, int):
            raise TypeError("Dyadic takes integer numerator and exponent")
        if exp < 0:
            num <<= -exp
            exp = 0
        if num == 0:
            exp = 0
        elif exp > 0 and num % 2 == 0:
            t = min(exp, _val2(num))
            num >>= t
            exp -= t
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.exp, other.exp)
        return Dyadic((self.num << (e - self.exp)) + (other.num << (e - other.exp)), e)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self.num * other.num, self.exp + other.exp)

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __abs__(self):
        return Dyadic(abs(self.num), self.exp)

    def __truediv__(self, other):
        """Division by a (signed) power of two; anything else is an error."""
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num == 0:
            raise ZeroDivisionError("dyadic division by zero")
        if not is_power_of_two(abs(other.num)):
            raise ValueError("dyadic division only by powers of two, got %s" % other)
        sign = 1 if other.num > 0 else -1
        k = abs(other.num).bit_length() - 1 - other.exp
        return Dyadic(sign * self.num, self.exp + k)

    def mul_pow2(self, k):
        """self * 2^k for an integer k (k may be negative)."""
        return Dyadic(self.num, self.exp - k)

    # -- comparisons ----------------------------------------------------

    def _cmp(self, other):
        lhs = self.num << other.exp
        rhs = other.num << self.exp
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.exp == other.exp

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) >= 0

    def __hash__(self):
        # Consistent with int hashing for integral values (exp == 0).
        return hash(self.num) if self.exp == 0 else hash((self.num, self.exp))

    def __bool__(self):
        return self.num != 0

    # -- structure ------------------------------------------------------

    def floor(self):
        return self.num >> self.exp

    def frac(self):
        """Fractional part in [0, 1)."""
        return self - Dyadic(self.floor())

    def is_integer(self):
        return self.exp == 0

    def as_fraction(self):
        return Fraction(self.num, 1 << self.exp)

    @staticmethod
    def from_fraction(q):
        q = Fraction(q)
        if not is_power_of_two(q.denominator):
            raise ValueError("not a dyadic rational: %s" % q)
        return Dyadic(q.numerator, q.denominator.bit_length() - 1)

    @staticmethod
    def parse(text):
        """Parse 'a', 'a/b' (b a power of two) or 'a/2^e'."""
        s = text.strip().replace(" ", "")
        if "/" not in s:
            try:
                return Dyadic(int(s))
            except ValueError:
                raise ValueError("bad dyadic literal: %r" % text) from None
        top, bot = s.split("/", 1)
        try:
            num = int(top)
        except ValueError:
            raise ValueError("bad dyadic numerator: %r" % text) from None
        if bot.startswith("2^"):
            exp = int(bot[2:])
            if exp < 0:
                raise ValueError("negative exponent in %r" % text)
            return Dyadic(num, exp)
        try:
            den = int(bot)
        except ValueError:
            raise ValueError("bad dyadic denominator: %r" % text) from None
        if not is_power_of_two(den):
            raise ValueError("denominator of %r is not a power of two" % text)
        return Dyadic(num, den.bit_length() - 1)

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return "%d/%d" % (self.num, 1 << self.exp)

    def pow2_str(self):
        """Render as 'num/2^exp'."""
        return "%d/2^%d" % (self.num, self.exp)

    def __repr__(self):
        return "Dyadic(%d, %d)" % (self.num, self.exp)


def _coerce(x):
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x)
    return NotImplemented


def dyadic(value):
    """Coerce an int, string, Fraction or Dyadic to a Dyadic."""
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int):
        return Dyadic(value)
    if isinstance(value, str):
        return Dyadic.parse(value)
    if isinstance(value, Fraction):
        return Dyadic.from_fraction(value)
    raise TypeError("cannot make a Dyadic out of %r" % (value,))


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


class CirclePoint:
    """A dyadic position on the circle R/Z, stored as its coset
    representative in [0, 1)."""

    __slots__ = ("pos",)

    def __init__(self, pos=0):
        d = dyadic(pos) if not isinstance(pos, Dyadic) else pos
        object.__setattr__(self, "pos", d.frac())

    def __setattr__(self, name, value):
        raise AttributeError("CirclePoint is immutable")

    def __add__(self, d):
        """Translate counterclockwise by a dyadic amount."""
        return CirclePoint(self.pos + dyadic(d))

    def __sub__(self, d):
        return CirclePoint(self.pos - dyadic(d))

    def offset_from(self, base):
        """Counterclockwise distance from ``base`` to self, in [0, 1)."""
        return (self.pos - base.pos).frac()

    def __eq__(self, other):
        if not isinstance(other, CirclePoint):
            return NotImplemented
        return self.pos == other.pos

    def __hash__(self):
        return hash(("S1", self.pos))

    def __str__(self):
        return str(self.pos)

    def __repr__(self):
        return "CirclePoint(%s)" % self.pos


def circle(value):
    """Coerce to a CirclePoint."""
    if isinstance(value, CirclePoint):
        return value
    return CirclePoint(dyadic(value))


def circ_between(a, b, c):
    """True iff b lies strictly inside the counterclockwise arc from a to c.

    The degenerate query with a == c has no consistent answer and is
    rejected.
    """
    a, b, c = circle(a), circle(b), circle(c)
    if a == c:
        raise ValueError("circ_between needs distinct arc endpoints")
    rb = b.offset_from(a)
    rc = c.offset_from(a)
    return ZERO < rb < rc


def circ_chain(points):
    """True iff the points are pairwise distinct and appear in this
    counterclockwise order when walking once around the circle."""
    pts = [circle(p) for p in points]
    if len(pts) < 2:
        return True
    base = pts[0]
    offs = [p.offset_from(base) for p in pts]
    return all(offs[i] < offs[i + 1] for i in range(len(offs) - 1))


def circ_interp(a, b, t):
    """The point at fraction t along the counterclockwise arc from a to b.

    t = 0 gives a, t = 1 gives b; a == b is rejected.
    """
    a, b = circle(a), circle(b)
    t = dyadic(t)
    if a == b:
        raise ValueError("circ_interp needs a nondegenerate arc")
    if not (ZERO <= t <= ONE):
        raise ValueError("interpolation parameter must lie in [0, 1]")
    return a + t * b.offset_from(a)

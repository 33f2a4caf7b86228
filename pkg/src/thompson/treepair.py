"""Binary-word and tree-pair notation for elements of F and T.

A binary word w denotes a standard dyadic interval: the empty word is
(0,1) and w0, w1 are the left and right halves of w's interval.  A
``TreePair`` records two trees by their leaf words plus a cyclic offset
matching domain leaves to range leaves; offset 0 gives an element of F,
a nonzero offset an element of T that rotates the leaf order.

The wire grammar is::

    element  ::=  "(" wordlist ")" "->" "(" wordlist ")"
    word     ::=  [01]+ | "e"        (e is the empty word)

with whitespace ignored.  The domain list must be the leaf set in
lexicographic order; the image list must be a rotation of a sorted leaf
set, which is exactly the orientation-preserving condition.
"""

from __future__ import annotations

from .dyadic import ONE, ZERO, Dyadic
from . import plmap
from .plmap import CIRCLE, INTERVAL, MapError, PLMap


class ParseError(ValueError):
    """Bad element notation; ``pos`` is the offending character index."""

    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


def word_interval(w):
    """The standard dyadic interval named by a binary word."""
    lo = ZERO
    width = ONE
    for ch in w:
        width = width.mul_pow2(-1)
        if ch == "1":
            lo = lo + width
        elif ch != "0":
            raise ValueError("not a binary word: %r" % w)
    return lo, lo + width


def is_leaf_set(words):
    """True iff the sorted words name intervals tiling [0, 1]."""
    ws = sorted(words)
    if not ws or len(set(ws)) != len(ws):
        return False
    cursor = ZERO
    for w in ws:
        lo, hi = word_interval(w)
        if lo != cursor:
            return False
        cursor = hi
    return cursor == ONE


def _siblings(u, v):
    return len(u) == len(v) and len(u) >= 1 and u[:-1] == v[:-1] and u[-1] == "0" and v[-1] == "1"


class TreePair:
    """A matched pair of binary trees given by leaf words and an offset.

    The i-th domain leaf (in lexicographic order) maps onto the range
    leaf at sorted position (i + offset) mod n.
    """

    __slots__ = ("domain", "range_sorted", "offset")

    def __init__(self, domain_words, image_words):
        dom = tuple(domain_words)
        img = tuple(image_words)
        if len(dom) != len(img):
            raise ValueError("domain and image leaf counts differ")
        if list(dom) != sorted(dom):
            raise ValueError("domain leaves must be listed in lexicographic order")
        if not is_leaf_set(dom):
            raise ValueError("domain words do not tile [0,1]: %s" % (dom,))
        if not is_leaf_set(img):
            raise ValueError("image words do not tile [0,1]: %s" % (img,))
        rng = tuple(sorted(img))
        offset = rng.index(img[0])
        n = len(rng)
        if tuple(rng[(i + offset) % n] for i in range(n)) != img:
            raise ValueError("image list is not a rotation of its sorted order "
                             "(the map would not preserve orientation)")
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "range_sorted", rng)
        object.__setattr__(self, "offset", offset)

    def __setattr__(self, name, value):
        raise AttributeError("TreePair is immutable")

    @staticmethod
    def identity():
        return TreePair(("",), ("",))

    def __len__(self):
        return len(self.domain)

    def pairs(self):
        n = len(self.domain)
        return [(self.domain[i], self.range_sorted[(i + self.offset) % n])
                for i in range(n)]

    def image_words(self):
        return tuple(v for _, v in self.pairs())

    # -- reduction -------------------------------------------------------

    def is_reduced(self):
        ps = self.pairs()
        return not any(_siblings(ps[i][0], ps[i + 1][0]) and _siblings(ps[i][1], ps[i + 1][1])
                       for i in range(len(ps) - 1))

    def reduce(self):
        """Cancel matched carets until none remain; idempotent."""
        ps = self.pairs()
        changed = True
        while changed:
            changed = False
            for i in range(len(ps) - 1):
                (u0, v0), (u1, v1) = ps[i], ps[i + 1]
                if _siblings(u0, u1) and _siblings(v0, v1):
                    ps[i:i + 2] = [(u0[:-1], v0[:-1])]
                    changed = True
                    break
        return TreePair([u for u, _ in ps], [v for _, v in ps])

    # -- conversion to and from maps --------------------------------------

    def to_plmap(self, carrier=None):
        if carrier is None:
            carrier = INTERVAL if self.offset == 0 else CIRCLE
        if carrier == INTERVAL and self.offset != 0:
            raise MapError("a leaf rotation does not fix 0; use the circle carrier")
        n = len(self.domain)
        pts = []
        for i in range(n):
            lo, _ = word_interval(self.domain[i])
            j = i + self.offset
            ylo, _ = word_interval(self.range_sorted[j % n])
            if j >= n:
                ylo = ylo + ONE
            pts.append((lo, ylo))
        base = pts[0][1]
        pts.append((ONE, base + ONE))
        return PLMap(carrier, pts)

    @staticmethod
    def from_plmap(f):
        """The reduced tree pair of a map, via the coarsest refinement of
        its breakpoints into standard dyadic intervals with standard
        dyadic images."""
        g = f.as_circle()
        depth_cap = 4 * (max(max(x.exp for x in g.xs), max(y.exp for y in g.ys),
                             max(abs(k) for k in g.ks)) + 2) + 8
        leaves = []

        def build(word, lo, hi):
            if len(word) > depth_cap:
                raise AssertionError("tree-pair refinement did not terminate")
            i = plmap.bisect_right(g.xs, lo)
            affine = i >= len(g.xs) or g.xs[i] >= hi
            if affine:
                ylo = g.lift_eval(lo)
                length = g.lift_eval(hi) - ylo
                j = length.exp if length.num == 1 else -1
                if j >= 0 and ylo.exp <= j:
                    m = (ylo.num << (j - ylo.exp)) % (1 << j)
                    leaves.append((word, format(m, "0%db" % j) if j else ""))
                    return
            mid = lo + (hi - lo).mul_pow2(-1)
            build(word + "0", lo, mid)
            build(word + "1", mid, hi)

        build("", ZERO, ONE)
        pair = TreePair([u for u, _ in leaves], [v for _, v in leaves])
        return pair.reduce()

    # -- notation ----------------------------------------------------------

    @staticmethod
    def parse(text):
        s = text
        i = 0

        def skip_ws(i):
            while i < len(s) and s[i].isspace():
                i += 1
            return i

        def expect(i, tok):
            i = skip_ws(i)
            if not s.startswith(tok, i):
                raise ParseError("expected %r" % tok, i)
            return i + len(tok)

        def wordlist(i):
            words = []
            i = expect(i, "(")
            i = skip_ws(i)
            if i < len(s) and s[i] == ")":
                return [""], i + 1  # "( )" is the lone empty word
            while True:
                i = skip_ws(i)
                start = i
                if i < len(s) and s[i] == "e":
                    words.append("")
                    i += 1
                else:
                    while i < len(s) and s[i] in "01":
                        i += 1
                    if i == start:
                        raise ParseError("expected a binary word or 'e'", i)
                    words.append(s[start:i])
                i = skip_ws(i)
                if i < len(s) and s[i] == ",":
                    i += 1
                    continue
                i = expect(i, ")")
                return words, i

        dom, i = wordlist(i)
        i = expect(i, "->")
        img, i = wordlist(i)
        i = skip_ws(i)
        if i != len(s):
            raise ParseError("trailing input", i)
        try:
            return TreePair(dom, img)
        except ValueError as exc:
            raise ParseError(str(exc), 0) from None

    def render(self):
        def show(ws):
            return ", ".join(w if w else "e" for w in ws)

        return "(%s) -> (%s)" % (show(self.domain), show(self.image_words()))

    def __eq__(self, other):
        if not isinstance(other, TreePair):
            return NotImplemented
        return (self.domain, self.range_sorted, self.offset) == \
            (other.domain, other.range_sorted, other.offset)

    def __hash__(self):
        return hash((self.domain, self.range_sorted, self.offset))

    def __str__(self):
        return self.render()

    def __repr__(self):
        return "TreePair(%r)" % self.render()


def parse_element(text):
    """Parse element notation to a TreePair."""
    return TreePair.parse(text)


def element_map(text, carrier=None):
    """Parse element notation straight to a PLMap."""
    return TreePair.parse(text).to_plmap(carrier)

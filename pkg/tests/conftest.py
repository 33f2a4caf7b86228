"""Shared generators for randomized tests.

Everything is seeded explicitly so failures replay.
"""

from random import Random

from thompson.dyadic import Dyadic
from thompson.groupcalc import x, zeta
from thompson.plmap import PLMap, compose, inverse, rotation


def element_pool(circle=False):
    pool = [x(0), x(1), zeta()]
    if circle:
        pool = [g.as_circle() for g in pool]
        pool += [rotation(Dyadic(1, 2)), rotation(Dyadic(1, 1))]
    return pool


def random_element(rng: Random, max_len=4, circle=False):
    """A random word over the standard generators (and rotations on the
    circle), as a map."""
    pool = element_pool(circle)
    out = PLMap.identity(pool[0].carrier)
    for _ in range(rng.randint(1, max_len)):
        g = rng.choice(pool)
        if rng.random() < 0.5:
            g = inverse(g)
        out = compose(out, g)
    return out


def random_dyadic_in_unit(rng: Random, max_exp=10):
    e = rng.randint(0, max_exp)
    return Dyadic(rng.randint(0, 1 << e), e)

import random
from fractions import Fraction

import pytest

from critpop.core import ProblemInstance, is_generic, monic_tuple
from critpop.poly import Poly
from critpop.roots import root_data


def instance(code, weights=(), points=()):
    return ProblemInstance(
        root_data(code),
        tuple(tuple(w) for w in weights),
        tuple(Fraction(z) for z in points),
    )


def seeded_points(rng, n):
    """Distinct small-height rationals."""
    out = set()
    while len(out) < n:
        out.add(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    return tuple(sorted(out))


def random_monic(rng, deg):
    return Poly([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(deg)] + [1])


def random_generic_tuple(rng, pi, max_deg=3):
    """Seeded generic tuple for the instance (retrying until generic)."""
    while True:
        y = monic_tuple(random_monic(rng, rng.randint(0, max_deg)) for _ in range(pi.rd.rank))
        if is_generic(pi, y)[0]:
            return y


@pytest.fixture
def rng():
    return random.Random(20240817)

import random

import pytest

from qforms.forms import GEN_S, GEN_T, GEN_T_INV, Form, UnimodularMatrix, content, discriminant
from qforms.lattice import KleinPair, gross

from math import gcd


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_form(rng, lo=-10, hi=10):
    """A nonzero form with nonzero discriminant."""
    while True:
        t = (rng.randint(lo, hi), rng.randint(lo, hi), rng.randint(lo, hi))
        if t != (0, 0, 0) and t[1] * t[1] - 4 * t[0] * t[2] != 0:
            return Form(*t)


def random_sl2(rng, length=8):
    g = UnimodularMatrix.identity()
    for _ in range(rng.randint(1, length)):
        g = g @ rng.choice((GEN_S, GEN_T, GEN_T_INV))
    return g


def random_klein_pair(rng, lo=-10, hi=10):
    """A pair-primitive Klein pair with equal nonzero determinants."""
    while True:
        f1 = random_form(rng, lo, hi)
        d = discriminant(f1)
        a2, b2 = rng.randint(lo, hi), rng.randint(lo, hi)
        if a2 == 0 or (b2 * b2 - d) % (4 * a2):
            continue
        c2 = (b2 * b2 - d) // (4 * a2)
        f2 = Form(a2, b2, c2)
        if gcd(content(f1), content(f2)) == 1:
            return KleinPair(gross(f1), gross(f2))


def forms_of_disc(d, bound):
    """All forms of discriminant d with |a|, |b| <= bound (c determined)."""
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a == 0:
                if b * b == d:
                    out.extend(Form(0, b, c) for c in range(-bound, bound + 1)
                               if (b, c) != (0, 0))
                continue
            if (b * b - d) % (4 * a) == 0:
                out.append(Form(a, b, (b * b - d) // (4 * a)))
    return out

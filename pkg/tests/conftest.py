import random
from fractions import Fraction

import pytest

from ewlext import Bimatrix2, canonicalize


def random_rational_game(rng, lo=0, hi=5, den=8):
    rows = [
        [
            (Fraction(rng.randint(lo * den, hi * den), den),
             Fraction(rng.randint(lo * den, hi * den), den))
            for _ in range(2)
        ]
        for _ in range(2)
    ]
    return Bimatrix2.from_rows(rows)


def random_float_game(rng, lo=-5.0, hi=5.0):
    rows = [
        [(rng.uniform(lo, hi), rng.uniform(lo, hi)) for _ in range(2)]
        for _ in range(2)
    ]
    return Bimatrix2.from_rows(rows)


def random_float_params(rng):
    import math

    return canonicalize(
        rng.uniform(0.0, math.pi),
        rng.uniform(0.0, 2.0 * math.pi),
        rng.uniform(0.0, 2.0 * math.pi),
    )


def random_lattice_params(rng):
    """Strategy params drawn from the exact pi/4 grids."""
    theta = rng.choice([Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
                        Fraction(2, 3), Fraction(3, 4), Fraction(1)])
    alpha = Fraction(rng.randrange(8), 4)
    beta = Fraction(rng.randrange(8), 4)
    return canonicalize(theta, alpha, beta)


def random_exact_pair(rng):
    """A pair of lattice params whose joint trigonometry stays in Q(sqrt(2)):
    either both thetas on the pi/4 grid, or the complementary pi/3 pair."""
    if rng.random() < 0.3:
        thetas = (Fraction(1, 3), Fraction(2, 3))
    else:
        grid = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
        thetas = (rng.choice(grid), rng.choice(grid))
    out = []
    for th in thetas:
        alpha = Fraction(rng.randrange(8), 4)
        beta = Fraction(rng.randrange(8), 4)
        out.append(canonicalize(th, alpha, beta))
    return tuple(out)


@pytest.fixture
def rng():
    return random.Random(20240817)

"""Shared fixtures data, random generators and hypothesis strategies."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from pfq.zigzag import HParams, as_params

# the running example with parameters (1/3, 4/3; 2/3, 1)
WORKED = as_params("1/3,4/3", "2/3,1")
BINOMIAL = as_params("1/2", "1")
GEOMETRIC = as_params("", "")

# small instances used by the exhaustive desk checks
DESK = [
    WORKED,
    BINOMIAL,
    GEOMETRIC,
    as_params("1", "1"),
    as_params("1/3", "1"),
    as_params("1/3,2/3", "1,1"),
    as_params("1/12,1/4", "1/2,1"),
    as_params("1/12,1/6", "1/3,1"),
    as_params("1/5,2/5,3/5", "1/2,1,7/4"),
    as_params("5/7", "1/6,9/4"),
]
DESK_PRIMES = (2, 3, 5, 7, 11, 13)

P_MATRIX_7 = [[0, None, 2, 1], [0, 1, 2, 1], [0, None, 2, 1], [0, None, 2, 1]]
P_MATRIX_11_EVEN = [[0, None, 2, 1], [0, None, 2, 1], [0, 1, 2, 1], [0, None, 2, 1]]
P_MATRIX_11_ODD = [[0, -1, None, 1], [0, -1, 0, 1], [0, -1, None, 1], [0, -1, None, 1]]
P_MATRIX_11_PRODUCT = [[0, -1, None, 1], [0, -1, None, 1], [0, -1, 1, 1], [0, -1, None, 1]]


def grid(values):
    """Replace the ``None`` placeholders of a displayed matrix by ``inf``."""
    return [[float("inf") if x is None else Fraction(x) for x in row] for row in values]


def random_parameter(rng: random.Random, max_den: int = 12) -> Fraction:
    while True:
        d = rng.randint(1, max_den)
        g = Fraction(rng.randint(-2 * d, 3 * d), d)
        if not (g.denominator == 1 and g <= 0):
            return g


def random_params(rng: random.Random, max_len: int = 3, max_den: int = 12) -> HParams:
    n, m = rng.randint(0, max_len), rng.randint(0, max_len)
    return HParams(
        tuple(random_parameter(rng, max_den) for _ in range(n)),
        tuple(random_parameter(rng, max_den) for _ in range(m)),
    )


primes = st.sampled_from(DESK_PRIMES)


@st.composite
def parameters(draw, max_den: int = 12):
    d = draw(st.integers(1, max_den))
    a = draw(st.integers(-2 * d, 3 * d))
    g = Fraction(a, d)
    if g.denominator == 1 and g <= 0:
        g += 1 - g.numerator  # push nonpositive integers up to 1
    return g


@st.composite
def hparams(draw, max_len: int = 3, max_den: int = 12):
    top = draw(st.lists(parameters(max_den), max_size=max_len))
    bottom = draw(st.lists(parameters(max_den), max_size=max_len))
    return HParams(tuple(top), tuple(bottom))


rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


# acceptance results, printed by the terminal summary hook in conftest
ACCEPTANCE_RESULTS: list[str] = []

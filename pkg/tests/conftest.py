import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from singulex.algebra import Poly

CTX4 = ("w", "x", "y", "z")


def random_poly(rng: random.Random, ctx=CTX4, max_degree=6, max_terms=6) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * len(ctx)
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(len(ctx))] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Poly(ctx, terms)


@st.composite
def polys(draw, ctx=CTX4, max_degree=6, max_terms=5):
    n = len(ctx)
    exps = st.lists(st.integers(0, n - 1), max_size=max_degree).map(lambda idx: tuple(idx.count(i) for i in range(n)))
    coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=7)
    terms = draw(st.dictionaries(exps, coeffs, max_size=max_terms))
    return Poly(ctx, terms)


@pytest.fixture
def rng():
    return random.Random(1234)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

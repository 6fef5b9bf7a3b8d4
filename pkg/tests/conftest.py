import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from arrlab.field import QA, QG, QQ
from arrlab.geometry import Arrangement, ProjLine

ALL_FIELDS = (QQ, QA, QG)

small_fraction = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(field):
    return st.lists(small_fraction, min_size=field.degree, max_size=field.degree).map(field.element)


def random_element(rng: random.Random, field, bound: int = 9):
    return field.element(Fraction(rng.randint(-bound, bound), rng.randint(1, 6)) for _ in range(field.degree))


def random_arrangement(rng: random.Random, n: int, bound: int = 5) -> Arrangement:
    """Distinct random lines over Q with integer coefficients in [-bound, bound]."""
    lines: list[ProjLine] = []
    while len(lines) < n:
        c = [rng.randint(-bound, bound) for _ in range(3)]
        if not any(c):
            continue
        line = ProjLine.of(QQ, *c)
        if line not in lines:
            lines.append(line)
    return Arrangement(QQ, tuple(lines))


def special_arrangement(rng: random.Random, n: int) -> Arrangement:
    """Random lines biased towards concurrences: coefficients in {-1, 0, 1}."""
    return random_arrangement(rng, n, bound=1) if n <= 13 else random_arrangement(rng, n)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from arrlab.field import (
    QA,
    QG,
    QQ,
    ElementSyntaxError,
    FieldMismatchError,
    arith,
    field_from_name,
    format_element,
    galois,
    inv,
    parse_element,
)

from conftest import ALL_FIELDS, elements, random_element


def _linear_system_inverse(x):
    """Inverse by solving the multiplication-matrix system with Gaussian elimination."""
    f = x.field
    d = f.degree
    cols = [(x * f.gen ** j).coeffs if d > 1 else (x.coeffs[0],) for j in range(d)]
    m = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
    for c in range(d):
        p = next(r for r in range(c, d) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        m[c] = [v / m[c][c] for v in m[c]]
        for r in range(d):
            if r != c and m[r][c] != 0:
                m[r] = [a - m[r][c] * b for a, b in zip(m[r], m[c])]
    return f.element(row[-1] for row in m)


def test_golden_ratio_relation():
    a = QA.gen
    assert a * a + a - 1 == 0
    assert a * (a + 1) == 1
    assert 1 / a == a + 1


def test_tenth_root_of_unity():
    g = QG.gen
    assert g ** 5 == -1
    assert g ** 10 == 1
    assert g ** 4 - g ** 3 + g ** 2 - g + 1 == 0
    assert g ** -3 == -(g ** 2)


def test_rational_field_is_fractions():
    x = QQ(Fraction(3, 4))
    assert x + 1 == Fraction(7, 4)
    assert inv(x) == Fraction(4, 3)


def test_galois_on_generators():
    assert QA.gen.galois(2) == -1 - QA.gen
    assert QG.gen.galois(3) == QG.gen ** 3
    assert QG.galois_exponents == (1, 3, 7, 9)


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        QA.gen + QG.gen


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        inv(QG.zero)


def test_arith_dispatch():
    a = QA.gen
    assert arith("add", a, a) == 2 * a
    assert arith("mul", a, a) == 1 - a
    assert arith("sub", a, a) == 0
    assert arith("neg", a) == -a


@pytest.mark.parametrize(
    "text, expected",
    [
        ("g^2 - 1", QG.gen ** 2 - 1),
        ("-3/2*g^2+g-1", Fraction(-3, 2) * QG.gen ** 2 + QG.gen - 1),
        ("  7 ", QG(7)),
        ("2*g^3 - g^3", QG.gen ** 3),
        ("g^7", QG.gen ** 7),
    ],
)
def test_parse_examples(text, expected):
    assert parse_element(text, QG) == expected


@pytest.mark.parametrize("text", ["a+1", "x", "1 +", "g^", "3/0", "", "2g", "g*g"])
def test_parse_errors(text):
    with pytest.raises(Exception):
        parse_element(text, QG)


def test_wrong_generator_message():
    with pytest.raises(ElementSyntaxError, match="generator"):
        parse_element("a + 1", QG)


def test_format_examples():
    assert format_element(Fraction(-3, 2) * QG.gen ** 2 + QG.gen - 1) == "-3/2*g^2 + g - 1"
    assert format_element(QA.zero) == "0"
    assert format_element(-QA.gen) == "-a"


def test_field_names():
    assert field_from_name("Q[ a ]/(a^2 + a - 1)") is QA
    with pytest.raises(Exception):
        field_from_name("Q[i]")


def test_extended_euclid_matches_linear_algebra():
    rng = random.Random(7)
    for f in (QA, QG):
        for _ in range(200):
            x = random_element(rng, f)
            if x.is_zero():
                continue
            assert x.inverse() == _linear_system_inverse(x)


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f.name)
def test_axioms_on_random_triples(field):
    rng = random.Random(hash(field.name) & 0xFFFF)
    for _ in range(2000):
        x, y, z = (random_element(rng, field) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        if not x.is_zero():
            assert x * x.inverse() == 1


def _field_props(field):
    @settings(max_examples=150, deadline=None)
    @given(elements(field), elements(field), elements(field))
    def check(x, y, z):
        assert x + (-x) == 0
        assert (x - y) + y == x
        assert x * (y + z) == x * y + x * z
        if not y.is_zero():
            assert (x / y) * y == x
        for k in field.galois_exponents:
            assert galois(x + y, k) == galois(x, k) + galois(y, k)
            assert galois(x * y, k) == galois(x, k) * galois(y, k)
        assert parse_element(format_element(x), field) == x

    return check


test_props_q = _field_props(QQ)
test_props_qa = _field_props(QA)
test_props_qg = _field_props(QG)


@settings(max_examples=100, deadline=None)
@given(elements(QG))
def test_galois_group_is_cyclic_of_order_four(x):
    assert x.galois(3).galois(3) == x.galois(9)
    assert x.galois(3).galois(7) == x
    assert x.galois(1) == x


@settings(max_examples=100, deadline=None)
@given(elements(QA))
def test_quadratic_conjugation_is_involution(x):
    assert x.galois(2).galois(2) == x
    assert x.is_rational() == (x.galois(2) == x)


@settings(max_examples=100, deadline=None)
@given(elements(QG), st.integers(-6, 6))
def test_powers(x, k):
    if x.is_zero() and k < 0:
        return
    y = x.field.one
    for _ in range(abs(k)):
        y = y * x
    assert x ** k == (y if k >= 0 else y.inverse())


def test_hash_consistency():
    assert hash(QA(3)) == hash(3) == hash(Fraction(3))
    assert len({QG(Fraction(1, 2)), QG("1/2"), QG.one / 2}) == 1

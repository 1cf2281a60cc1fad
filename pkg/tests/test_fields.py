"""Exact field arithmetic over Q and GF(p)."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vahlen.fields import (FieldMismatch, InfiniteField, PrimeField, Q,
                           parse_field)

F3 = PrimeField(3)
F5 = PrimeField(5)

rationals = st.fractions(min_value=-10**6, max_value=10**6,
                         max_denominator=10**4)


def test_rational_arithmetic():
    assert Q.parse("1/2") + Q.parse("1/3") == Q.parse("5/6")
    assert Q.parse("1/2") - Q.parse("1/3") == Q.parse("1/6")
    assert Q.parse("-2") * Q.parse("3/4") == Q.parse("-3/2")
    assert Q.parse("1/2") / Q.parse("1/3") == Q.parse("3/2")
    assert -Q.parse("2/4") == Q.parse("-1/2")


def test_prime_field_arithmetic():
    two = F3.element(2)
    assert two * two == F3.element(1)
    assert F5.element(2).inverse() == F5.element(3)
    assert F3.element(1) + F3.element(2) == F3.zero
    assert (F5.element(4) / F5.element(3)) * F5.element(3) == F5.element(4)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Q.one / Q.zero
    with pytest.raises(ZeroDivisionError):
        F3.element(2) / F3.zero
    with pytest.raises(ZeroDivisionError):
        F3.zero.inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        F3.one + F5.one
    with pytest.raises(FieldMismatch):
        Q.one * F3.one


def test_characteristic_two_and_composite_rejected():
    with pytest.raises(ValueError):
        PrimeField(2)
    with pytest.raises(ValueError):
        PrimeField(9)
    with pytest.raises(ValueError):
        PrimeField(1)


def test_parse_and_format():
    assert parse_field("Q") == Q
    assert parse_field("F7") == PrimeField(7)
    with pytest.raises(ValueError):
        parse_field("R")
    assert str(Q.parse("2/4")) == "1/2"
    assert str(F5.parse("-1")) == "4"
    assert str(F5.parse("7")) == "2"


def test_enumeration():
    assert [s.value for s in F3.elements()] == [0, 1, 2]
    assert [s.value for s in F5.elements()] == [0, 1, 2, 3, 4]
    with pytest.raises(InfiniteField):
        list(Q.elements())


@pytest.mark.parametrize("field", [F3, F5])
def test_field_axioms_exhaustive(field):
    """Associativity, distributivity, inverses, exhaustively over GF(p)."""
    elems = list(field.elements())
    for x in elems:
        for y in elems:
            assert x + y == y + x
            assert x * y == y * x
            for z in elems:
                assert (x + y) + z == x + (y + z)
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z
    for x in elems:
        assert x + (-x) == field.zero
        if not x.is_zero():
            assert x * x.inverse() == field.one


@given(rationals, rationals, rationals)
def test_rational_axioms(a, b, c):
    x, y, z = Q.element(a), Q.element(b), Q.element(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if not y.is_zero():
        assert (x / y) * y == x


def test_is_square_examples():
    assert Q.parse("4/9").is_square()
    assert not Q.parse("-4").is_square()
    assert not Q.parse("2").is_square()
    assert not F3.element(2).is_square()
    with pytest.raises(ValueError):
        Q.zero.is_square()


def test_is_square_matches_enumeration_oracle():
    # oracle: the set of squares of GF(p), built by brute force
    for field in (F3, F5, PrimeField(7)):
        squares = {(s * s).value for s in field.elements()
                   if not s.is_zero()}
        for x in field.elements():
            if x.is_zero():
                continue
            assert x.is_square() == (x.value in squares)
        # spot value: -1 is a square mod 5
        if field.modulus == 5:
            assert field.element(-1).is_square()


@pytest.mark.parametrize("field", [F3, F5, PrimeField(11)])
def test_square_class_group_has_order_two(field):
    """is_square(xy) = is_square(x) XNOR is_square(y) over prime fields."""
    nonzero = [x for x in field.elements() if not x.is_zero()]
    for x in nonzero:
        for y in nonzero:
            assert (x * y).is_square() == (x.is_square() == y.is_square())


def test_scalar_hash_and_pow():
    assert hash(F5.element(7)) == hash(F5.element(2))
    assert Q.element(Fraction(1, 2)) ** 3 == Q.parse("1/8")
    assert F3.element(2) ** -1 == F3.element(2)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from skewring.scalars import ModCarrier, RationalCarrier, parse_carrier, CarrierError


def test_parse_strings():
    assert parse_carrier("gf:2") == ModCarrier(2)
    assert parse_carrier("gf:5").is_field
    assert parse_carrier("zmod:6").is_field is False
    assert parse_carrier("q") == RationalCarrier()


def test_parse_json_objects():
    assert parse_carrier({"carrier": "gf", "p": 3}) == ModCarrier(3)
    assert parse_carrier({"carrier": "zmod", "n": 4}) == ModCarrier(4)
    assert parse_carrier({"carrier": "q"}) == RationalCarrier()


def test_gf_requires_prime():
    with pytest.raises(CarrierError):
        parse_carrier("gf:4")


def test_prime_zmod_is_a_field():
    c = parse_carrier("zmod:5")
    assert c.is_field and c.name == "gf:5"


def test_composite_zmod_rejects_division():
    c = parse_carrier("zmod:6")
    with pytest.raises(CarrierError):
        c.inv(5)


@given(st.integers(), st.integers(), st.sampled_from([2, 3, 5, 7]))
def test_mod_field_axioms(a, b, p):
    c = ModCarrier(p)
    a, b = c.from_int(a), c.from_int(b)
    assert c.add(a, b) == c.add(b, a)
    assert c.mul(a, b) == c.mul(b, a)
    assert c.add(a, c.neg(a)) == c.zero
    if a != c.zero:
        assert c.mul(a, c.inv(a)) == c.one


def test_rational_values_round_trip():
    c = RationalCarrier()
    assert c.parse_value("2/3") == Fraction(2, 3)
    assert c.encode_value(Fraction(2, 3)) == "2/3"
    assert c.encode_value(Fraction(4, 2)) == 2
    assert c.parse_value(5) == Fraction(5)


def test_mod_value_parsing():
    c = ModCarrier(3)
    assert c.parse_value(7) == 1
    with pytest.raises(CarrierError):
        c.parse_value("1/2")

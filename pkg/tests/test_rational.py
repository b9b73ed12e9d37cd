from fractions import Fraction

import pytest

from chancelab.rational import (
    ProbabilityRangeError,
    RationalFormatError,
    as_fraction,
    decimal_str,
    format_rational,
    parse_rational,
    probability,
)


def test_parse_basic_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("7") == Fraction(7)
    assert parse_rational("-2/5") == Fraction(-2, 5)
    assert parse_rational(" 1/2 ") == Fraction(1, 2)


@pytest.mark.parametrize("bad", ["0.5", "1e-3", "1/0", "3//4", "", "a/b", "1/-2"])
def test_parse_rejects_inexact_or_malformed(bad):
    with pytest.raises(RationalFormatError):
        parse_rational(bad)


def test_format_always_explicit_denominator():
    assert format_rational(Fraction(1, 2)) == "1/2"
    assert format_rational(Fraction(3)) == "3/1"
    assert format_rational(Fraction(0)) == "0/1"


def test_as_fraction_rejects_floats_and_bools():
    with pytest.raises(RationalFormatError):
        as_fraction(0.5)
    with pytest.raises(RationalFormatError):
        as_fraction(True)
    assert as_fraction(3) == Fraction(3)
    assert as_fraction(Fraction(2, 7)) == Fraction(2, 7)


def test_probability_range():
    assert probability("1/2") == Fraction(1, 2)
    assert probability(0) == 0
    assert probability(1) == 1
    with pytest.raises(ProbabilityRangeError):
        probability("3/2")
    with pytest.raises(ProbabilityRangeError):
        probability("-1/2")


def test_decimal_str_significant_digits():
    assert decimal_str(Fraction(1, 3)) == "0.333333333333"
    assert decimal_str(Fraction(1, 2)) == "0.5"
    assert decimal_str(Fraction(0)) == "0"
    assert decimal_str(Fraction(2, 3)) == "0.666666666667"


def test_decimal_str_round_half_even():
    # 0.0000000000125 rounds to 12 significant digits half-even
    assert decimal_str(Fraction(125, 10**13), 2) == "1.2E-11"
    assert decimal_str(Fraction(135, 10**13), 2) == "1.4E-11"

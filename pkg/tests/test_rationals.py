"""Supported-denominator arithmetic and binary expansions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from takagi.rationals import (
    BinaryExpansion,
    UnsupportedDenominatorError,
    format_rational,
    is_supported,
    make_rational,
    ordinate_depth,
    parse_rational,
    split_denominator,
    to_binary,
)


def test_split_denominator():
    assert split_denominator(Fraction(7, 12)) == (2, 3)
    assert split_denominator(Fraction(1, 8)) == (3, 1)
    assert split_denominator(Fraction(5)) == (0, 1)
    assert split_denominator(Fraction(2, 3)) == (0, 3)


def test_supported_class():
    good = [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(5, 6),
            Fraction(7, 12), Fraction(1, 1024), Fraction(11, 3 * 2**9)]
    for x in good:
        assert is_supported(x)
    bad = [Fraction(1, 5), Fraction(1, 7), Fraction(1, 9), Fraction(8, 15),
           Fraction(1, 48 * 5)]
    for x in bad:
        assert not is_supported(x)


def test_make_rational_reduces_before_checking():
    # 10/15 reduces to 2/3, which is fine even though 15 itself is not.
    assert make_rational(10, 15) == Fraction(2, 3)
    with pytest.raises(UnsupportedDenominatorError):
        make_rational(1, 5)


def test_ordinate_depth_pins():
    assert ordinate_depth(Fraction(1, 8)) == 2
    assert ordinate_depth(Fraction(2, 3)) == 0
    assert ordinate_depth(Fraction(3, 128)) == 4
    assert ordinate_depth(Fraction(0)) == 0
    assert ordinate_depth(Fraction(1, 2)) == 1
    assert ordinate_depth(Fraction(7, 12)) == 1
    with pytest.raises(UnsupportedDenominatorError):
        ordinate_depth(Fraction(1, 5))


def test_parse_and_format():
    assert parse_rational("7/12") == Fraction(7, 12)
    assert parse_rational(" 3 ") == Fraction(3)
    assert parse_rational("1/5") == Fraction(1, 5)  # parsing has no support check
    with pytest.raises(ValueError):
        parse_rational("seven")
    with pytest.raises(ValueError):
        parse_rational("1/0")
    assert format_rational(Fraction(0)) == "0/1"
    assert format_rational(Fraction(2, 3)) == "2/3"


def test_expansion_pins():
    assert to_binary(Fraction(1, 3)) == BinaryExpansion((), (0, 1))
    assert to_binary(Fraction(1, 6)) == BinaryExpansion((0,), (0, 1))
    assert to_binary(Fraction(5, 8)) == BinaryExpansion((1, 0, 1), ())
    assert to_binary(Fraction(0)) == BinaryExpansion((), ())
    assert to_binary(Fraction(13, 48)).render() == "0.0100(01)"


def test_expansion_digit_conventions():
    e = to_binary(Fraction(5, 8))
    assert e.is_terminating
    assert e.digits(6) == (1, 0, 1, 0, 0, 0)  # zeros forever past the end
    with pytest.raises(IndexError):
        e.digit(0)


# Denominators stay modest: the period length is the multiplicative order of
# 2 modulo the odd part, which grows without bound over raw fractions.
rationals_01 = st.fractions(
    min_value=0, max_value=1, max_denominator=10_000
).filter(lambda x: x < 1)


@given(rationals_01)
@settings(deadline=None)
def test_expansion_round_trip(x):
    e = to_binary(x)
    assert e.value() == x


@given(rationals_01)
@settings(deadline=None)
def test_expansion_matches_long_division(x):
    e = to_binary(x)
    t = x
    for i in range(1, 40):
        t *= 2
        bit = 1 if t >= 1 else 0
        t -= bit
        assert e.digit(i) == bit


@given(rationals_01)
@settings(deadline=None)
def test_expansion_canonical(x):
    e = to_binary(x)
    p = len(e.period)
    # primitive period: no proper divisor of the length reproduces it
    for d in range(1, p):
        if p % d == 0:
            assert e.period != e.period[: d] * (p // d)
    # minimal preperiod: the last head digit must differ from the one the
    # cycle would have produced in its place
    if e.preperiod and e.period:
        assert e.preperiod[-1] != e.period[-1]
    # dyadic iff terminating
    assert e.is_terminating == (x.denominator & (x.denominator - 1) == 0)

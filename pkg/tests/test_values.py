from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from netauction.values import RootSum, parse_value, simplify, value_str


def test_sqrt_of_perfect_square_is_rational():
    assert RootSum.sqrt(9) == 3
    assert RootSum.sqrt(Fraction(9, 4)).as_fraction() == Fraction(3, 2)


def test_sqrt_reduces_square_factors():
    assert RootSum.sqrt(8) == 2 * RootSum.sqrt(2)
    assert RootSum.sqrt(Fraction(1, 2)) == RootSum.sqrt(2) / 2


def test_sqrt_negative_rejected():
    with pytest.raises(ValueError):
        RootSum.sqrt(-1)


def test_mixed_sign_comparisons_are_exact():
    # sqrt(2) + sqrt(3) vs sqrt(10): squares are 5 + 2*sqrt(6) vs 10; since
    # sqrt(6) < 2.5 the left side is smaller.
    left = RootSum.sqrt(2) + RootSum.sqrt(3)
    assert left < RootSum.sqrt(10)
    assert RootSum.sqrt(10) > left
    assert not left == RootSum.sqrt(10)


def test_near_tie_resolved_correctly():
    # 665857/470832 is a continued-fraction convergent of sqrt(2); the gap is
    # below 1e-12, far past float discrimination.
    approx = Fraction(665857, 470832)
    assert RootSum.sqrt(2) < approx
    assert RootSum.sqrt(2) > approx - Fraction(1, 10**11)


def test_arithmetic_closure():
    v = 3 * RootSum.sqrt(2) - RootSum.sqrt(8)
    assert v == RootSum.sqrt(2)
    assert (RootSum.sqrt(2) * RootSum.sqrt(2)).as_fraction() == 2
    assert (RootSum.sqrt(6) * RootSum.sqrt(3)) == 3 * RootSum.sqrt(2)


def test_simplify_collapses_rational_sums():
    v = simplify(RootSum.sqrt(2) - RootSum.sqrt(2) + Fraction(5, 3))
    assert isinstance(v, Fraction) and v == Fraction(5, 3)


def test_value_str_forms():
    assert value_str(Fraction(7, 2)) == "7/2"
    assert value_str(RootSum.sqrt(2) * Fraction(3, 2)) == "3/2*sqrt(2)"
    assert value_str(RootSum.of(4)) == "4"


def test_parse_value_exact():
    assert parse_value("3.14") == Fraction(314, 100)
    assert parse_value("7/2") == Fraction(7, 2)
    with pytest.raises(ValueError):
        parse_value("not-a-number")


small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=8)
radicands = st.integers(min_value=1, max_value=30)


@given(st.lists(st.tuples(small_fracs, radicands), min_size=0, max_size=4))
def test_comparison_agrees_with_float(terms):
    total = RootSum.of(0)
    approx = 0.0
    for coeff, m in terms:
        total = total + coeff * RootSum.sqrt(m)
        approx += float(coeff) * m**0.5
    if abs(approx) > 1e-6:
        assert (total > 0) == (approx > 0)


@given(small_fracs, radicands, small_fracs, radicands)
def test_order_is_translation_invariant(c1, m1, c2, m2):
    a = c1 * RootSum.sqrt(m1)
    b = c2 * RootSum.sqrt(m2)
    shift = RootSum.sqrt(7) * Fraction(1, 3)
    assert (a < b) == (a + shift < b + shift)
    assert (a == b) == (a + shift == b + shift)

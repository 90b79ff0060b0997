from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hahnval import coefficients as cf
from hahnval.coefficients import (
    Coeff,
    DenominatorNotInLocalization,
    Tag,
    TagMismatch,
)


def x2(num, den=1):
    return cf.make(num, den, Tag.X2)


def y3(num, den=1):
    return cf.make(num, den, Tag.Y3)


class TestMake:
    def test_reduced(self):
        c = y3(3, 5)
        assert (c.num, c.den, c.tag) == (3, 5, Tag.Y3)

    def test_reduced_denominator_must_stay_in_ring(self):
        # 2/4 reduces to 1/2 and an even denominator is not allowed
        with pytest.raises(DenominatorNotInLocalization):
            x2(2, 4)

    def test_zero_normalizes(self):
        assert y3(0, 7) == Coeff(0, 1, Tag.Y3)

    def test_sign_moves_to_numerator(self):
        assert x2(3, -5) == Coeff(-3, 5, Tag.X2)

    def test_den_zero(self):
        with pytest.raises(ZeroDivisionError):
            y3(1, 0)

    def test_reduction_can_rescue_denominator(self):
        # 6/9 reduces to 2/3: still bad for Y3, fine for X2
        with pytest.raises(DenominatorNotInLocalization):
            y3(6, 9)
        assert x2(6, 9) == Coeff(2, 3, Tag.X2)


class TestArithmetic:
    def test_add(self):
        assert y3(1, 5) + y3(4, 5) == y3(1)

    def test_neg(self):
        assert -x2(3, 7) == x2(-3, 7)

    def test_cmp(self):
        # the ordering of the ambient rationals, restricted to each ring
        assert cf.cmp(y3(1, 2), y3(5, 7)) == -1
        assert cf.cmp(x2(1, 3), x2(2, 3)) == -1
        assert cf.cmp(y3(1, 2), y3(1, 2)) == 0
        assert cf.cmp(y3(5, 7), y3(1, 2)) == 1

    def test_tag_mismatch(self):
        with pytest.raises(TagMismatch):
            x2(1) + y3(1)
        with pytest.raises(TagMismatch):
            cf.cmp(x2(1), y3(1))

    def test_int_scaling(self):
        assert 6 * y3(5, 4) == y3(15, 2)


def divisible_bruteforce(a: Coeff, r: int, bound: int = 100) -> bool:
    """Search b = p/q with |p|, q <= bound, q admissible, and r*b = a."""
    target = a.as_fraction()
    blocked = a.tag.blocked_prime
    for q in range(1, bound + 1):
        if q % blocked == 0:
            continue
        for p in range(-bound, bound + 1):
            if Fraction(p, q) * r == target:
                return True
    return False


class TestDivisible:
    def test_three_fifths_by_three(self):
        assert cf.divisible(y3(3, 5), 3)  # 3/5 = 3 * (1/5)

    def test_one_not_by_three(self):
        assert not cf.divisible(y3(1), 3)  # 1/3 is outside the ring

    def test_one_not_by_two_in_x2(self):
        assert not cf.divisible(x2(1), 2)

    def test_two_sevenths_by_six(self):
        # 2/7 = 6 * (1/21) and 21 is odd, so this *is* divisible
        a = x2(2, 7)
        assert divisible_bruteforce(a, 6) is True
        assert cf.divisible(a, 6) is True

    def test_bruteforce_agreement_sample(self):
        cases = [
            (x2(4, 3), 2),
            (x2(4, 3), 6),
            (x2(1, 3), 3),
            (x2(-6, 7), 6),
            (y3(9, 8), 3),
            (y3(9, 8), 6),
            (y3(-2, 7), 6),
            (y3(5, 2), 2),
        ]
        for a, r in cases:
            assert cf.divisible(a, r) == divisible_bruteforce(a, r), (a, r)

    def test_zero_divisible_by_everything(self):
        for tag in Tag:
            for r in (2, 3, 6):
                assert cf.divisible(cf.zero(tag), r)

    def test_bad_r_rejected(self):
        with pytest.raises(ValueError):
            cf.divisible(y3(1), 5)


def check_witness(a: Coeff, r: int, hi: Coeff) -> Coeff:
    c = cf.coset_witness(a, r, hi)
    assert cf.cmp(c, cf.zero(a.tag)) > 0
    assert cf.cmp(c, hi) < 0
    assert cf.divisible(c - a, r)
    return c


class TestCosetWitness:
    def test_small_interval(self):
        check_witness(y3(1), 3, y3(1, 10))

    def test_value_already_inside(self):
        assert cf.coset_witness(x2(1), 2, x2(5)) == x2(1)

    def test_mod_six(self):
        check_witness(y3(5), 6, y3(1))

    def test_x2_mod_six_tiny_interval(self):
        check_witness(x2(7, 5), 6, x2(1, 99))

    def test_negative_start(self):
        check_witness(y3(-7, 4), 3, y3(1, 8))

    def test_divisible_input_rejected(self):
        with pytest.raises(ValueError):
            cf.coset_witness(y3(3), 3, y3(1))

    def test_nonpositive_hi_rejected(self):
        with pytest.raises(ValueError):
            cf.coset_witness(y3(1), 3, y3(0))


@st.composite
def coeffs(draw, tag=None):
    chosen = tag or draw(st.sampled_from([Tag.X2, Tag.Y3]))
    num = draw(st.integers(-50, 50))
    den = draw(
        st.integers(1, 50).filter(lambda d: d % chosen.blocked_prime != 0)
    )
    return cf.make(num, den, chosen)


@given(coeffs())
def test_six_divisibility_is_conjunction(a):
    assert cf.divisible(a, 6) == (cf.divisible(a, 2) and cf.divisible(a, 3))


@given(coeffs(tag=Tag.X2), coeffs(tag=Tag.X2))
def test_x2_closed_under_add(a, b):
    total = a + b
    assert total.den % 2 == 1
    assert total.as_fraction() == a.as_fraction() + b.as_fraction()


@given(coeffs(tag=Tag.Y3), coeffs(tag=Tag.Y3))
def test_y3_closed_under_add(a, b):
    total = a + b
    assert total.den % 3 != 0
    assert total.as_fraction() == a.as_fraction() + b.as_fraction()


@given(coeffs())
def test_neg_keeps_ring(a):
    assert (-a).tag is a.tag
    assert (-a).as_fraction() == -a.as_fraction()
    assert -(-a) == a


@settings(max_examples=200)
@given(coeffs(), st.sampled_from([2, 3, 6]), coeffs())
def test_coset_witness_contract(a, r, hi):
    if cf.divisible(a, r) or hi.tag is not a.tag:
        return
    hi = -hi if hi.num < 0 else hi
    if hi.num == 0:
        return
    check_witness(a, r, hi)


class TestLiterals:
    def test_parse_plain(self):
        assert cf.parse_coeff("7", Tag.Y3) == y3(7)

    def test_parse_fraction(self):
        assert cf.parse_coeff("-3/5", Tag.X2) == x2(-3, 5)

    def test_format_roundtrip(self):
        for c in [y3(1), y3(-3, 5), x2(22, 7), x2(0)]:
            assert cf.parse_coeff(cf.format_coeff(c), c.tag) == c

    def test_parse_garbage(self):
        with pytest.raises(ValueError):
            cf.parse_coeff("x/y", Tag.Y3)

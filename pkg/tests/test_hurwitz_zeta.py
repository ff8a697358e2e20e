"""Exact Bernoulli / Hurwitz zeta values and the real-s series"""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from hurwitz_zeta import (
    as_rational,
    as_twist,
    bernoulli_number,
    bernoulli_poly,
    binomial,
    circle_eta,
    complementary_twist,
    format_rational,
    hurwitz_zeta_neg,
    hurwitz_zeta_series,
    parse_rational,
)

twists = st.fractions(min_value=0, max_value=1, max_denominator=40).filter(lambda c: c < 1)


class TestBernoulli:

    def test_known_values(self):
        assert bernoulli_poly(0, Fraction(2, 7)) == 1
        assert bernoulli_poly(1, 0) == Fraction(-1, 2)
        assert bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)
        assert bernoulli_number(12) == Fraction(-691, 2730)
        assert bernoulli_number(7) == 0

    def test_matches_mpmath(self):
        for m in range(0, 20):
            assert float(bernoulli_poly(m, 1)) == pytest.approx(float(mpmath.bernpoly(m, 1)), rel=1e-12, abs=1e-15)

    @seed(1)
    @given(n=st.integers(min_value=1, max_value=12), x=st.fractions(min_value=-3, max_value=3, max_denominator=30))
    def test_difference_equation(self, n, x):
        assert bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == n * x ** (n - 1)

    @seed(2)
    @given(n=st.integers(min_value=0, max_value=12), x=st.fractions(min_value=0, max_value=1, max_denominator=30))
    def test_reflection(self, n, x):
        assert bernoulli_poly(n, 1 - x) == (-1) ** n * bernoulli_poly(n, x)

    def test_rejects_negative_degree(self):
        with pytest.raises(ValueError):
            bernoulli_poly(-1, 0)


class TestHurwitzZetaNeg:

    def test_known_values(self):
        assert hurwitz_zeta_neg(2, 0) == Fraction(-1, 12)
        assert hurwitz_zeta_neg(2, Fraction(1, 2)) == Fraction(1, 24)
        assert hurwitz_zeta_neg(1, Fraction(1, 3)) == Fraction(1, 6)
        assert hurwitz_zeta_neg(4, 0) == Fraction(1, 120)
        assert hurwitz_zeta_neg(1, 0) == Fraction(-1, 2)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_half_twist_identity(self, n):
        assert hurwitz_zeta_neg(n, Fraction(1, 2)) == (Fraction(2) ** (1 - n) - 1) * hurwitz_zeta_neg(n, 0)

    @pytest.mark.parametrize("c", [Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)])
    @pytest.mark.parametrize("n", range(1, 9))
    def test_complementary_twist_identity(self, n, c):
        assert hurwitz_zeta_neg(n, 1 - c) == (-1) ** n * hurwitz_zeta_neg(n, c)

    @seed(3)
    @given(n=st.integers(min_value=1, max_value=10), c=twists)
    def test_matches_mpmath(self, n, c):
        a = mpmath.mpf(c.numerator) / c.denominator if c > 0 else mpmath.mpf(1)
        expected = mpmath.zeta(1 - n, a)
        value = hurwitz_zeta_neg(n, c)
        assert float(value) == pytest.approx(float(expected), rel=1e-10, abs=1e-12)

    def test_rejects_bad_twist(self):
        with pytest.raises(ValueError):
            hurwitz_zeta_neg(2, 1)
        with pytest.raises(ValueError):
            hurwitz_zeta_neg(2, Fraction(-1, 3))
        with pytest.raises(ValueError):
            hurwitz_zeta_neg(0, 0)

    def test_complementary_twist(self):
        assert complementary_twist(0) == 0
        assert complementary_twist(Fraction(1, 3)) == Fraction(2, 3)

    def test_circle_eta(self):
        assert circle_eta(0) == 0
        assert circle_eta(Fraction(1, 2)) == 0
        assert circle_eta(Fraction(1, 3)) == Fraction(1, 3)
        assert circle_eta(Fraction(2, 3)) == -Fraction(1, 3)


class TestHurwitzZetaSeries:

    def test_known_values(self):
        assert hurwitz_zeta_series(4, 0, 1e-12) == pytest.approx(math.pi ** 4 / 90, abs=1e-11)
        assert hurwitz_zeta_series(2, Fraction(1, 2), 1e-10) == pytest.approx(math.pi ** 2 / 2, abs=1e-9)
        assert hurwitz_zeta_series(3, 0, 1e-12) == pytest.approx(1.2020569031595942, abs=1e-11)

    @seed(4)
    @given(s=st.floats(min_value=1.5, max_value=8.0), c=twists)
    def test_matches_mpmath(self, s, c):
        a = mpmath.mpf(c.numerator) / c.denominator if c > 0 else mpmath.mpf(1)
        assert hurwitz_zeta_series(s, c, 1e-10) == pytest.approx(float(mpmath.zeta(s, a)), rel=1e-9, abs=1e-9)

    def test_rejects_divergent(self):
        with pytest.raises(ValueError, match="diverges"):
            hurwitz_zeta_series(1.0, 0)


class TestRationals:

    def test_binomial(self):
        assert binomial(4, 2) == 6
        assert binomial(0, 1) == 0
        assert binomial(2, 1) == 2
        assert binomial(60, 30) == math.comb(60, 30)

    def test_parse_and_format(self):
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(" -7 ") == -7
        assert format_rational(Fraction(19, 4)) == "19/4"
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-1, 12)) == "-1/12"

    @pytest.mark.parametrize("text", ["0.5", "1/0", "a/b", "", "1/-2"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_as_rational_refuses_floats(self):
        with pytest.raises(ValueError):
            as_rational(0.5)
        with pytest.raises(ValueError):
            as_rational(True)

    def test_as_twist_range(self):
        assert as_twist("1/3") == Fraction(1, 3)
        with pytest.raises(ValueError):
            as_twist("4/3")

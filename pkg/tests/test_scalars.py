"""Exact scalar substrate: ring laws, Bernoulli data, serialization."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab.scalars import (
    BernoulliPolynomial,
    DomainError,
    ExactScalar,
    bernoulli_number,
    bernoulli_poly,
    exact_pow,
)

rationals = st.fractions(
    max_denominator=40, min_value=Fraction(-50), max_value=Fraction(50)
)
gaussians = st.builds(ExactScalar.gaussian, rationals, rationals)


def integrate_unit_interval(poly: BernoulliPolynomial) -> Fraction:
    """Oracle: integral of the polynomial over [0, 1], exact."""
    return sum(
        c / (j + 1) for j, c in enumerate(poly.coefficients) if c
    ) or Fraction(0)


class TestBernoulli:
    def test_base_case(self):
        assert bernoulli_poly(0).coefficients == (Fraction(1),)

    def test_degree_one(self):
        # derived from the derivative/mean-zero recurrence
        assert bernoulli_poly(1).coefficients == (Fraction(-1, 2), Fraction(1))

    def test_degree_two(self):
        assert bernoulli_poly(2).coefficients == (
            Fraction(1, 6),
            Fraction(-1),
            Fraction(1),
        )

    @pytest.mark.parametrize("n", range(1, 12))
    def test_recurrence_oracle(self, n):
        # d/dx B_n = n B_{n-1} coefficient-wise, and the mean over [0,1] vanishes
        bn = bernoulli_poly(n)
        assert bn.derivative().coefficients == tuple(
            n * c for c in bernoulli_poly(n - 1).coefficients
        )
        assert integrate_unit_interval(bn) == 0

    def test_numbers_match_polynomials_at_zero(self):
        for n in range(12):
            assert bernoulli_poly(n)(Fraction(0)) == bernoulli_number(n)

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            bernoulli_poly(-1)


class TestExactPow:
    def test_rational(self):
        assert exact_pow(ExactScalar(Fraction(2, 3)), -2) == ExactScalar(
            Fraction(9, 4)
        )

    @pytest.mark.parametrize(
        "base", [ExactScalar(5), ExactScalar.gaussian(2, -7), ExactScalar(Fraction(-3, 11))]
    )
    def test_power_zero(self, base):
        assert exact_pow(base, 0) == ExactScalar(1)

    def test_gaussian(self):
        assert exact_pow(ExactScalar.gaussian(1, 1), 2) == ExactScalar.gaussian(0, 2)

    def test_zero_negative_power(self):
        with pytest.raises(DomainError):
            exact_pow(ExactScalar(0), -1)


class TestRingLaws:
    @given(gaussians, gaussians, gaussians)
    @settings(max_examples=150, deadline=None)
    def test_associativity_and_distributivity(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(gaussians, gaussians)
    @settings(max_examples=100, deadline=None)
    def test_exact_pair_stays_exact(self, a, b):
        assert (a + b).is_exact and (a * b).is_exact
        if not b.is_zero():
            q = a / b
            assert q.is_exact
            assert q * b == a


class TestBigFloat:
    def test_mixing_uses_float_precision(self):
        x = ExactScalar.bigfloat(1.5, 96)
        y = ExactScalar(Fraction(1, 3))
        z = x * y + y
        assert z.kind == "bigfloat"
        assert z.precision == 96

    def test_error_radius_shrinks_with_precision(self):
        def dag(prec):
            a = ExactScalar.bigfloat(mpmath.mpf(1) / 3, prec)
            b = ExactScalar.bigfloat(mpmath.mpf(2) / 7, prec)
            out = a
            for _ in range(6):
                out = out * b + a / b - exact_pow(b, 3)
            return out

        radii = [dag(p).error_radius for p in (96, 192, 384)]
        assert radii[0] > radii[1] > radii[2] > 0

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ExactScalar(1) / ExactScalar(0)


class TestSerialization:
    @pytest.mark.parametrize(
        "value",
        [
            ExactScalar(Fraction(3, 7)),
            ExactScalar(Fraction(-12)),
            ExactScalar.gaussian(Fraction(1, 2), Fraction(-3, 4)),
            ExactScalar.gaussian(0, Fraction(5, 9)),
        ],
    )
    def test_exact_round_trip(self, value):
        assert ExactScalar.deserialize(value.serialize()) == value

    def test_rational_form(self):
        assert ExactScalar(Fraction(3, 7)).serialize() == "3/7"
        assert ExactScalar.gaussian(Fraction(1, 2), Fraction(-3, 4)).serialize() == (
            "1/2-3/4 i"
        )

    def test_bigfloat_round_trip_carries_precision(self):
        v = ExactScalar.bigfloat(mpmath.mpc("1.25", "-0.5"), 128)
        text = v.serialize()
        assert text.endswith("@128")
        assert ExactScalar.deserialize(text) == v

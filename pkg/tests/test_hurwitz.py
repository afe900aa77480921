"""Hurwitz zeta engine: exact special values, tail-controlled evaluation."""

from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from zetalab.hurwitz import (
    PoleError,
    hurwitz_mpc,
    hurwitz_residue,
    hurwitz_value,
    riemann_zeta,
    truncated_zeta,
)
from zetalab.scalars import ExactScalar, bernoulli_poly

F = Fraction


class TestResidue:
    @pytest.mark.parametrize("alpha", [F(1), F(1, 2), F(1, 3)])
    def test_residue_is_one(self, alpha):
        assert hurwitz_residue(alpha) == ExactScalar(1)

    def test_positive_alpha_required(self):
        with pytest.raises(ValueError):
            hurwitz_residue(F(-1, 2))

    def test_limit_extraction_agrees(self):
        # (s-1) zeta_H(s, alpha) at s = 1 +- 1e-6 approaches the residue
        for alpha in (F(1), F(2, 7)):
            for sgn in (1, -1):
                s = 1 + sgn * F(1, 10**6)
                val = hurwitz_mpc(ExactScalar(s), alpha, 128)
                est = (mpmath.mpf(s.numerator) / s.denominator - 1) * val
                assert abs(est - 1) < mpmath.mpf("1e-5")


class TestExactValues:
    def test_zero_at_one_third(self):
        # oracle: zeta_H(0, a) = -B_1(a) = 1/2 - a
        hv = hurwitz_value(0, F(1, 3))
        assert hv.exact and hv.value == ExactScalar(-bernoulli_poly(1)(F(1, 3)))
        assert hv.value == ExactScalar(F(1, 6))

    def test_zero_at_symmetry_point(self):
        assert hurwitz_value(0, F(1, 2)).value == ExactScalar(0)

    def test_minus_one(self):
        # oracle: -B_2(1)/2
        expected = ExactScalar(-bernoulli_poly(2)(F(1)) / 2)
        hv = hurwitz_value(-1, F(1))
        assert hv.exact and hv.value == expected == ExactScalar(F(-1, 12))

    @pytest.mark.parametrize("n", range(0, 8))
    @pytest.mark.parametrize("alpha", [F(1), F(1, 3), F(5, 4)])
    def test_bernoulli_oracle_grid(self, n, alpha):
        expected = -bernoulli_poly(n + 1)(alpha) / (n + 1)
        assert hurwitz_value(-n, alpha).value == ExactScalar(expected)

    def test_pole_rejected(self):
        with pytest.raises(PoleError):
            hurwitz_value(1, F(1, 2))

    def test_alpha_positive_required(self):
        with pytest.raises(ValueError):
            hurwitz_value(2, F(0))


class TestTruncated:
    def test_start_at_two(self):
        assert truncated_zeta(0, 2).value == ExactScalar(F(-3, 2))

    def test_full_series(self):
        assert truncated_zeta(-1, 1).value == ExactScalar(F(-1, 12))

    def test_basel_point(self):
        val = truncated_zeta(2, 1, prec=64).value.to_mpc(64)
        with mp.workprec(80):
            assert abs(val - mpmath.pi**2 / 6) < mpmath.mpf("1e-15")

    def test_tail_matches_head_subtraction(self):
        # sum_{k>=k0} k^{-s} == zeta(s) - sum_{k<k0} k^{-s} at a numeric point
        s, k0 = F(7, 2), 5
        lhs = truncated_zeta(s, k0, 128).value.to_mpc(128)
        with mp.workprec(160):
            rhs = mpmath.zeta(mpmath.mpf(s.numerator) / s.denominator) - sum(
                mpmath.power(k, -mpmath.mpf(s.numerator) / s.denominator)
                for k in range(1, k0)
            )
        assert abs(lhs - rhs) < mpmath.mpf(2) ** -120


class TestEulerMaclaurin:
    SAMPLES = [
        (mpmath.mpc(2, 1), F(1, 3)),
        (mpmath.mpc("0.5", "14.1"), F(1)),
        (mpmath.mpc(-3.5, 2.25), F(5, 7)),
        (mpmath.mpc(6), F(4, 3)),
        (mpmath.mpc("-0.25", "-1.75"), F(9, 8)),
    ]

    @pytest.mark.parametrize("s,alpha", SAMPLES)
    def test_against_independent_oracle(self, s, alpha):
        mine = hurwitz_mpc(s, alpha, 256)
        with mp.workprec(300):
            ref = mpmath.zeta(s, mpmath.mpf(alpha.numerator) / alpha.denominator)
        assert abs(mine - ref) < mpmath.mpf("1e-70")

    def test_alpha_shift_identity_exact(self):
        # zeta_H(s, a) = zeta_H(s, a+1) + a^{-s} at integer s <= 0, exactly
        for n in range(0, 6):
            for alpha in (F(1, 3), F(2, 5)):
                lhs = hurwitz_value(-n, alpha).value
                rhs = hurwitz_value(-n, alpha + 1).value + ExactScalar(alpha**n)
                assert lhs == rhs

    def test_alpha_shift_identity_numeric(self):
        with mp.workprec(280):
            for s in (mpmath.mpc(2, 3), mpmath.mpc(-1.5, 0.5)):
                for alpha in (F(1, 3), F(7, 8)):
                    lhs = hurwitz_mpc(s, alpha, 256)
                    a = mpmath.mpf(alpha.numerator) / alpha.denominator
                    rhs = hurwitz_mpc(s, alpha + 1, 256) + mpmath.power(a, -s)
                    assert abs(lhs - rhs) < mpmath.mpf("1e-30")

    def test_riemann_special_point(self):
        assert riemann_zeta(0).value == ExactScalar(F(-1, 2))

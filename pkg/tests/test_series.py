"""Truncated expansion algebra: closure under the eigenvalue maps."""

from fractions import Fraction

import mpmath
import pytest

from zetalab.series import (
    AsymptoticSeries,
    LadderError,
    RadicalProduct,
    SpectralMapSpec,
    series_add,
    series_compose_map,
    series_pow,
)

F = Fraction


def law_k() -> AsymptoticSeries:
    return AsymptoticSeries.power_law(1)


class TestRadicalProduct:
    def test_rational_round_trip(self):
        r = RadicalProduct.from_rational(F(18, 5))
        assert r.as_fraction() == F(18, 5)

    def test_irrational_power_stays_symbolic(self):
        r = RadicalProduct.from_rational(2).pow(F(1, 2))
        assert r.as_fraction() is None
        # collapses only at evaluation
        with mpmath.mp.workprec(80):
            assert abs(r.to_mpf(64) - mpmath.sqrt(2)) < mpmath.mpf(2) ** -60

    def test_cancellation(self):
        r = RadicalProduct.from_rational(2).pow(F(1, 3))
        assert (r * r * r).as_fraction() == 2


class TestSeriesAdd:
    def test_same_law(self):
        s = series_add(law_k(), law_k())
        assert s.lead.as_fraction() == 2 and s.exponent == 1 and not s.coeffs

    def test_shift_by_constant(self):
        s = series_add(law_k(), AsymptoticSeries.constant(F(1, 3)))
        assert s.exponent == 1 and s.coeffs == (F(1, 3),)

    def test_inverse_power_correction(self):
        # hand expansion: (1+e)k + c(1+e)^{-n} k^{-n} =
        # (1+e) k (1 + c(1+e)^{-n-1} k^{-n-1})
        e, c, n = F(1, 2), F(3), 2
        u = law_k().scaled(1 + e)
        v = AsymptoticSeries.power_law(-n, (1 + e) ** -n).scaled(c)
        s = series_add(u, v)
        assert s.lead.as_fraction() == 1 + e
        assert s.coeffs == (0, 0, c * (1 + e) ** (-n - 1))

    def test_ladder_misalignment(self):
        half = AsymptoticSeries.power_law(F(1, 2))
        with pytest.raises(LadderError):
            series_add(law_k(), half)

    def test_leading_cancellation_renormalizes(self):
        # (k + 5) - k = 5: drops to the constant law
        u = series_add(law_k(), AsymptoticSeries.constant(5))
        s = series_add(u, law_k().negate())
        assert s.exponent == 0 and s.lead.as_fraction() == 5 and s.sign == 1

    def test_signed_addition(self):
        # -k + 1/3 keeps the negative sign with |.| = k - 1/3
        s = series_add(law_k().negate(), AsymptoticSeries.constant(F(1, 3)))
        assert s.sign == -1 and s.coeffs == (F(-1, 3),)


class TestSeriesPow:
    def test_square_root_of_square(self):
        assert series_pow(AsymptoticSeries.power_law(2), F(1, 2)) == law_k()

    def test_perfect_square_corrections(self):
        a = F(2, 7)
        sq = AsymptoticSeries(1, 1, 2, (2 * a, a * a), True)
        r = series_pow(sq, F(1, 2))
        assert r.exponent == 1 and r.coeffs[0] == a
        assert all(c == 0 for c in r.coeffs[1:])

    def test_scaled_negative_power(self):
        # ((1+e) k)^{-n} = (1+e)^{-n} k^{-n}
        e, n = F(1, 2), 3
        u = law_k().scaled(1 + e)
        r = series_pow(u, F(-n))
        assert r.lead.as_fraction() == (1 + e) ** -n and r.exponent == -n

    def test_requires_positive_sign(self):
        with pytest.raises(ValueError):
            series_pow(law_k().negate(), F(2))

    def test_roundtrip_coefficient_exact(self):
        u = AsymptoticSeries(1, 1, 1, (F(1, 3), F(-2, 5), F(1, 7)), False)
        r = series_pow(series_pow(u, F(3)), F(1, 3))
        assert r.coeffs[: len(u.coeffs)] == u.coeffs

    def test_real_power_keeps_depth(self):
        u = AsymptoticSeries(1, 1, 1, (F(1, 2), F(1, 4)), False)
        assert series_pow(u, F(-7, 2)).depth == u.depth


class TestComposeMap:
    def test_shift(self):
        law = series_add(law_k(), AsymptoticSeries.constant(1))
        out = series_compose_map(law, SpectralMapSpec.shift(F(3)))
        assert out.coeffs == (F(4),)

    def test_f_eps_c_positive_branch(self):
        # f_{eps,c}(k) = (1+eps) k + c (1+eps)^{-n} k^{-n} on the positive branch
        eps, c, n = F(1, 2), F(3), 1
        out = series_compose_map(law_k(), SpectralMapSpec.scale(1 + eps))
        out = series_compose_map(
            out, SpectralMapSpec.add_signed_inverse_power(c, n), depth=4
        )
        assert out.lead.as_fraction() == 1 + eps
        assert out.coeffs[n] == c * (1 + eps) ** (-n - 1)

    def test_identity_map(self):
        law = series_add(law_k(), AsymptoticSeries.constant(F(2, 5)))
        assert series_compose_map(law, SpectralMapSpec.scale(1)) == law
        out = series_compose_map(
            law, SpectralMapSpec.add_signed_inverse_power(0, 2)
        )
        assert out == law

    def test_negative_branch_correction_pushes_outward(self):
        # lambda < 0: lambda + c sign(lambda)|lambda|^{-n} is more negative
        out = series_compose_map(
            law_k().negate(),
            SpectralMapSpec.add_signed_inverse_power(F(1, 4), 1),
            depth=4,
        )
        assert out.sign == -1
        assert out.coeffs[1] == F(1, 4)

    def test_signed_power_preserves_sign(self):
        out = series_compose_map(law_k().negate(), SpectralMapSpec.signed_power(F(3)))
        assert out.sign == -1 and out.exponent == 3


class TestNumericConsistency:
    def test_truncation_error_decay_rate(self):
        # |series(k) - exact(k)| ~ k^{e-T-1}: slopes on {10,20,40} within 10%
        a = F(1, 3)
        base = series_add(law_k(), AsymptoticSeries.constant(a))
        for depth in (3, 5):
            s = series_pow(base, F(1, 2), depth=depth)
            errs = []
            for k in (10, 20, 40):
                exact = mpmath.sqrt(mpmath.mpf(k) + mpmath.mpf(1) / 3)
                errs.append(abs(s.evaluate(k, 128) - exact))
            expected_slope = depth + 1 - F(1, 2)
            for i in range(2):
                slope = -mpmath.log(errs[i + 1] / errs[i]) / mpmath.log(2)
                assert abs(slope - float(expected_slope)) < 0.1 * float(
                    expected_slope
                )

    def test_exact_law_evaluation(self):
        law = series_add(law_k().scaled(F(3, 2)), AsymptoticSeries.constant(F(-1, 4)))
        val = law.evaluate(7, 128)
        assert abs(val - (mpmath.mpf(21) / 2 - mpmath.mpf(1) / 4)) < mpmath.mpf(2) ** -120


class TestSerialization:
    def test_round_trip(self):
        s = AsymptoticSeries(-1, F(5, 3), F(-2), (F(1, 2), F(0), F(-7, 9)), False)
        assert AsymptoticSeries.deserialize(s.serialize()) == s

    def test_radical_lead_round_trip(self):
        s = series_pow(law_k().scaled(2), F(1, 2))
        back = AsymptoticSeries.deserialize(s.serialize())
        assert back.lead == s.lead

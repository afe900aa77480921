"""Perturbation toolkit: shifts with crossings, scale family, roots, rebuilds."""

from fractions import Fraction

import pytest

from zetalab.library import circle_dirac, circle_laplacian, sphere2_dirac
from zetalab.models import spectral_functions
from zetalab.perturb import (
    ParameterError,
    PerturbationParams,
    ec_perturb,
    epsilon_scale,
    power_op,
    root_op,
    shift,
    symbol_shift,
    u_v,
)
from zetalab.scalars import ExactScalar
from zetalab.symbols import dirac_circle_symbol, parametrix

F = Fraction


class TestShift:
    def test_no_crossing_small_shift(self):
        model = shift(circle_dirac(), F(1, 3))
        assert model.kernel_dim == 0
        assert [(lam.real, m) for lam, m in model.exceptional] == [(F(1, 3), 1)]
        assert spectral_functions(model).eta.evaluate(0) == ExactScalar(F(1, 3))

    def test_zero_shift_is_identity(self):
        model = circle_dirac()
        assert shift(model, 0) is model

    def test_crossing_rebuckets(self):
        model = shift(circle_dirac(), F(3, 2))
        values = sorted(lam.real for lam, _ in model.exceptional)
        # old kernel lands on 3/2; the old -1 eigenvalue flips to +1/2
        assert values == [F(1, 2), F(3, 2)]
        assert model.kernel_dim == 0
        neg = [b for b in model.branches if b.sign < 0][0]
        assert neg.k0 == 2

    def test_exact_zero_landing_feeds_kernel(self):
        model = shift(circle_dirac(), F(2))
        assert model.kernel_dim == 1  # the old -2 eigenvalue
        assert sorted(lam.real for lam, _ in model.exceptional) == [F(1), F(2)]

    def test_multiplicity_preserved_through_crossing(self):
        model = shift(sphere2_dirac(), F(5, 4))
        crossed = [(lam.real, m) for lam, m in model.exceptional]
        assert (F(1, 4), 2) in crossed  # the -1 eigenvalue had multiplicity 2


class TestEpsilonScale:
    def test_identity_at_zero(self):
        model = circle_dirac()
        assert epsilon_scale(model, 0) is model

    def test_circle_eta_residue(self):
        # [(1+eps)^{-s} - (1-eps)^{-s}] zeta(s) at s=1: residue 2v(eps)
        pe = epsilon_scale(circle_dirac(), F(1, 2))
        res = spectral_functions(pe).eta.residue(F(1)).as_exact()
        assert res == ExactScalar(F(-4, 3))

    @pytest.mark.parametrize("eps", [F(1, 10), F(1, 2), F(-1, 3)])
    def test_uv_residue_relation(self, eps):
        # m Res_{s=1} eta(P_eps) = v(eps) * m Res_{s=1} zeta_abs(P) on the circle
        base = circle_dirac()
        pe = epsilon_scale(base, eps)
        _, v = u_v(eps, base.dimension)
        lhs = spectral_functions(pe).eta.residue(F(1)).as_exact()
        rhs = v * spectral_functions(base).zeta_abs.residue(F(1)).as_exact()
        assert lhs == rhs

    def test_domain_guard(self):
        with pytest.raises(ParameterError):
            epsilon_scale(circle_dirac(), F(3, 2))


class TestEcPerturb:
    def test_law_gains_inverse_power_term(self):
        pec = ec_perturb(circle_dirac(), 0, F(1, 4))
        plus = [b for b in pec.branches if b.sign > 0][0]
        # law k + c k^{-1}: correction coefficient c at offset 2
        assert plus.law.coeffs[1] == F(1, 4)

    def test_c_zero_degenerates_to_scale(self):
        eps = F(1, 7)
        a = ec_perturb(sphere2_dirac(), eps, 0)
        b = epsilon_scale(sphere2_dirac(), eps)
        assert [br.law for br in a.branches] == [br.law for br in b.branches]

    def test_absolute_law_identity(self):
        # |P_{eps,c}| = |P_eps| + c |P_eps|^{-n} on each branch law
        eps, c = F(1, 10), F(1, 5)
        base = circle_dirac()
        pec = ec_perturb(base, eps, c)
        pe = epsilon_scale(base, eps)
        for bc, be in zip(pec.branches, pe.branches):
            for k in (1, 2, 5):
                lam_e = be.abs_eigen_exact(k)
                lam_ec = bc.abs_eigen_exact(k)
                assert lam_ec == lam_e + c * lam_e ** (-base.dimension)

    def test_zero_eps_negative_point_residue(self):
        # Res_{s=-1} zeta_abs(P_{0,c}) = 2c: one binomial step of the k^{-1}
        # correction, i.e. c * m * Res_{s=1} zeta_abs(P) * C(-s,1)|_{s=-1}
        c = F(2, 7)
        pec = ec_perturb(circle_dirac(), 0, c)
        res = spectral_functions(pec).zeta_abs.residue(F(-1)).as_exact()
        base = spectral_functions(circle_dirac()).zeta_abs.residue(F(1)).as_exact()
        assert res == ExactScalar(2 * c) == ExactScalar(c) * base

    def test_negative_c_rejected(self):
        with pytest.raises(ParameterError):
            ec_perturb(circle_dirac(), 0, F(-1, 2))

    def test_oversized_c_rejected(self):
        with pytest.raises(ParameterError):
            ec_perturb(circle_dirac(), 0, F(9))


class TestRootOp:
    def test_laplacian_root_is_first_order(self):
        root = root_op(circle_laplacian())
        assert root.order == 1
        br = root.branches[0]
        assert br.law.exponent == 1 and not br.law.coeffs

    def test_root_then_power_restores_laws(self):
        lap = circle_laplacian()
        root = root_op(lap)
        rebuilt = power_op(root, PerturbationParams(m=2))
        for b0, b1 in zip(lap.branches, rebuilt.branches):
            for k in (1, 2, 3, 9):
                assert b0.abs_eigen_exact(k) == b1.abs_eigen_exact(k)

    def test_squared_sphere_root(self):
        # laws k^2 with multiplicity 2k, all positive: the root has law k
        from zetalab.models import Branch, LawGenerator, SpectralModel

        gen = LawGenerator(1, F(1), F(0), F(2))
        squared = SpectralModel(
            branches=(Branch(1, (F(0), F(2)), gen.series(6).abs(), 1, gen),),
            order=2,
            dimension=2,
            name="sphere_dirac_squared",
        )
        root = root_op(squared)
        assert root.branches[0].law.exponent == 1
        assert root.branches[0].abs_eigen_exact(5) == 5


class TestPowerOp:
    def test_degenerate_identity(self):
        base = sphere2_dirac()  # trivial kernel
        out = power_op(base, PerturbationParams())
        for b0, b1 in zip(base.branches, out.branches):
            for k in (1, 2, 7):
                assert b0.abs_eigen_exact(k) == b1.abs_eigen_exact(k)

    def test_m_one_matches_shift_of_ec(self):
        eps, c, a = F(1, 10), F(1, 5), F(1, 4)
        base = circle_dirac()
        via_power = power_op(base, PerturbationParams(a=a, epsilon=eps, c=c, m=1))
        via_maps = shift(ec_perturb(base, eps, c), a)
        for bp, bm in zip(via_power.branches, via_maps.branches):
            for k in (1, 3, 6):
                assert bp.abs_eigen_exact(k) == bm.abs_eigen_exact(k)
        assert sorted(str(l.real) for l, _ in via_power.exceptional) == sorted(
            str(l.real) for l, _ in via_maps.exceptional
        )

    def test_kernel_moves_to_a_power_m(self):
        base = circle_dirac()  # kernel_dim 1
        out = power_op(base, PerturbationParams(a=F(1, 2), m=3))
        assert out.kernel_dim == 0
        assert (ExactScalar(F(1, 8)), 1) in out.exceptional

    def test_gap_guard(self):
        with pytest.raises(ParameterError):
            power_op(circle_dirac(), PerturbationParams(a=F(2), m=2))

    def test_requires_first_order(self):
        with pytest.raises(ParameterError):
            power_op(circle_laplacian(), PerturbationParams(a=F(1, 4), m=2))


class TestUV:
    def test_zero(self):
        u, v = u_v(0, 5)
        assert u == ExactScalar(1) and v == ExactScalar(0)

    def test_exact_rationals(self):
        u, v = u_v(F(1, 10), 2)
        assert u == ExactScalar(F(1, 2) * (F(100, 121) + F(100, 81)))
        assert v == ExactScalar(F(1, 2) * (F(100, 121) - F(100, 81)))

    def test_sum_identity(self):
        for eps in (F(1, 10), F(-2, 5)):
            for n in (1, 2, 3):
                u, v = u_v(eps, n)
                assert u + v == ExactScalar((1 + eps) ** -n)

    def test_cubic_remainder_bound(self):
        for n in range(1, 7):
            for eps in (F(1, 2), F(-1, 2), F(1, 3), F(1, 10)):
                _, v = u_v(eps, n)
                assert abs(v.real + n * eps) <= 2 * F(n) ** 3 * abs(eps) ** 3


class TestScaleIdentityAcrossModels:
    @pytest.mark.parametrize("eps", [F(1, 10), F(1, 2)])
    @pytest.mark.parametrize(
        "factory", [circle_dirac, sphere2_dirac], ids=["circle", "sphere2"]
    )
    def test_top_eta_residue_transforms_exactly(self, factory, eps):
        model = factory()
        n, m = model.dimension, model.order
        sigma = F(n, m)
        u, v = u_v(eps, n)
        fns0 = spectral_functions(model)
        fns1 = spectral_functions(epsilon_scale(model, eps))
        lhs = ExactScalar(m) * fns1.eta.residue(sigma).as_exact()
        rhs = u * (ExactScalar(m) * fns0.eta.residue(sigma).as_exact()) + v * (
            ExactScalar(m) * fns0.zeta_abs.residue(sigma).as_exact()
        )
        assert lhs == rhs


class TestResiduePolynomialStructure:
    def test_sphere_leading_coefficient(self):
        # residue of eta at s=1 under shifts: polynomial -4a, degree n-k=1,
        # leading coefficient C(-1,1) * Res|P|^{-2} = -4
        from zetalab.checks import check_prop_first_order

        verdict = check_prop_first_order(sphere2_dirac(), (1, 2))
        assert verdict.passed


class TestSymbolShift:
    def test_adds_constant_on_both_rays(self):
        sym = symbol_shift(dirac_circle_symbol(), F(1, 3))
        comp = sym.component(0)
        assert comp.plus[0][0].constant_coefficient() == ExactScalar(F(1, 3))
        assert comp.minus[0][0].constant_coefficient() == ExactScalar(F(1, 3))

    def test_zero_shift_is_identity(self):
        sym = dirac_circle_symbol()
        assert symbol_shift(sym, 0) is sym

    def test_parametrix_matches_binomial_expansion(self):
        a = F(1, 3)
        q = parametrix(symbol_shift(dirac_circle_symbol(), a))
        # geometric coefficients (-a)^j on the plus ray
        for j in range(4):
            got = q.component(-1 - j).plus[0][0].constant_coefficient()
            assert got == ExactScalar(F(-1) ** j * a**j)

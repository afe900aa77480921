"""Symbol calculus: composition, parametrix, powers, |A| and F, residues."""

import random
from fractions import Fraction

import pytest

from zetalab.scalars import ExactScalar
from zetalab.series import RepresentationError
from zetalab.symbols import (
    EllipticityError,
    SymbolExpansion,
    TrigPoly,
    TruncationError,
    abs_and_sign,
    compose,
    differential_symbol,
    dirac_circle_symbol,
    identity_symbol,
    is_odd_class,
    mat_identity,
    ncr,
    parametrix,
    power_int,
    residue_density,
    scalar_symbol,
    RayComponent,
)

F = Fraction


def scalar_component(sym: SymbolExpansion, d: int) -> tuple[ExactScalar, ExactScalar]:
    comp = sym.component(d)
    return (
        comp.plus[0][0].constant_coefficient(),
        comp.minus[0][0].constant_coefficient(),
    )


class TestCompose:
    def test_square_of_derivative(self):
        d = dirac_circle_symbol()
        dd = compose(d, d)
        assert scalar_component(dd, 2) == (ExactScalar(1), ExactScalar(1))
        assert set(dd.components) == {2}

    def test_single_leibniz_term(self):
        # a(x) xi o b(x) xi: degree 2 is ab, degree 1 on xi>0 is a(-i b')
        a = TrigPoly.mode(1)
        b = TrigPoly({1: ExactScalar(1), -1: ExactScalar(1)})
        A = scalar_symbol({1: (a, a.scale(-1))})
        B = scalar_symbol({1: (b, b.scale(-1))})
        ab = compose(A, B)
        assert ab.component(2).plus[0][0] == a * b
        assert ab.component(1).plus[0][0] == a * b.dx().scale(
            ExactScalar.gaussian(0, -1)
        )

    def test_identity_is_neutral(self):
        b = differential_symbol({2: F(1), 0: TrigPoly.mode(-1, F(1, 2))})
        assert compose(identity_symbol(truncation=b.truncation), b) == b

    def test_constant_mode_reduces_to_matrix_product(self):
        eye = mat_identity(2)
        swap = (
            (TrigPoly(), TrigPoly.constant(1)),
            (TrigPoly.constant(1), TrigPoly()),
        )
        A = SymbolExpansion(1, 4, {1: RayComponent(swap, swap)}, rank=2)
        B = SymbolExpansion(1, 4, {1: RayComponent(eye, mat_identity(2))}, rank=2)
        out = compose(A, B)
        assert out.component(2).plus == swap
        assert set(out.components) == {2}


class TestParametrix:
    def test_inverse_of_derivative(self):
        q = parametrix(dirac_circle_symbol())
        assert scalar_component(q, -1) == (ExactScalar(1), ExactScalar(-1))
        assert set(q.components) == {-1}

    def test_geometric_series_for_shift(self):
        a = F(1, 2)
        q = parametrix(dirac_circle_symbol(a))
        # (xi + a)^{-1} ~ xi^{-1} - a xi^{-2} + a^2 xi^{-3} - ...
        for j in range(4):
            plus, minus = scalar_component(q, -1 - j)
            coeff = F((-1) ** j) * a**j
            assert plus == ExactScalar(coeff)
            assert minus == ExactScalar(coeff * (-1) ** (1 + j))

    def test_scalar_scaling(self):
        q = parametrix(differential_symbol({1: F(2)}))
        assert scalar_component(q, -1) == (
            ExactScalar(F(1, 2)),
            ExactScalar(F(-1, 2)),
        )

    def test_composes_to_identity(self):
        p = dirac_circle_symbol(F(1, 3))
        q = parametrix(p)
        assert compose(p, q) == identity_symbol(truncation=p.truncation)

    def test_non_elliptic_rejected(self):
        degenerate = scalar_symbol({1: (TrigPoly.constant(1), TrigPoly())})
        with pytest.raises(EllipticityError):
            parametrix(degenerate)

    def test_trig_division_restricted(self):
        lead = TrigPoly({0: ExactScalar(1), 1: ExactScalar(1)})
        sym = scalar_symbol({1: (lead, lead.scale(-1))})
        with pytest.raises(RepresentationError):
            parametrix(sym)


class TestPowerInt:
    def test_negative_cube(self):
        q = power_int(dirac_circle_symbol(), -3)
        assert scalar_component(q, -3) == (ExactScalar(1), ExactScalar(-1))
        assert set(q.components) == {-3}

    def test_matches_parametrix(self):
        p = dirac_circle_symbol(F(1, 2))
        assert power_int(p, -1) == parametrix(p)

    def test_inverse_square_components(self):
        a = F(1, 2)
        q = power_int(dirac_circle_symbol(a), -2)
        assert scalar_component(q, -2)[0] == ExactScalar(1)
        assert scalar_component(q, -3)[0] == ExactScalar(-2 * a)

    def test_power_zero_is_identity(self):
        p = dirac_circle_symbol(F(1, 3))
        assert power_int(p, 0) == identity_symbol(truncation=p.truncation)


class TestAbsAndSign:
    def test_derivative_symbol(self):
        abs_d, f = abs_and_sign(dirac_circle_symbol())
        assert scalar_component(abs_d, 1) == (ExactScalar(1), ExactScalar(1))
        assert scalar_component(f, 0) == (ExactScalar(1), ExactScalar(-1))

    def test_shifted_symbol(self):
        a = F(1, 3)
        abs_p, f = abs_and_sign(dirac_circle_symbol(a))
        assert scalar_component(abs_p, 1) == (ExactScalar(1), ExactScalar(1))
        assert scalar_component(abs_p, 0) == (ExactScalar(a), ExactScalar(-a))
        for d in range(-1, -4, -1):
            assert abs_p.component(d).is_zero()

    def test_negated_derivative(self):
        sym = differential_symbol({1: F(-1)})
        _, f = abs_and_sign(sym)
        assert scalar_component(f, 0) == (ExactScalar(-1), ExactScalar(1))

    def test_sign_squares_to_identity(self):
        _, f = abs_and_sign(dirac_circle_symbol(F(2, 5)))
        ff = compose(f, f)
        assert ff == identity_symbol(truncation=ff.truncation)

    def test_matrix_root_high_precision_fallback(self):
        # constant hermitian principal square with irrational eigenvalues:
        # |A| falls back to tracked big floats and still squares to A o A
        diag = (
            (TrigPoly.constant(2), TrigPoly.constant(1)),
            (TrigPoly.constant(1), TrigPoly.constant(1)),
        )
        neg = tuple(tuple(x.scale(-1) for x in row) for row in diag)
        sym = SymbolExpansion(1, 2, {1: RayComponent(diag, neg)}, rank=2)
        abs_s, _ = abs_and_sign(sym)
        got = abs_s.component(1).plus
        square = compose(sym, sym).component(2).plus
        import mpmath

        with mpmath.mp.workprec(260):
            for i in range(2):
                for j in range(2):
                    acc = mpmath.mpc(0)
                    for l in range(2):
                        acc += got[i][l].constant_coefficient().to_mpc(256) * got[l][
                            j
                        ].constant_coefficient().to_mpc(256)
                    ref = square[i][j].constant_coefficient().to_mpc(256)
                    assert abs(acc - ref) < mpmath.mpf(2) ** -240

    def test_dirac_type_matrix(self):
        # 2x2 system with principal symbol xi . id
        eye = mat_identity(2)
        neg = tuple(tuple(x.scale(-1) for x in row) for row in eye)
        off = (
            (TrigPoly(), TrigPoly.constant(F(1, 2))),
            (TrigPoly.constant(F(1, 2)), TrigPoly()),
        )
        sym = SymbolExpansion(
            1, 4, {1: RayComponent(eye, neg), 0: RayComponent(off, off)}, rank=2
        )
        abs_s, f = abs_and_sign(sym)
        assert abs_s.component(1).plus == eye
        assert f.component(0).plus == eye
        assert compose(f, f) == identity_symbol(2, 4)


class TestResidues:
    def test_density_of_inverse_absolute(self):
        abs_d, _ = abs_and_sign(dirac_circle_symbol())
        dens = residue_density(power_int(abs_d, -1))
        # (1/2pi)(1 + 1): the fiber-trace value is 1/pi
        assert dens.trace().constant_coefficient() == ExactScalar(2)
        assert abs(dens.value_at(0.3).real - 1 / 3.141592653589793) < 1e-12

    def test_odd_symbol_density_vanishes(self):
        dens = residue_density(parametrix(dirac_circle_symbol()))
        assert dens.trace().is_zero()

    def test_differential_has_no_density(self):
        assert ncr(dirac_circle_symbol()) == ExactScalar(0)

    def test_ncr_examples(self):
        abs_d, f = abs_and_sign(dirac_circle_symbol())
        assert ncr(power_int(abs_d, -1)) == ExactScalar(2)
        assert ncr(f) == ExactScalar(0)

    def test_truncation_guard(self):
        shallow = SymbolExpansion(
            1,
            0,
            {1: dirac_circle_symbol().component(1)},
            rank=1,
        )
        with pytest.raises(TruncationError):
            ncr(shallow)


class TestOddClass:
    def test_examples(self):
        d = dirac_circle_symbol()
        abs_d, _ = abs_and_sign(d)
        assert is_odd_class(d)
        assert not is_odd_class(abs_d)
        assert is_odd_class(parametrix(d))

    def test_closure_under_algebra(self):
        t = TrigPoly({2: ExactScalar.gaussian(F(1, 3), F(1, 5))})
        a = differential_symbol({1: F(1), 0: t + t.conj()})
        b = differential_symbol({2: F(1), 1: F(1, 2)})
        assert is_odd_class(compose(a, b))
        assert is_odd_class(parametrix(a))


def random_symbol(rng: random.Random, order: int, depth: int = 4) -> SymbolExpansion:
    def trig():
        return TrigPoly(
            {
                nu: ExactScalar.gaussian(
                    F(rng.randint(-3, 3), rng.randint(1, 3)),
                    F(rng.randint(-3, 3), rng.randint(1, 3)),
                )
                for nu in range(-2, 3)
                if rng.random() > 0.4
            }
            or {0: ExactScalar(1)}
        )

    return scalar_symbol(
        {d: (trig(), trig()) for d in range(order, order - 3, -1)}, truncation=depth
    )


class TestTraceProperty:
    def test_exact_on_seeded_random_pairs(self):
        rng = random.Random(777)
        for _ in range(20):
            a = random_symbol(rng, rng.choice((1, 0, -1)))
            b = random_symbol(rng, rng.choice((1, 0, -1)))
            assert (ncr(compose(a, b)) - ncr(compose(b, a))).is_zero()

    def test_hand_expanded_pair(self):
        # A = a(x) xi, B = xi^{-2}: the only degree -1 part of AB and BA comes
        # from one Leibniz step; both residues vanish term by term
        a = TrigPoly.mode(1)
        A = scalar_symbol({1: (a, a.scale(-1))})
        B = power_int(dirac_circle_symbol(), -2)
        assert ncr(compose(A, B)) == ExactScalar(0)
        assert ncr(compose(B, A)) == ExactScalar(0)

    def test_differential_pair(self):
        A = differential_symbol({1: F(1), 0: TrigPoly.mode(1, F(1, 2))})
        B = differential_symbol({1: F(3)})
        assert ncr(compose(A, B)) == ExactScalar(0)
        assert ncr(compose(B, A)) == ExactScalar(0)


class TestSerialization:
    def test_round_trip(self):
        from zetalab.formats import load_symbol, save_symbol

        sym = compose(dirac_circle_symbol(F(1, 3)), power_int(dirac_circle_symbol(), -2))
        path = "/tmp/zetalab_symbol_test.json"
        save_symbol(sym, path)
        assert load_symbol(path) == sym

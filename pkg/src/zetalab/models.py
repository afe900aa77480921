"""Spectral-model engine.

An operator is represented by signed eigenvalue branches (a polynomial
multiplicity together with an asymptotic law for |lambda(k)|), a finite list
of exceptional eigenvalues, and a kernel dimension.  From this the engine
produces the meromorphic data of the four spectral functions

    zeta_abs(s) = Z+(s) + Z-(s)          eta(s)     = Z+(s) - Z-(s)
    zeta_up(s)  = Z+(s) + e^{i pi s} Z-(s)
    zeta_down(s)= Z+(s) + e^{-i pi s} Z-(s)

where Z+/Z- are the continuations of the Dirichlet series over the positive /
negative part of the spectrum.  Pole locations and residues are exact
rationals wherever the reduction to Hurwitz-type zeta ladders is exact; the
evaluator combines exact Hurwitz terms with numerically summed remainders.

Branches built by this package carry their generating recipe (a base power law
plus a chain of eigenvalue maps), so laws can be re-expanded to any depth and
eigenvalues evaluated exactly per index; models loaded from files may instead
carry a fixed-depth law, in which case requests below the recorded validity
floor raise :class:`InsufficientDepthError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
from mpmath import mp

from .hurwitz import (
    PoleError,
    hurwitz_exact_nonpositive,
    hurwitz_finite_part,
    hurwitz_mpc,
)
from .scalars import DEFAULT_PRECISION, ExactScalar, mpf_from_fraction
from .series import (
    AsymptoticSeries,
    RadicalProduct,
    SpectralMapSpec,
    binomial_series_coefficients,
    series_compose_map,
)

RationalLike = Union[int, Fraction]

FUNCTION_NAMES = ("zeta_up", "zeta_down", "zeta_abs", "eta")


class ModelError(ValueError):
    """Malformed spectral model."""


class InsufficientDepthError(ValueError):
    """The stored truncation depth does not cover the requested point."""


class PoleHitError(ValueError):
    """Evaluation was requested at a genuine pole."""


# -- small exact-polynomial helpers (coefficients low degree first) ------


def poly_eval_fraction(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_eval_mpc(coeffs: Sequence[Fraction], x: mpmath.mpc) -> mpmath.mpc:
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def poly_derivative(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(coeffs[j] * j for j in range(1, len(coeffs)))


def poly_shift(coeffs: Sequence[Fraction], h: Fraction) -> tuple[Fraction, ...]:
    """Coefficients of p(y + h) given those of p(k), exact (Horner)."""
    out = [Fraction(0)] * len(coeffs)
    for c in reversed(coeffs):
        # out <- out * (y + h) + c
        new = [Fraction(0)] * len(coeffs)
        for j, oj in enumerate(out):
            if oj == 0:
                continue
            if j + 1 < len(new):
                new[j + 1] += oj
            new[j] += oj * h
        new[0] += c
        out = new
    return tuple(out)


def _binom_poly_table(max_r: int) -> list[tuple[Fraction, ...]]:
    """Polynomials binom(-s, r) in s, for r = 0..max_r."""
    table = [(Fraction(1),)]
    for r in range(1, max_r + 1):
        prev = table[-1]
        # multiply by (-s - (r-1)) / r
        new = [Fraction(0)] * (len(prev) + 1)
        for j, c in enumerate(prev):
            new[j] += c * Fraction(-(r - 1), r)
            new[j + 1] += c * Fraction(-1, r)
        table.append(tuple(new))
    return table


def correction_polynomials(
    coeffs: tuple[Fraction, ...], depth: int
) -> list[tuple[Fraction, ...]]:
    """g_t(s) with (1 + sum b_j k^-j)^{-s} = sum_t g_t(s) k^{-t} + O(k^{-depth-1}).

    Each g_t is an exact polynomial in s (low degree first); g_0 = 1.
    """
    from .series import _correction_power_table

    powers = _correction_power_table(coeffs, depth)
    binoms = _binom_poly_table(depth)
    out: list[list[Fraction]] = [[Fraction(0)] * (t + 1) for t in range(depth + 1)]
    out[0][0] = Fraction(1)
    for t in range(1, depth + 1):
        for r in range(1, t + 1):
            c = powers[r][t]
            if c == 0:
                continue
            for j, bj in enumerate(binoms[r]):
                out[t][j] += bj * c
    return [tuple(p) for p in out]


def _fraction_root(x: Fraction, v: int) -> Optional[Fraction]:
    """Exact positive v-th root of a positive rational, or None."""
    if x <= 0:
        return None

    def iroot(n: int) -> Optional[int]:
        if n == 0:
            return 0
        r = round(n ** (1.0 / v))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**v == n:
                return cand
        return None

    num = iroot(x.numerator)
    den = iroot(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


# -- eigenvalue-law generators -------------------------------------------


@dataclass(frozen=True)
class LawGenerator:
    """Exact recipe for one branch: sign * lead * (k + alpha)^exponent, then maps.

    Produces the law series at any requested depth and evaluates eigenvalues
    per index, exactly when the chain stays rational.
    """

    sign: int
    lead: Fraction
    alpha: Fraction
    exponent: Fraction
    maps: tuple[SpectralMapSpec, ...] = ()

    def __post_init__(self):
        if self.lead <= 0:
            raise ModelError("base lead must be positive")
        if self.sign not in (1, -1):
            raise ModelError("sign must be +1 or -1")

    def with_map(self, m: SpectralMapSpec) -> "LawGenerator":
        return LawGenerator(self.sign, self.lead, self.alpha, self.exponent, self.maps + (m,))

    def series(self, depth: int) -> AsymptoticSeries:
        """Signed law series to the requested depth."""
        if self.alpha == 0:
            base = AsymptoticSeries(1, self.lead, self.exponent, (), True)
        else:
            coeffs = binomial_series_coefficients(
                (self.alpha,), self.exponent, max(depth, 1)
            )
            terminating = self.exponent.denominator == 1 and self.exponent >= 0
            base = AsymptoticSeries(
                1, self.lead, self.exponent, tuple(coeffs[1:]), terminating
            )
        s = base if self.sign > 0 else base.negate()
        for m in self.maps:
            s = series_compose_map(s, m, depth=depth)
        return s

    def eigen_exact(self, k: int) -> Optional[Fraction]:
        """Signed eigenvalue at index k as an exact rational, or None."""
        base = Fraction(k) + self.alpha
        e = self.exponent
        if e.denominator == 1:
            x: Fraction = self.lead * base ** e.numerator
        else:
            root = _fraction_root(base, e.denominator)
            if root is None:
                return None
            x = self.lead * root**e.numerator
        x *= self.sign
        for m in self.maps:
            if m.kind == "shift":
                x = x + m.a
            elif m.kind == "scale":
                x = x * m.r
            elif m.kind == "abs":
                x = abs(x)
            elif m.kind == "add_signed_inverse_power":
                if x == 0:
                    return None
                sgn = 1 if x > 0 else -1
                x = x + m.c * sgn * abs(x) ** (-m.n)
            elif m.kind == "signed_power":
                sgn = 1 if x > 0 else -1
                if m.p.denominator == 1:
                    x = sgn * abs(x) ** m.p.numerator
                else:
                    root = _fraction_root(abs(x), m.p.denominator)
                    if root is None:
                        return None
                    x = sgn * root**m.p.numerator
            else:
                raise ModelError(f"unknown map kind {m.kind!r}")
        return x

    def eigen_mpf(self, k: int, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
        """Signed eigenvalue at index k at the requested precision."""
        exact = self.eigen_exact(k)
        with mp.workprec(prec):
            if exact is not None:
                return mpf_from_fraction(exact, prec)
        wp = prec + 16
        with mp.workprec(wp):
            base = mpf_from_fraction(Fraction(k) + self.alpha, wp)
            x = mpf_from_fraction(self.lead, wp) * mpmath.power(
                base, mpf_from_fraction(self.exponent, wp)
            )
            x *= self.sign
            for m in self.maps:
                if m.kind == "shift":
                    x = x + mpf_from_fraction(m.a, wp)
                elif m.kind == "scale":
                    x = x * mpf_from_fraction(m.r, wp)
                elif m.kind == "abs":
                    x = abs(x)
                elif m.kind == "add_signed_inverse_power":
                    x = x + mpf_from_fraction(m.c, wp) * mpmath.sign(x) * abs(x) ** (
                        -m.n
                    )
                elif m.kind == "signed_power":
                    x = mpmath.sign(x) * mpmath.power(
                        abs(x), mpf_from_fraction(m.p, wp)
                    )
        with mp.workprec(prec):
            return +x

    def serialize(self) -> dict:
        return {
            "sign": self.sign,
            "lead": str(self.lead),
            "alpha": str(self.alpha),
            "exponent": str(self.exponent),
            "maps": [m.serialize() for m in self.maps],
        }

    @classmethod
    def deserialize(cls, data: dict) -> "LawGenerator":
        return cls(
            int(data["sign"]),
            Fraction(data["lead"]),
            Fraction(data["alpha"]),
            Fraction(data["exponent"]),
            tuple(SpectralMapSpec.deserialize(m) for m in data.get("maps", ())),
        )


# -- branches and models ---------------------------------------------------


@dataclass(frozen=True)
class Branch:
    """One family of eigenvalues: sign * |law(k)| for k >= k0, counted with
    multiplicity mult(k) (polynomial coefficients, low degree first)."""

    sign: int
    mult: tuple[Fraction, ...]
    law: AsymptoticSeries
    k0: int = 1
    generator: Optional[LawGenerator] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ModelError("branch sign must be +1 or -1")
        if self.law.sign != 1:
            raise ModelError("branch law must be the positive |lambda| series")
        if not self.mult or all(c == 0 for c in self.mult):
            raise ModelError("multiplicity polynomial must be nonzero")

    @property
    def mult_degree(self) -> int:
        deg = len(self.mult) - 1
        while deg > 0 and self.mult[deg] == 0:
            deg -= 1
        return deg

    def mult_at(self, k: int) -> Fraction:
        return poly_eval_fraction(self.mult, Fraction(k))

    def law_at_depth(self, depth: int) -> AsymptoticSeries:
        if self.generator is not None:
            return self.generator.series(depth).abs()
        if self.law.terminating or self.law.depth >= depth:
            return self.law
        raise InsufficientDepthError(
            f"law stored to depth {self.law.depth}, depth {depth} requested; "
            "re-expand the model (raise --depth) or rebuild from its recipe"
        )

    def abs_eigen_mpf(self, k: int, prec: int) -> mpmath.mpf:
        if self.generator is not None:
            return abs(self.generator.eigen_mpf(k, prec))
        return abs(self.law.evaluate(k, prec))

    def abs_eigen_exact(self, k: int) -> Optional[Fraction]:
        if self.generator is None:
            return None
        v = self.generator.eigen_exact(k)
        return None if v is None else abs(v)


@dataclass(frozen=True)
class SpectralModel:
    """Finite description of the spectrum of a selfadjoint elliptic operator."""

    branches: tuple[Branch, ...]
    exceptional: tuple[tuple[ExactScalar, int], ...] = ()
    kernel_dim: int = 0
    order: int = 1
    dimension: int = 1
    name: str = ""

    def __post_init__(self):
        if self.order < 1 or self.dimension < 1:
            raise ModelError("order and dimension must be positive integers")
        if self.kernel_dim < 0:
            raise ModelError("kernel dimension must be >= 0")
        for lam, mult in self.exceptional:
            if not isinstance(lam, ExactScalar):
                raise ModelError("exceptional eigenvalues must be ExactScalar")
            if lam.is_zero():
                raise ModelError("exceptional eigenvalues must be nonzero")
            if lam.is_exact and lam.imag != 0:
                raise ModelError("exceptional eigenvalues must be real")
            if mult < 1:
                raise ModelError("exceptional multiplicities must be >= 1")

    def validate(self, window: int = 64) -> None:
        """Check the structural invariants on a finite window."""
        n_over_m = Fraction(self.dimension, self.order)
        for br in self.branches:
            e = br.law.exponent
            if e <= 0:
                raise ModelError("law exponent must be positive")
            if Fraction(self.order) / e != int(Fraction(self.order) / e):
                raise ModelError(
                    f"order {self.order} is not an integer multiple of the law "
                    f"exponent {e}; pole locations would leave the admissible grid"
                )
            if Fraction(br.mult_degree + 1) / e != n_over_m:
                raise ModelError(
                    f"counting exponent (deg mult + 1)/e = "
                    f"{Fraction(br.mult_degree + 1) / e} != n/m = {n_over_m}"
                )
            prev = None
            for k in range(br.k0, br.k0 + window):
                mult = br.mult_at(k)
                if mult.denominator != 1 or mult <= 0:
                    raise ModelError(
                        f"multiplicity {mult} at k={k} is not a positive integer"
                    )
                val = br.abs_eigen_mpf(k, 64)
                if not val > 0:
                    raise ModelError(f"|lambda({k})| = {val} is not positive")
                if prev is not None and not val > prev:
                    raise ModelError(
                        f"|lambda| not increasing at k={k} ({prev} -> {val})"
                    )
                prev = val

    def spectral_gap(self) -> Fraction:
        """Smallest |lambda| over the nonzero spectrum (rational lower data)."""
        candidates: list[Fraction] = []
        for br in self.branches:
            v = br.abs_eigen_exact(br.k0)
            if v is None:
                v = Fraction(str(br.abs_eigen_mpf(br.k0, 64) * mpmath.mpf("0.999999")))
            candidates.append(v)
        for lam, _ in self.exceptional:
            if lam.is_exact:
                candidates.append(abs(lam.real))
            else:
                candidates.append(Fraction(str(abs(lam.to_mpc(64)).real * mpmath.mpf("0.999999"))))
        if not candidates:
            raise ModelError("model has empty nonzero spectrum")
        return min(candidates)

    def map_exceptional(self, fn) -> tuple[tuple[ExactScalar, int], ...]:
        return tuple((fn(lam), mult) for lam, mult in self.exceptional)


# -- exact residue values ---------------------------------------------------


class ResidueValue:
    """Sum of Gaussian-rational multiples of radical products.

    Keys are the fractional parts of the radicals (canonical), so equality to
    zero is decidable; the value collapses to an :class:`ExactScalar` exactly
    when only the trivial radical remains.
    """

    __slots__ = ("_terms",)

    def __init__(self):
        self._terms: dict[RadicalProduct, tuple[Fraction, Fraction]] = {}

    def add(self, re: Fraction, im: Fraction = Fraction(0),
            radical: RadicalProduct | None = None) -> "ResidueValue":
        if radical is None:
            radical = RadicalProduct.one()
        rat, frac = radical.split()
        re, im = re * rat, im * rat
        old = self._terms.get(frac, (Fraction(0), Fraction(0)))
        new = (old[0] + re, old[1] + im)
        if new == (Fraction(0), Fraction(0)):
            self._terms.pop(frac, None)
        else:
            self._terms[frac] = new
        return self

    def add_value(self, other: "ResidueValue",
                  weight: tuple[Fraction, Fraction] = (Fraction(1), Fraction(0))):
        wr, wi = weight
        for frac, (re, im) in other._terms.items():
            self.add(wr * re - wi * im, wr * im + wi * re, frac)
        return self

    def is_zero(self) -> bool:
        return not self._terms

    def as_exact(self) -> Optional[ExactScalar]:
        if not self._terms:
            return ExactScalar(0)
        if len(self._terms) == 1:
            frac, (re, im) = next(iter(self._terms.items()))
            if frac == RadicalProduct.one():
                return ExactScalar(re, im)
        return None

    def to_mpc(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpc:
        with mp.workprec(prec + 8):
            acc = mpmath.mpc(0)
            for frac, (re, im) in self._terms.items():
                scale = frac.to_mpf(prec + 8)
                acc += mpmath.mpc(
                    mpf_from_fraction(re, prec + 8), mpf_from_fraction(im, prec + 8)
                ) * scale
        with mp.workprec(prec):
            return +acc

    def as_scalar(self, prec: int = DEFAULT_PRECISION) -> ExactScalar:
        exact = self.as_exact()
        if exact is not None:
            return exact
        return ExactScalar.bigfloat(self.to_mpc(prec), prec)

    def copy(self) -> "ResidueValue":
        out = ResidueValue()
        out._terms = dict(self._terms)
        return out

    def __repr__(self):
        exact = self.as_exact()
        if exact is not None:
            return f"ResidueValue({exact})"
        return f"ResidueValue(~{mpmath.nstr(self.to_mpc(64), 8)})"


def unit_phase_exact(sigma: Fraction, orientation: int) -> Optional[tuple[Fraction, Fraction]]:
    """e^{orientation * i pi sigma} as exact Gaussian (re, im), if it is one."""
    two = sigma * 2
    if two.denominator != 1:
        return None
    quarter = (orientation * two.numerator) % 4
    return [
        (Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(1)),
        (Fraction(-1), Fraction(0)),
        (Fraction(0), Fraction(-1)),
    ][quarter]


class CombinedResidue:
    """Residue of a weighted combination  res+ + w(sigma) res-  of the halves.

    Exact whenever the weight is Gaussian (sigma a half-integer); otherwise the
    value is zero iff both halves vanish (the weight is a non-real unit), and
    numeric rendering applies the phase at output precision.
    """

    def __init__(self, sigma: Fraction, plus: ResidueValue, minus: ResidueValue,
                 orientation: int):
        self.sigma = sigma
        self.plus = plus
        self.minus = minus
        self.orientation = orientation  # +1: e^{i pi s}, -1: e^{-i pi s}, 0/2: 1/-1

    def _weight_exact(self) -> Optional[tuple[Fraction, Fraction]]:
        if self.orientation == 0:
            return (Fraction(1), Fraction(0))
        if self.orientation == 2:
            return (Fraction(-1), Fraction(0))
        return unit_phase_exact(self.sigma, self.orientation)

    def combined(self) -> Optional[ResidueValue]:
        w = self._weight_exact()
        if w is None:
            return None
        return self.plus.copy().add_value(self.minus, w)

    def is_zero(self) -> bool:
        combined = self.combined()
        if combined is not None:
            return combined.is_zero()
        return self.plus.is_zero() and self.minus.is_zero()

    def as_exact(self) -> Optional[ExactScalar]:
        combined = self.combined()
        return combined.as_exact() if combined is not None else None

    def to_mpc(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpc:
        combined = self.combined()
        if combined is not None:
            return combined.to_mpc(prec)
        with mp.workprec(prec + 8):
            w = mpmath.exp(
                self.orientation * 1j * mpmath.pi * mpf_from_fraction(self.sigma, prec + 8)
            )
            acc = self.plus.to_mpc(prec + 8) + w * self.minus.to_mpc(prec + 8)
        with mp.workprec(prec):
            return +acc

    def as_scalar(self, prec: int = DEFAULT_PRECISION) -> ExactScalar:
        exact = self.as_exact()
        if exact is not None:
            return exact
        return ExactScalar.bigfloat(self.to_mpc(prec), prec)


# -- continuation terms ------------------------------------------------------


@dataclass(frozen=True)
class ZetaTerm:
    """poly(s) * A^{-s} * zeta_H(slope*s + shift, alpha): one ladder term."""

    poly: tuple[Fraction, ...]
    lead: RadicalProduct
    slope: Fraction
    shift: Fraction
    alpha: Fraction

    def pole_location(self) -> Fraction:
        return (1 - self.shift) / self.slope

    def residue_parts(self) -> tuple[Fraction, RadicalProduct]:
        """(rational factor, radical factor) of the residue at its own pole."""
        sigma = self.pole_location()
        return poly_eval_fraction(self.poly, sigma) / self.slope, self.lead.pow(-sigma)

    def coeff_mpc(self, s: mpmath.mpc, prec: int) -> mpmath.mpc:
        with mp.workprec(prec):
            scale = mpmath.exp(-s * self.lead.log_mpf(prec))
            return poly_eval_mpc(self.poly, s) * scale

    def coeff_deriv_mpc(self, s: mpmath.mpc, prec: int) -> mpmath.mpc:
        with mp.workprec(prec):
            log_a = self.lead.log_mpf(prec)
            scale = mpmath.exp(-s * log_a)
            p = poly_eval_mpc(self.poly, s)
            dp = poly_eval_mpc(poly_derivative(self.poly), s)
            return scale * (dp - log_a * p)


class _BranchContinuation:
    """Continuation of sum_{k>=k0} mult(k) |lambda(k)|^{-s} for one branch."""

    def __init__(self, branch: Branch):
        self.branch = branch
        law = branch.law
        self.is_pure_power = law.terminating and not law.coeffs
        self.is_affine = (
            law.terminating and law.exponent == 1 and len(law.coeffs) <= 1
        )
        self._term_cache: dict = {}

    # -- closed ladder forms ------------------------------------------

    def _affine_terms(self) -> list[ZetaTerm]:
        br = self.branch
        law = br.law
        alpha0 = law.coeffs[0] if law.coeffs else Fraction(0)
        rebased = poly_shift(br.mult, -alpha0)
        terms = []
        for j, cj in enumerate(rebased):
            if cj == 0:
                continue
            terms.append(
                ZetaTerm((cj,), law.lead, Fraction(1), Fraction(-j), br.k0 + alpha0)
            )
        return terms

    def _power_terms(self, anchor: int) -> list[ZetaTerm]:
        br = self.branch
        law = br.law
        return [
            ZetaTerm((md,), law.lead, law.exponent, Fraction(-d), Fraction(anchor))
            for d, md in enumerate(br.mult)
            if md != 0
        ]

    def _general_terms(self, depth: int, anchor: int):
        key = (depth, anchor)
        if key not in self._term_cache:
            law = self.branch.law_at_depth(depth)
            coeffs = tuple(law.coeffs[:depth]) + (Fraction(0),) * max(
                0, depth - len(law.coeffs)
            )
            gpolys = correction_polynomials(coeffs, depth)
            terms = []
            for t, g in enumerate(gpolys):
                if all(c == 0 for c in g):
                    continue
                for d, md in enumerate(self.branch.mult):
                    if md == 0:
                        continue
                    poly = tuple(c * md for c in g)
                    terms.append(
                        ZetaTerm(
                            poly,
                            law.lead,
                            law.exponent,
                            Fraction(t - d),
                            Fraction(anchor),
                        )
                    )
            self._term_cache[key] = (law, gpolys, terms)
        return self._term_cache[key]

    # -- pole table ------------------------------------------------------

    def validity_floor(self) -> Fraction | None:
        """Lowest sigma with justified residues, or None for unlimited."""
        br = self.branch
        if self.is_affine or self.is_pure_power or br.generator is not None:
            return None
        return Fraction(1 + br.mult_degree - br.law.depth) / br.law.exponent

    def pole_contributions(self, floor_sigma: Fraction) -> dict[Fraction, ResidueValue]:
        br = self.branch
        out: dict[Fraction, ResidueValue] = {}
        if self.is_affine:
            terms = self._affine_terms()
        elif self.is_pure_power:
            terms = self._power_terms(br.k0)
        else:
            floor_ok = self.validity_floor()
            if floor_ok is not None and floor_sigma < floor_ok:
                raise InsufficientDepthError(
                    f"residues below sigma={floor_ok} need a deeper law "
                    f"(stored depth {br.law.depth})"
                )
            t_max = 1 + br.mult_degree - br.law.exponent * floor_sigma
            t_max = math.floor(t_max)
            if t_max < 0:
                return out
            _, _, terms = self._general_terms(t_max, br.k0)
        for term in terms:
            sigma = term.pole_location()
            if sigma < floor_sigma:
                continue
            rat, rad = term.residue_parts()
            if rat == 0:
                continue
            out.setdefault(sigma, ResidueValue()).add(rat, Fraction(0), rad)
        return {sig: rv for sig, rv in out.items() if not rv.is_zero()}

    # -- evaluation -------------------------------------------------------

    def _anchor(self, law: AsymptoticSeries) -> int:
        k = max(self.branch.k0, 8)
        while True:
            total = sum(
                abs(float(b)) * float(k) ** -(j + 1)
                for j, b in enumerate(law.coeffs)
            )
            if total <= 0.25 or k > 1 << 20:
                return k
            k *= 2

    def eval_terms(self, prec: int) -> tuple[list[ZetaTerm], dict]:
        """Ladder terms plus the direct/remainder recipe for evaluation."""
        br = self.branch
        if self.is_affine:
            return self._affine_terms(), {}
        if self.is_pure_power:
            return self._power_terms(br.k0), {}
        # general path: anchored expansion with explicit remainder summation
        probe = br.law_at_depth(max(4, br.law.depth))
        anchor = self._anchor(probe)
        if br.generator is not None:
            depth = (
                br.mult_degree
                + 4
                + math.ceil((prec + 16) * math.log(2) / math.log(anchor))
            )
        else:
            depth = br.law.depth
        law, gpolys, terms = self._general_terms(depth, anchor)
        return terms, {"law": law, "gpolys": gpolys, "anchor": anchor, "depth": depth}

    def _exact_at_zero(self) -> Fraction:
        """Value of the branch continuation at s = 0, exact.

        At s = 0 the correction polynomials vanish (g_t(0) = 0 for t >= 1), so
        only the multiplicity ladder survives -- except that terms with
        t = d + 1 hit the ladder pole and leave the finite part g'_{d+1}(0)/e.
        """
        br = self.branch
        depth = br.mult_degree + 1
        law = br.law_at_depth(depth)
        coeffs = tuple(law.coeffs[:depth]) + (Fraction(0),) * max(
            0, depth - len(law.coeffs)
        )
        gpolys = correction_polynomials(coeffs, depth)
        total = Fraction(0)
        for d, md in enumerate(br.mult):
            if md == 0:
                continue
            total += md * hurwitz_exact_nonpositive(d, Fraction(br.k0))
            g_next = gpolys[d + 1]
            if len(g_next) > 1:
                total += md * g_next[1] / law.exponent
        return total

    def direct_and_remainder(
        self, s: mpmath.mpc, prec: int, recipe: dict, tol: mpmath.mpf
    ) -> mpmath.mpc:
        """Direct part below the anchor plus the summed expansion remainder."""
        br = self.branch
        if not recipe:
            return mpmath.mpc(0)
        law: AsymptoticSeries = recipe["law"]
        anchor: int = recipe["anchor"]
        gpolys = recipe["gpolys"]
        with mp.workprec(prec + 16):
            acc = mpmath.mpc(0)
            for k in range(br.k0, anchor):
                lam = br.abs_eigen_mpf(k, prec + 16)
                acc += int(br.mult_at(k)) * mpmath.power(lam, -s)
            # remainder: exact law value minus the truncated ladder
            log_a = law.lead.log_mpf(prec + 16)
            e = mpf_from_fraction(law.exponent, prec + 16)
            gvals = [poly_eval_mpc(g, s) for g in gpolys]
            scale = mpmath.exp(-s * log_a)
            small_streak = 0
            k = anchor
            while True:
                lam = br.abs_eigen_mpf(k, prec + 16)
                kk = mpmath.mpf(k)
                ladder = mpmath.fsum(
                    (gv * mpmath.power(kk, -t) for t, gv in enumerate(gvals)),
                    absolute=False,
                )
                approx = scale * mpmath.power(kk, -e * s) * ladder
                delta = int(br.mult_at(k)) * (mpmath.power(lam, -s) - approx)
                acc += delta
                if abs(delta) < tol / 8:
                    small_streak += 1
                    if small_streak >= 2:
                        break
                else:
                    small_streak = 0
                k += 1
                if k > anchor + 4096:
                    raise InsufficientDepthError(
                        "expansion remainder does not reach the target tolerance; "
                        "raise the law depth or lower the precision"
                    )
        with mp.workprec(prec):
            return +acc


class _HalfContinuation:
    """Continuation of one sign class: branches plus exceptional eigenvalues."""

    def __init__(self, model: SpectralModel, sign: int):
        self.model = model
        self.sign = sign
        self.branches = [
            _BranchContinuation(br) for br in model.branches if br.sign == sign
        ]
        self.exceptional = []
        for lam, mult in model.exceptional:
            lam_sign = None
            if lam.is_exact:
                lam_sign = 1 if lam.real > 0 else -1
            else:
                lam_sign = 1 if lam.to_mpc(64).real > 0 else -1
            if lam_sign == sign:
                self.exceptional.append((lam, mult))

    def validity_floor(self) -> Fraction | None:
        floors = [f for f in (bc.validity_floor() for bc in self.branches) if f is not None]
        return max(floors) if floors else None

    def residues(self, floor_sigma: Fraction) -> dict[Fraction, ResidueValue]:
        out: dict[Fraction, ResidueValue] = {}
        for bc in self.branches:
            for sigma, rv in bc.pole_contributions(floor_sigma).items():
                out.setdefault(sigma, ResidueValue()).add_value(rv)
        return {sig: rv for sig, rv in out.items() if not rv.is_zero()}

    def _exceptional_mpc(self, s: mpmath.mpc, prec: int) -> mpmath.mpc:
        with mp.workprec(prec + 8):
            acc = mpmath.mpc(0)
            for lam, mult in self.exceptional:
                mag = abs(lam.to_mpc(prec + 8))
                acc += mult * mpmath.power(mag, -s)
        with mp.workprec(prec):
            return +acc

    def eval_mpc(
        self, s: mpmath.mpc, prec: int, s_exact: Fraction | None = None
    ) -> tuple[mpmath.mpc, mpmath.mpc]:
        """(finite part, coefficient of 1/(s - s0)) at the evaluation point."""
        with mp.workprec(prec + 16):
            tol = mpmath.mpf(2) ** (-(prec + 8)) * max(1, abs(s))
            value = self._exceptional_mpc(s, prec + 16)
            singular = mpmath.mpc(0)
            for bc in self.branches:
                terms, recipe = bc.eval_terms(prec)
                for term in terms:
                    arg_exact = (
                        term.slope * s_exact + term.shift
                        if s_exact is not None
                        else None
                    )
                    if arg_exact == 1:
                        # simple pole of this ladder term at the evaluation point
                        coeff = term.coeff_mpc(s, prec + 16)
                        dcoeff = term.coeff_deriv_mpc(s, prec + 16)
                        slope = mpf_from_fraction(term.slope, prec + 16)
                        fin = hurwitz_finite_part(term.alpha, prec + 16)
                        singular += coeff / slope
                        value += coeff * fin + dcoeff / slope
                        continue
                    arg = term.slope.numerator * s / term.slope.denominator + \
                        mpf_from_fraction(term.shift, prec + 16)
                    try:
                        z = hurwitz_mpc(arg, term.alpha, prec + 16)
                    except PoleError:
                        raise PoleHitError(
                            f"evaluation point hits a ladder pole (arg {arg})"
                        )
                    value += term.coeff_mpc(s, prec + 16) * z
                value += bc.direct_and_remainder(s, prec, recipe, tol)
        with mp.workprec(prec):
            return +value, +singular

    def eval_exact(self, s: Fraction) -> Optional[Fraction]:
        """Exact rational value, available at s = 0 and at suitable
        non-positive rationals on closed-form branches."""
        total = Fraction(0)
        for lam, mult in self.exceptional:
            if s == 0:
                total += mult
                continue
            if not lam.is_exact or s.denominator != 1 or s > 0:
                return None
            total += mult * abs(lam.real) ** int(-s)
        for bc in self.branches:
            br = bc.branch
            if bc.is_affine:
                terms = bc._affine_terms()
            elif bc.is_pure_power:
                terms = bc._power_terms(br.k0)
            elif s == 0:
                total += bc._exact_at_zero()
                continue
            else:
                return None
            for term in terms:
                arg = term.slope * s + term.shift
                if arg.denominator != 1 or arg > 0:
                    return None
                scale = term.lead.pow(-s).as_fraction()
                if scale is None:
                    return None
                total += (
                    poly_eval_fraction(term.poly, s)
                    * scale
                    * hurwitz_exact_nonpositive(int(-arg), term.alpha)
                )
        return total


# -- public meromorphic data -------------------------------------------------

_ORIENTATIONS = {"one": 0, "minus_one": 2, "phase_up": 1, "phase_down": -1}


class MeromorphicData:
    """Pole/residue table plus evaluator for one spectral function.

    The function is  sum over parts  w(s) * Z_part(s)  with weights drawn from
    {1, -1, e^{i pi s}, e^{-i pi s}}.  Residues are exact wherever the ladder
    reduction is exact and the weight at the pole is Gaussian-rational.
    """

    def __init__(
        self,
        model: SpectralModel,
        parts: tuple[tuple[str, _HalfContinuation], ...],
        kind: str,
    ):
        self.model = model
        self.parts = parts
        self.kind = kind
        self._tables: dict[Fraction, dict] = {}

    # -- structure ---------------------------------------------------------

    @property
    def default_floor(self) -> int:
        return -2 * self.model.order

    def validity_floor(self) -> Fraction | None:
        floors = [
            f for f in (half.validity_floor() for _, half in self.parts) if f is not None
        ]
        return max(floors) if floors else None

    def _half(self, which: str) -> _HalfContinuation | None:
        for weight, half in self.parts:
            if (which == "plus" and half.sign > 0) or (
                which == "minus" and half.sign < 0
            ):
                return half
        return None

    def pole_table(self, floor_k: int | None = None) -> dict[Fraction, CombinedResidue]:
        """Poles with nonzero residue at sigma = k/m for k >= floor_k."""
        if floor_k is None:
            floor_k = self.default_floor
        floor_sigma = Fraction(floor_k, self.model.order)
        if floor_sigma in self._tables:
            return self._tables[floor_sigma]
        plus: dict[Fraction, ResidueValue] = {}
        minus: dict[Fraction, ResidueValue] = {}
        orientation = 0
        for weight, half in self.parts:
            res = half.residues(floor_sigma)
            if half.sign > 0:
                if _ORIENTATIONS[weight] != 0:
                    raise ModelError("positive part must carry unit weight")
                plus = res
            else:
                orientation = _ORIENTATIONS[weight]
                minus = res
        table: dict[Fraction, CombinedResidue] = {}
        for sigma in sorted(set(plus) | set(minus), reverse=True):
            entry = CombinedResidue(
                sigma,
                plus.get(sigma, ResidueValue()),
                minus.get(sigma, ResidueValue()),
                orientation,
            )
            if not entry.is_zero():
                table[sigma] = entry
        self._tables[floor_sigma] = table
        return table

    @property
    def poles(self) -> dict[Fraction, ExactScalar]:
        return {
            sigma: entry.as_scalar()
            for sigma, entry in self.pole_table().items()
        }

    def residue(self, sigma: RationalLike, floor_k: int | None = None) -> CombinedResidue:
        sigma = Fraction(sigma)
        if floor_k is None:
            floor_k = min(self.default_floor, math.floor(sigma * self.model.order))
        table = self.pole_table(floor_k)
        if sigma in table:
            return table[sigma]
        empty = CombinedResidue(sigma, ResidueValue(), ResidueValue(), 0)
        return empty

    # -- evaluation ----------------------------------------------------------

    def _weight_mpc(self, weight: str, s: mpmath.mpc, prec: int) -> tuple[mpmath.mpc, mpmath.mpc]:
        """(w(s), w'(s)) for the part weight."""
        with mp.workprec(prec):
            o = _ORIENTATIONS[weight]
            if o == 0:
                return mpmath.mpc(1), mpmath.mpc(0)
            if o == 2:
                return mpmath.mpc(-1), mpmath.mpc(0)
            w = mpmath.exp(o * 1j * mpmath.pi * s)
            return w, o * 1j * mpmath.pi * w

    def _weight_exact(self, weight: str, s: Fraction) -> Optional[tuple[Fraction, Fraction]]:
        o = _ORIENTATIONS[weight]
        if o == 0:
            return (Fraction(1), Fraction(0))
        if o == 2:
            return (Fraction(-1), Fraction(0))
        return unit_phase_exact(s, o)

    def evaluate(self, s, prec: int = DEFAULT_PRECISION) -> ExactScalar:
        """Value at a regular point; exact when every contribution is exact."""
        s_scalar = ExactScalar.coerce(s)
        s_exact: Fraction | None = None
        if s_scalar.is_exact and s_scalar.imag == 0:
            s_exact = s_scalar.real
        if s_exact is not None:
            entry = self.residue(s_exact)
            if not entry.is_zero():
                raise PoleHitError(f"{self.kind} has a pole at s = {s_exact}")
            exact = self._evaluate_exact(s_exact)
            if exact is not None:
                return exact
        s_mpc = s_scalar.to_mpc(prec + 16)
        total = mpmath.mpc(0)
        singular_sum = mpmath.mpc(0)
        with mp.workprec(prec + 16):
            for weight, half in self.parts:
                w, dw = self._weight_mpc(weight, s_mpc, prec + 16)
                val, sing = half.eval_mpc(s_mpc, prec, s_exact=s_exact)
                total += w * val + dw * sing
                singular_sum += w * sing
            scale = max(mpmath.mpf(1), abs(total))
            if abs(singular_sum) > scale * mpmath.mpf(2) ** (-(prec // 2)):
                raise PoleHitError(
                    f"{self.kind} is singular at s = {s_scalar.serialize()}"
                )
            err = scale * mpmath.mpf(2) ** (-(prec + 2))
        return ExactScalar.bigfloat(total, prec, err=err)

    def _evaluate_exact(self, s: Fraction) -> Optional[ExactScalar]:
        acc_re, acc_im = Fraction(0), Fraction(0)
        for weight, half in self.parts:
            w = self._weight_exact(weight, s)
            if w is None:
                return None
            v = half.eval_exact(s)
            if v is None:
                return None
            acc_re += w[0] * v
            acc_im += w[1] * v
        return ExactScalar(acc_re, acc_im)

    def __repr__(self):
        return f"MeromorphicData({self.kind}, model={self.model.name or 'anonymous'})"


# -- module-level operations --------------------------------------------------


def half_zeta(model: SpectralModel, sign: int) -> MeromorphicData:
    """Continuation of the Dirichlet series over one sign class of the spectrum."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    half = _HalfContinuation(model, sign)
    kind = "zeta_plus" if sign > 0 else "zeta_minus"
    return MeromorphicData(model, (("one", half),), kind)


@dataclass(frozen=True)
class SpectralFunctions:
    """The four meromorphic spectral functions of one model."""

    zeta_up: MeromorphicData
    zeta_down: MeromorphicData
    zeta_abs: MeromorphicData
    eta: MeromorphicData

    def __getitem__(self, name: str) -> MeromorphicData:
        if name not in FUNCTION_NAMES:
            raise KeyError(f"unknown spectral function {name!r}")
        return getattr(self, name)


def spectral_functions(model: SpectralModel) -> SpectralFunctions:
    """zeta_abs = Z+ + Z-, eta = Z+ - Z-, zeta_up/down = Z+ + e^{+-i pi s} Z-."""
    plus = _HalfContinuation(model, 1)
    minus = _HalfContinuation(model, -1)
    return SpectralFunctions(
        zeta_up=MeromorphicData(model, (("one", plus), ("phase_up", minus)), "zeta_up"),
        zeta_down=MeromorphicData(
            model, (("one", plus), ("phase_down", minus)), "zeta_down"
        ),
        zeta_abs=MeromorphicData(model, (("one", plus), ("one", minus)), "zeta_abs"),
        eta=MeromorphicData(model, (("one", plus), ("minus_one", minus)), "eta"),
    )


@dataclass(frozen=True)
class AdmissibleResidues:
    """Residues of all four functions on the admissible grid, plus eta(0)."""

    entries: dict[Fraction, dict[str, CombinedResidue]]
    eta_at_zero: ExactScalar
    floor: int
    model: SpectralModel


def residues_at_admissible(model: SpectralModel, floor: int) -> AdmissibleResidues:
    """Enumerate sigma = k/m for floor <= k <= n, k != 0, with all residues."""
    if floor > model.dimension:
        raise ValueError("floor must not exceed the dimension")
    fns = spectral_functions(model)
    tables = {name: fns[name].pole_table(floor) for name in FUNCTION_NAMES}
    entries: dict[Fraction, dict[str, CombinedResidue]] = {}
    for k in range(floor, model.dimension + 1):
        if k == 0:
            continue
        sigma = Fraction(k, model.order)
        entries[sigma] = {
            name: tables[name].get(
                sigma, CombinedResidue(sigma, ResidueValue(), ResidueValue(), 0)
            )
            for name in FUNCTION_NAMES
        }
    return AdmissibleResidues(
        entries=entries,
        eta_at_zero=fns.eta.evaluate(0),
        floor=floor,
        model=model,
    )


def evaluate(fn: MeromorphicData, s, prec: int = DEFAULT_PRECISION) -> ExactScalar:
    """Evaluate a spectral function at a regular point s."""
    return fn.evaluate(s, prec)


def set_law_depth(model: SpectralModel, depth: int) -> SpectralModel:
    """Re-express every branch law at the given truncation depth.

    Branches with a generating recipe re-expand; fixed laws may only shrink
    (deepening an unknown tail is an :class:`InsufficientDepthError`).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    branches = []
    for br in model.branches:
        if br.generator is not None:
            law = br.generator.series(depth).abs()
        elif br.law.terminating or br.law.depth >= depth:
            law = br.law.truncated(depth)
        else:
            raise InsufficientDepthError(
                f"law stored to depth {br.law.depth} cannot be deepened to "
                f"{depth} without its generating recipe"
            )
        branches.append(Branch(br.sign, br.mult, law, br.k0, br.generator))
    return SpectralModel(
        branches=tuple(branches),
        exceptional=model.exceptional,
        kernel_dim=model.kernel_dim,
        order=model.order,
        dimension=model.dimension,
        name=model.name,
    )


def direct_spectral_sum(
    model: SpectralModel,
    function: str,
    s,
    cutoff: RationalLike,
    prec: int = DEFAULT_PRECISION,
) -> mpmath.mpc:
    """Truncated sum over all eigenvalues with |lambda| <= cutoff (oracle).

    Convergent-half-plane oracle for the evaluator; complex powers use the
    branch weights e^{+-i pi s} on the negative part, matching the
    corresponding continuation convention.
    """
    if function not in FUNCTION_NAMES:
        raise ValueError(f"unknown function {function!r}")
    cutoff = Fraction(cutoff)
    s_mpc = ExactScalar.coerce(s).to_mpc(prec + 8)
    with mp.workprec(prec + 8):
        if function == "zeta_up":
            wminus = mpmath.exp(1j * mpmath.pi * s_mpc)
        elif function == "zeta_down":
            wminus = mpmath.exp(-1j * mpmath.pi * s_mpc)
        elif function == "eta":
            wminus = mpmath.mpc(-1)
        else:
            wminus = mpmath.mpc(1)
        acc = mpmath.mpc(0)
        cutoff_f = mpf_from_fraction(cutoff, prec + 8)
        for br in model.branches:
            k = br.k0
            while True:
                lam = br.abs_eigen_mpf(k, prec + 8)
                if lam > cutoff_f:
                    break
                contrib = int(br.mult_at(k)) * mpmath.power(lam, -s_mpc)
                acc += contrib if br.sign > 0 else wminus * contrib
                k += 1
        for lam, mult in model.exceptional:
            v = lam.to_mpc(prec + 8).real
            if abs(v) <= cutoff_f:
                contrib = mult * mpmath.power(abs(v), -s_mpc)
                acc += contrib if v > 0 else wminus * contrib
    with mp.workprec(prec):
        return +acc

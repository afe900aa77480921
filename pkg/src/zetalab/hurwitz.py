"""Hurwitz/Riemann zeta engine.

Exact values at non-positive integer arguments through Bernoulli polynomials,
the exact residue 1 at the lone pole s = 1, and Euler--Maclaurin evaluation
with explicit tail control everywhere else (complex s included).

The summation index may start anywhere:  sum_{k >= k0} (k + x)^{-s}  is
``zeta_h(s, k0 + x)``, which is how the spectral engine consumes this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp

from .scalars import DEFAULT_PRECISION, ExactScalar, bernoulli_poly, mpf_from_fraction

ScalarLike = Union[int, Fraction, complex, ExactScalar, mpmath.mpf, mpmath.mpc]


class PoleError(ValueError):
    """The requested point is the pole s = 1."""


@dataclass(frozen=True)
class HurwitzValue:
    """A computed zeta value: argument, shift, value, and exactness flag."""

    s: ExactScalar
    alpha: Fraction
    value: ExactScalar
    exact: bool

    def __str__(self):
        tag = "exact" if self.exact else "approx"
        return f"zeta_H({self.s}, {self.alpha}) = {self.value} [{tag}]"


def _coerce_s(s: ScalarLike) -> ExactScalar:
    return ExactScalar.coerce(s)


def _exact_nonpositive_int(s: ExactScalar) -> int | None:
    if s.is_exact and s.imag == 0 and s.real.denominator == 1 and s.real <= 0:
        return -int(s.real)
    return None


def hurwitz_residue(alpha: Fraction | int) -> ExactScalar:
    """Residue of zeta_H(s, alpha) at s = 1; exactly 1 for every alpha > 0."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return ExactScalar(1)


def hurwitz_exact_nonpositive(n: int, alpha: Fraction) -> Fraction:
    """zeta_H(-n, alpha) = -B_{n+1}(alpha) / (n+1), exact."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return -bernoulli_poly(n + 1)(alpha) / (n + 1)


def _euler_maclaurin(s: mpmath.mpc, alpha: Fraction, prec: int) -> tuple[mpmath.mpc, mpmath.mpf]:
    """Evaluate zeta_H(s, alpha) at ~prec bits; returns (value, tail bound)."""
    wp = prec + 24
    with mp.workprec(wp):
        a = mpf_from_fraction(alpha, wp)
        s = mpmath.mpc(s)
        sigma = s.real
        abs_s = abs(s)
        target = mpmath.mpf(2) ** (-(prec + 10))
        N = max(8, int(0.35 * wp), int(2 * abs_s) + 2)
        for _attempt in range(6):
            base = a + N
            main = mpmath.fsum((a + k) ** (-s) for k in range(N))
            tail = base ** (1 - s) / (s - 1) + base ** (-s) / 2
            scale = max(mpmath.mpf(1), abs(main + tail))
            tol = target * scale
            # correction terms  B_{2j}/(2j)! * rf(s, 2j-1) * base^{1-s-2j}
            rising = s  # rf(s, 1)
            power = base ** (-s - 1)
            corr = mpmath.mpc(0)
            prev_mag = mpmath.inf
            j = 1
            converged = False
            while j <= 4 * wp:
                term = mp.bernoulli(2 * j) / (
                    mpmath.factorial(2 * j)
                ) * rising * power
                mag = abs(term)
                if mag > prev_mag and mag > tol:
                    break  # diverging regime: restart with larger N
                corr += term
                if sigma + 2 * j + 1 > 0:
                    bound = mag * abs(s + 2 * j + 1) / (sigma + 2 * j + 1)
                    if bound < tol:
                        converged = True
                        break
                prev_mag = mag
                rising *= (s + 2 * j - 1) * (s + 2 * j)
                power /= base * base
                j += 1
            if converged:
                value = main + tail + corr
                with mp.workprec(prec):
                    return +value, +bound
            N *= 2
    raise ArithmeticError(
        f"Euler-Maclaurin failed to reach 2^-{prec + 10} for s={s}, alpha={alpha}"
    )


def hurwitz_mpc(s: ScalarLike, alpha: Fraction, prec: int = DEFAULT_PRECISION) -> mpmath.mpc:
    """Numeric zeta_H(s, alpha) as an mpc (internal fast path)."""
    s = _coerce_s(s)
    n = _exact_nonpositive_int(s)
    if n is not None:
        q = hurwitz_exact_nonpositive(n, Fraction(alpha))
        with mp.workprec(prec):
            return mpmath.mpc(mpf_from_fraction(q, prec))
    value, _ = _euler_maclaurin(s.to_mpc(prec + 24), Fraction(alpha), prec)
    return value


def hurwitz_value(
    s: ScalarLike, alpha: Fraction | int, prec: int = DEFAULT_PRECISION
) -> HurwitzValue:
    """zeta_H(s, alpha) for rational alpha > 0.

    Exact (rational) at integer s <= 0 via Bernoulli polynomials; elsewhere a
    big float computed by Euler--Maclaurin with the first omitted correction
    term bounded below 2^-(prec+10) relative to the value.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    s = _coerce_s(s)
    if s == ExactScalar(1):
        raise PoleError("zeta_H has its pole at s = 1")
    n = _exact_nonpositive_int(s)
    if n is not None:
        q = hurwitz_exact_nonpositive(n, alpha)
        return HurwitzValue(s, alpha, ExactScalar(q), True)
    value, bound = _euler_maclaurin(s.to_mpc(prec + 24), alpha, prec)
    return HurwitzValue(
        s, alpha, ExactScalar.bigfloat(value, prec, err=bound), False
    )


def riemann_zeta(s: ScalarLike, prec: int = DEFAULT_PRECISION) -> HurwitzValue:
    """zeta(s) = zeta_H(s, 1)."""
    return hurwitz_value(s, Fraction(1), prec)


def truncated_zeta(
    s: ScalarLike, k0: int, prec: int = DEFAULT_PRECISION
) -> HurwitzValue:
    """sum_{k >= k0} k^{-s} = zeta(s) - sum_{k < k0} k^{-s}, as zeta_H(s, k0)."""
    if k0 < 1:
        raise ValueError("k0 must be a positive integer")
    return hurwitz_value(s, Fraction(k0), prec)


def hurwitz_finite_part(alpha: Fraction, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Finite part of zeta_H(s, alpha) at the pole:  lim (zeta_H - 1/(s-1)).

    Equals -digamma(alpha); used when simple poles of individual terms cancel
    in a combined spectral function.
    """
    with mp.workprec(prec + 8):
        val = -mpmath.digamma(mpf_from_fraction(Fraction(alpha), prec + 8))
    with mp.workprec(prec):
        return +val

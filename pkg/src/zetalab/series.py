"""Algebra of truncated generalized expansions in a branch index k.

A series represents  sign * A * k^e * (1 + sum_{j=1..T} b_j k^{-j})  with
A > 0 carried as an exact product of prime powers (so non-integer real powers
of rational leading coefficients stay symbolic until numeric evaluation),
a rational exponent e, and exact rational correction coefficients.

Closure is exactly what the spectral maps need: addition along integer-step
exponent ladders, rational real powers, and the composed eigenvalue maps
(shift, scale, signed inverse-power correction, absolute value, signed
powers/roots).  Operations never report more correction terms than their
inputs justify; a series built from terminating data is flagged so callers
may re-expand it to any depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

import mpmath
from mpmath import mp

from .scalars import DEFAULT_PRECISION

RationalLike = Union[int, Fraction]


class LadderError(ValueError):
    """Exponent ladders of two series differ by a non-integer."""


class RepresentationError(ValueError):
    """The result leaves the representable coefficient family."""


# -- exact positive radical products -----------------------------------


def _factorize(n: int) -> dict[int, int]:
    if n <= 0:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class RadicalProduct:
    """A positive real of the form prod p_i^{e_i}, p_i prime, e_i rational.

    Canonical (each prime appears once, zero exponents dropped), so equality
    is decidable and rationality is just "all exponents integral".
    """

    __slots__ = ("_exps",)

    def __init__(self, exps: dict[int, Fraction]):
        self._exps = {p: e for p, e in sorted(exps.items()) if e != 0}

    @classmethod
    def one(cls) -> "RadicalProduct":
        return cls({})

    @classmethod
    def from_rational(cls, q: RationalLike) -> "RadicalProduct":
        q = Fraction(q)
        if q <= 0:
            raise ValueError("radical products are positive")
        exps: dict[int, Fraction] = {}
        for p, e in _factorize(q.numerator).items():
            exps[p] = exps.get(p, Fraction(0)) + e
        for p, e in _factorize(q.denominator).items():
            exps[p] = exps.get(p, Fraction(0)) - e
        return cls(exps)

    def __mul__(self, other: "RadicalProduct") -> "RadicalProduct":
        exps = dict(self._exps)
        for p, e in other._exps.items():
            exps[p] = exps.get(p, Fraction(0)) + e
        return RadicalProduct(exps)

    def __truediv__(self, other: "RadicalProduct") -> "RadicalProduct":
        return self * other.pow(Fraction(-1))

    def pow(self, q: RationalLike) -> "RadicalProduct":
        q = Fraction(q)
        return RadicalProduct({p: e * q for p, e in self._exps.items()})

    def as_fraction(self) -> Optional[Fraction]:
        """Exact rational value, or None if genuinely irrational."""
        out = Fraction(1)
        for p, e in self._exps.items():
            if e.denominator != 1:
                return None
            out *= Fraction(p) ** e.numerator
        return out

    def split(self) -> tuple[Fraction, "RadicalProduct"]:
        """Factor into (rational part, radical with exponents in [0,1))."""
        rat = Fraction(1)
        frac_exps: dict[int, Fraction] = {}
        for p, e in self._exps.items():
            whole = math.floor(e)
            rest = e - whole
            rat *= Fraction(p) ** whole
            if rest:
                frac_exps[p] = rest
        return rat, RadicalProduct(frac_exps)

    def to_mpf(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
        with mp.workprec(prec + 8):
            acc = mpmath.mpf(1)
            for p, e in self._exps.items():
                acc *= mpmath.power(p, mpmath.mpf(e.numerator) / e.denominator)
        with mp.workprec(prec):
            return +acc

    def log_mpf(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
        with mp.workprec(prec):
            acc = mpmath.mpf(0)
            for p, e in self._exps.items():
                acc += mpmath.log(p) * mpmath.mpf(e.numerator) / e.denominator
            return +acc

    def __eq__(self, other):
        return isinstance(other, RadicalProduct) and self._exps == other._exps

    def __hash__(self):
        return hash(tuple(self._exps.items()))

    def __repr__(self):
        if not self._exps:
            return "RadicalProduct(1)"
        parts = "*".join(f"{p}^{e}" for p, e in self._exps.items())
        return f"RadicalProduct({parts})"


# -- the series type ----------------------------------------------------


class AsymptoticSeries:
    """sign * A * k^e * (1 + sum b_j k^-j), truncated at depth T = len(b).

    ``terminating=True`` records that every coefficient beyond the stored ones
    is exactly zero, so re-expansions to larger depth are justified.
    """

    __slots__ = ("sign", "lead", "exponent", "coeffs", "terminating")

    def __init__(
        self,
        sign: int,
        lead: RadicalProduct | RationalLike,
        exponent: RationalLike,
        coeffs: Iterable[RationalLike] = (),
        terminating: bool = False,
    ):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not isinstance(lead, RadicalProduct):
            lead = RadicalProduct.from_rational(lead)
        self.sign = sign
        self.lead = lead
        self.exponent = Fraction(exponent)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if terminating:
            while coeffs and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
        self.coeffs = coeffs
        self.terminating = terminating

    # -- basics ---------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    @classmethod
    def constant(cls, value: RationalLike) -> "AsymptoticSeries":
        value = Fraction(value)
        if value == 0:
            raise ValueError("the zero law is not representable")
        sign = 1 if value > 0 else -1
        return cls(sign, RadicalProduct.from_rational(abs(value)), 0, (), True)

    @classmethod
    def power_law(cls, exponent: RationalLike, lead: RationalLike = 1) -> "AsymptoticSeries":
        return cls(1, RadicalProduct.from_rational(lead), exponent, (), True)

    def coeff(self, j: int) -> Fraction:
        if j == 0:
            return Fraction(1)
        if j <= len(self.coeffs):
            return self.coeffs[j - 1]
        if self.terminating:
            return Fraction(0)
        raise RepresentationError(f"coefficient b_{j} beyond justified depth {self.depth}")

    def abs(self) -> "AsymptoticSeries":
        return AsymptoticSeries(1, self.lead, self.exponent, self.coeffs, self.terminating)

    def negate(self) -> "AsymptoticSeries":
        return AsymptoticSeries(-self.sign, self.lead, self.exponent, self.coeffs, self.terminating)

    def scaled(self, factor: RationalLike) -> "AsymptoticSeries":
        factor = Fraction(factor)
        if factor == 0:
            raise ValueError("cannot scale a law to zero")
        sign = self.sign if factor > 0 else -self.sign
        lead = self.lead * RadicalProduct.from_rational(abs(factor))
        return AsymptoticSeries(sign, lead, self.exponent, self.coeffs, self.terminating)

    def truncated(self, depth: int) -> "AsymptoticSeries":
        if depth >= len(self.coeffs):
            return self
        return AsymptoticSeries(
            self.sign, self.lead, self.exponent, self.coeffs[:depth], False
        )

    def evaluate(self, k: RationalLike, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
        """Signed numeric value of the truncated series at index k."""
        k = Fraction(k)
        with mp.workprec(prec + 8):
            kk = mpmath.mpf(k.numerator) / k.denominator
            # Horner in 1/k over the correction polynomial
            acc = mpmath.mpf(0)
            for bj in reversed(self.coeffs):
                acc = (acc + mpmath.mpf(bj.numerator) / bj.denominator) / kk
            acc = 1 + acc
            e = self.exponent
            val = (
                self.lead.to_mpf(prec + 8)
                * mpmath.power(kk, mpmath.mpf(e.numerator) / e.denominator)
                * acc
            )
        with mp.workprec(prec):
            return +(self.sign * val)

    def __eq__(self, other):
        return (
            isinstance(other, AsymptoticSeries)
            and self.sign == other.sign
            and self.lead == other.lead
            and self.exponent == other.exponent
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        s = "+" if self.sign > 0 else "-"
        return (
            f"AsymptoticSeries({s}{self.lead!r} k^{self.exponent}, "
            f"b={[str(c) for c in self.coeffs]}, "
            f"{'exact' if self.terminating else f'T={self.depth}'})"
        )

    def serialize(self) -> dict:
        rat = self.lead.as_fraction()
        lead = (
            f"{rat.numerator}/{rat.denominator}"
            if rat is not None
            else {str(p): str(e) for p, e in self.lead._exps.items()}
        )
        return {
            "sign": self.sign,
            "A": lead,
            "e": str(self.exponent),
            "b": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "terminating": self.terminating,
        }

    @classmethod
    def deserialize(cls, data: dict) -> "AsymptoticSeries":
        lead = data["A"]
        if isinstance(lead, dict):
            rad = RadicalProduct({int(p): Fraction(e) for p, e in lead.items()})
        else:
            rad = RadicalProduct.from_rational(Fraction(lead))
        return cls(
            int(data["sign"]),
            rad,
            Fraction(data["e"]),
            tuple(Fraction(c) for c in data.get("b", ())),
            bool(data.get("terminating", False)),
        )


# -- operations ----------------------------------------------------------


def series_add(u: AsymptoticSeries, v: AsymptoticSeries) -> AsymptoticSeries:
    """Signed sum, renormalized to canonical leading form.

    Requires integer exponent offset between the two ladders.  Leading-order
    cancellation drops to the first surviving coefficient; total cancellation
    to the justified depth is an error (the zero law is not representable).
    """
    if u.exponent < v.exponent:
        return series_add(v, u)
    delta = u.exponent - v.exponent
    if delta.denominator != 1:
        raise LadderError(
            f"exponent mismatch {u.exponent} vs {v.exponent} is not an integer step"
        )
    delta = int(delta)
    ratio = (v.lead / u.lead).as_fraction()
    if ratio is None:
        raise RepresentationError(
            "leading coefficients are incommensurable; sum leaves the family"
        )
    # depth of the combined coefficient ladder measured from k^{e_u}
    if u.terminating and v.terminating:
        span = max(len(u.coeffs), delta + len(v.coeffs))
        terminating = True
    else:
        spans = []
        if not u.terminating:
            spans.append(len(u.coeffs))
        if not v.terminating:
            spans.append(delta + len(v.coeffs))
        span = min(spans)
        terminating = False
    w = []
    for j in range(span + 1):
        acc = u.sign * (u.coeff(j) if (u.terminating or j <= len(u.coeffs)) else Fraction(0))
        if j >= delta:
            acc += v.sign * ratio * v.coeff(j - delta)
        w.append(acc)
    # renormalize: find the first nonzero order
    lead_idx = next((i for i, c in enumerate(w) if c != 0), None)
    if lead_idx is None:
        raise RepresentationError(
            "cancellation below the truncation depth; the sum is not representable"
        )
    pivot = w[lead_idx]
    sign = 1 if pivot > 0 else -1
    lead = u.lead * RadicalProduct.from_rational(abs(pivot))
    coeffs = tuple(c / pivot for c in w[lead_idx + 1:])
    if not terminating:
        # coefficients are justified down to absolute order e_u - span
        keep = span - lead_idx
        coeffs = coeffs[:keep]
    return AsymptoticSeries(sign, lead, u.exponent - lead_idx, coeffs, terminating)


def _correction_power_table(coeffs: tuple[Fraction, ...], depth: int) -> list[list[Fraction]]:
    """Truncated coefficient lists of u^r for r = 0..depth, u = sum b_j x^j."""
    base = [Fraction(0)] * (depth + 1)
    for j, b in enumerate(coeffs[:depth], start=1):
        base[j] = b
    table = [[Fraction(1)] + [Fraction(0)] * depth]
    cur = table[0]
    for _ in range(depth):
        nxt = [Fraction(0)] * (depth + 1)
        for i, ci in enumerate(cur):
            if ci == 0:
                continue
            for j in range(1, depth + 1 - i):
                if base[j]:
                    nxt[i + j] += ci * base[j]
        table.append(nxt)
        cur = nxt
    return table


def binomial_series_coefficients(
    coeffs: tuple[Fraction, ...], p: Fraction, depth: int
) -> list[Fraction]:
    """Coefficients of (1 + sum b_j x^j)^p through x^depth, exact."""
    table = _correction_power_table(coeffs, depth)
    out = [Fraction(0)] * (depth + 1)
    binom = Fraction(1)
    for r in range(depth + 1):
        if r > 0:
            binom *= (p - (r - 1)) / r
            if binom == 0:
                break  # p is a non-negative integer < r: the binomial terminates
        row = table[r]
        for t in range(r, depth + 1):
            if row[t]:
                out[t] += binom * row[t]
    return out


def series_pow(
    u: AsymptoticSeries, p: RationalLike, depth: int | None = None
) -> AsymptoticSeries:
    """u^p for exact rational p; u must carry positive sign.

    The correction part is the binomial expansion of (1+u)^p to the input's
    depth (callers holding terminating data may request more via ``depth``).
    """
    if u.sign != 1:
        raise ValueError("series_pow expects a positive law; take abs() first")
    p = Fraction(p)
    if depth is None:
        depth = len(u.coeffs)
    if not u.coeffs and u.terminating:
        # pure power law: (A k^e)^p exactly
        return AsymptoticSeries(1, u.lead.pow(p), u.exponent * p, (), True)
    terminating = u.terminating and p.denominator == 1 and p >= 0
    if terminating:
        depth = max(depth, len(u.coeffs) * max(1, p.numerator))
    elif not u.terminating:
        depth = min(depth, len(u.coeffs))
    out = binomial_series_coefficients(u.coeffs, p, depth)
    return AsymptoticSeries(
        1, u.lead.pow(p), u.exponent * p, tuple(out[1:]), terminating
    )


# -- spectral maps --------------------------------------------------------


@dataclass(frozen=True)
class SpectralMapSpec:
    """One member of the closed family of eigenvalue maps.

    kind: "shift" (params a), "scale" (params r), "add_signed_inverse_power"
    (params c, n: lambda -> lambda + c sign(lambda) |lambda|^{-n}), "abs",
    "signed_power" (params p: lambda -> sign(lambda) |lambda|^p).
    """

    kind: str
    a: Fraction | None = None
    r: Fraction | None = None
    c: Fraction | None = None
    n: int | None = None
    p: Fraction | None = None

    @classmethod
    def shift(cls, a: RationalLike) -> "SpectralMapSpec":
        return cls("shift", a=Fraction(a))

    @classmethod
    def scale(cls, r: RationalLike) -> "SpectralMapSpec":
        return cls("scale", r=Fraction(r))

    @classmethod
    def add_signed_inverse_power(cls, c: RationalLike, n: int) -> "SpectralMapSpec":
        return cls("add_signed_inverse_power", c=Fraction(c), n=int(n))

    @classmethod
    def absolute(cls) -> "SpectralMapSpec":
        return cls("abs")

    @classmethod
    def signed_power(cls, p: RationalLike) -> "SpectralMapSpec":
        return cls("signed_power", p=Fraction(p))

    def serialize(self) -> dict:
        data = {"kind": self.kind}
        for f in ("a", "r", "c", "p"):
            v = getattr(self, f)
            if v is not None:
                data[f] = str(v)
        if self.n is not None:
            data["n"] = self.n
        return data

    @classmethod
    def deserialize(cls, data: dict) -> "SpectralMapSpec":
        kw = {}
        for f in ("a", "r", "c", "p"):
            if f in data:
                kw[f] = Fraction(data[f])
        if "n" in data:
            kw["n"] = int(data["n"])
        return cls(data["kind"], **kw)


def series_compose_map(
    u: AsymptoticSeries, map_spec: SpectralMapSpec, depth: int | None = None
) -> AsymptoticSeries:
    """Apply an eigenvalue map to a signed law, re-expanded to justified depth."""
    kind = map_spec.kind
    if kind == "shift":
        if map_spec.a == 0:
            return u
        return series_add(u, AsymptoticSeries.constant(map_spec.a))
    if kind == "scale":
        return u.scaled(map_spec.r)
    if kind == "abs":
        return u.abs()
    if kind == "signed_power":
        powed = series_pow(u.abs(), map_spec.p, depth=depth)
        return powed if u.sign > 0 else powed.negate()
    if kind == "add_signed_inverse_power":
        if map_spec.c == 0:
            return u
        inv = series_pow(u.abs(), Fraction(-map_spec.n), depth=depth)
        correction = inv.scaled(map_spec.c)
        if u.sign < 0:
            correction = correction.negate()
        return series_add(u, correction)
    raise ValueError(f"unknown spectral map kind: {kind!r}")

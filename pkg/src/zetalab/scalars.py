"""Exact scalar arithmetic with a high-precision complex fallback.

The coefficient substrate for everything else in the package.  A scalar is
either exact -- a rational or a Gaussian rational, stored as a pair of
``fractions.Fraction`` in canonical reduced form -- or a big-float complex
number pinned to an explicit working precision (mpmath), carrying a heuristic
error radius.  Arithmetic between two exact operands always stays exact;
mixing an exact operand with a big float produces a big float at the float's
precision.

Also home to exact Bernoulli numbers and Bernoulli polynomials, which feed the
special values of the Hurwitz zeta engine.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import Union

import mpmath
from mpmath import mp

DEFAULT_PRECISION = 256

RationalLike = Union[int, Fraction]


class DomainError(ArithmeticError):
    """Raised for operations outside a scalar operation's domain."""


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def mpf_from_fraction(q: Fraction, prec: int) -> mpmath.mpf:
    """Round an exact rational to an mpf at the given binary precision."""
    with mp.workprec(prec):
        return mpmath.mpf(q.numerator) / q.denominator


def _ulp(value: mpmath.mpc, prec: int) -> mpmath.mpf:
    # one unit in the last place of the result magnitude, with a tiny floor
    # so that exact zeros do not pretend to be error-free
    mag = abs(value)
    return (mag + mpmath.mpf(2) ** (-4 * prec)) * mpmath.mpf(2) ** (1 - prec)


class ExactScalar:
    """Rational / Gaussian-rational scalar with big-float complex fallback.

    Immutable.  The variant is exposed through :attr:`kind`, one of
    ``"rational"``, ``"gaussian"`` or ``"bigfloat"``.
    """

    __slots__ = ("_re", "_im", "_mp", "_prec", "_err")

    def __init__(self, re, im=0, *, _mp=None, _prec=None, _err=None):
        if _mp is not None:
            self._re = None
            self._im = None
            self._mp = _mp
            self._prec = _prec
            self._err = _err
        else:
            self._re = _as_fraction(re)
            self._im = _as_fraction(im)
            self._mp = None
            self._prec = None
            self._err = None

    # -- constructors -------------------------------------------------

    @classmethod
    def rational(cls, p: RationalLike, q: RationalLike = 1) -> "ExactScalar":
        return cls(Fraction(_as_fraction(p), _as_fraction(q)))

    @classmethod
    def gaussian(cls, re: RationalLike, im: RationalLike) -> "ExactScalar":
        return cls(re, im)

    @classmethod
    def bigfloat(cls, value, prec: int = DEFAULT_PRECISION, err=0) -> "ExactScalar":
        with mp.workprec(prec):
            v = mpmath.mpc(value)
            e = mpmath.mpf(err)
        return cls(0, _mp=v, _prec=prec, _err=e)

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, (float, complex, mpmath.mpf, mpmath.mpc)):
            return cls.bigfloat(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")

    # -- introspection ------------------------------------------------

    @property
    def kind(self) -> str:
        if self._mp is not None:
            return "bigfloat"
        return "rational" if self._im == 0 else "gaussian"

    @property
    def is_exact(self) -> bool:
        return self._mp is None

    @property
    def precision(self) -> int | None:
        return self._prec

    @property
    def error_radius(self):
        return self._err if self._mp is not None else mpmath.mpf(0)

    @property
    def real(self) -> Fraction:
        if not self.is_exact:
            raise DomainError("real part as Fraction requires an exact scalar")
        return self._re

    @property
    def imag(self) -> Fraction:
        if not self.is_exact:
            raise DomainError("imag part as Fraction requires an exact scalar")
        return self._im

    def as_fraction(self) -> Fraction:
        if self.kind != "rational":
            raise DomainError(f"{self.kind} scalar is not a plain rational")
        return self._re

    def to_mpc(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpc:
        with mp.workprec(prec):
            if self.is_exact:
                return mpmath.mpc(
                    mpmath.mpf(self._re.numerator) / self._re.denominator,
                    mpmath.mpf(self._im.numerator) / self._im.denominator,
                )
            return mpmath.mpc(self._mp)

    def is_zero(self) -> bool:
        if self.is_exact:
            return self._re == 0 and self._im == 0
        return self._mp == 0

    # -- arithmetic ---------------------------------------------------

    def _float_pair(self, other: "ExactScalar"):
        prec = max(p for p in (self._prec, other._prec) if p is not None)
        with mp.workprec(prec):
            a = self.to_mpc(prec)
            b = other.to_mpc(prec)
            ea = self._err if self._err is not None else _ulp(a, prec)
            eb = other._err if other._err is not None else _ulp(b, prec)
        return a, b, ea, eb, prec

    def __add__(self, other):
        other = ExactScalar.coerce(other)
        if self.is_exact and other.is_exact:
            return ExactScalar(self._re + other._re, self._im + other._im)
        a, b, ea, eb, prec = self._float_pair(other)
        with mp.workprec(prec):
            v = a + b
            return ExactScalar(0, _mp=v, _prec=prec, _err=ea + eb + _ulp(v, prec))

    __radd__ = __add__

    def __neg__(self):
        if self.is_exact:
            return ExactScalar(-self._re, -self._im)
        return ExactScalar(0, _mp=-self._mp, _prec=self._prec, _err=self._err)

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other):
        return ExactScalar.coerce(other) + (-self)

    def __mul__(self, other):
        other = ExactScalar.coerce(other)
        if self.is_exact and other.is_exact:
            re = self._re * other._re - self._im * other._im
            im = self._re * other._im + self._im * other._re
            return ExactScalar(re, im)
        a, b, ea, eb, prec = self._float_pair(other)
        with mp.workprec(prec):
            v = a * b
            err = abs(a) * eb + abs(b) * ea + ea * eb + _ulp(v, prec)
            return ExactScalar(0, _mp=v, _prec=prec, _err=err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactScalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_exact and other.is_exact:
            den = other._re * other._re + other._im * other._im
            re = (self._re * other._re + self._im * other._im) / den
            im = (self._im * other._re - self._re * other._im) / den
            return ExactScalar(re, im)
        a, b, ea, eb, prec = self._float_pair(other)
        with mp.workprec(prec):
            v = a / b
            err = (ea + abs(v) * eb) / abs(b) + _ulp(v, prec)
            return ExactScalar(0, _mp=v, _prec=prec, _err=err)

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) / self

    def __pow__(self, exponent: int):
        return exact_pow(self, exponent)

    def conjugate(self) -> "ExactScalar":
        if self.is_exact:
            return ExactScalar(self._re, -self._im)
        return ExactScalar(0, _mp=mpmath.conj(self._mp), _prec=self._prec, _err=self._err)

    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return self._re == other._re and self._im == other._im
        if self.is_exact != other.is_exact:
            return self.to_mpc(DEFAULT_PRECISION) == other.to_mpc(DEFAULT_PRECISION)
        return self._mp == other._mp

    def __hash__(self):
        if self.is_exact:
            return hash((self._re, self._im))
        return hash(complex(self._mp))

    # -- rendering ----------------------------------------------------

    def serialize(self) -> str:
        """Canonical string form: "p/q", "p/q+r/s i", or hex-float@prec."""
        if self.kind == "rational":
            return f"{self._re.numerator}/{self._re.denominator}"
        if self.kind == "gaussian":
            re, im = self._re, self._im
            sign = "+" if im >= 0 else "-"
            im = abs(im)
            return (
                f"{re.numerator}/{re.denominator}"
                f"{sign}{im.numerator}/{im.denominator} i"
            )
        re_hex = _mpf_to_hex(self._mp.real)
        im_hex = _mpf_to_hex(self._mp.imag)
        return f"{re_hex}{'+' if not im_hex.startswith('-') else ''}{im_hex}i@{self._prec}"

    @classmethod
    def deserialize(cls, text: str) -> "ExactScalar":
        text = text.strip()
        if "@" in text:
            body, prec = text.rsplit("@", 1)
            prec = int(prec)
            if not body.endswith("i"):
                raise ValueError(f"malformed big-float scalar: {text!r}")
            body = body[:-1]
            split = _split_signed_pair(body)
            re = _mpf_from_hex(split[0], prec)
            im = _mpf_from_hex(split[1], prec)
            return cls.bigfloat(mpmath.mpc(re, im), prec)
        if text.endswith("i"):
            body = text[:-1].strip()
            re_s, im_s = _split_signed_pair(body)
            return cls(Fraction(re_s), Fraction(im_s))
        return cls(Fraction(text))

    def __repr__(self):
        return f"ExactScalar({self.serialize()!r})"

    def __str__(self):
        return self.serialize()


def _split_signed_pair(body: str) -> tuple[str, str]:
    # split "a+b" / "a-b" at the sign separating the two components,
    # skipping a leading sign on the first component
    body = body.strip()
    for i in range(1, len(body)):
        if body[i] in "+-" and body[i - 1] not in "pP":  # skip hex exponent signs
            return body[:i].strip(), (body[i] + body[i + 1:]).strip().rstrip()
    raise ValueError(f"malformed scalar pair: {body!r}")


def _mpf_to_hex(x: mpmath.mpf) -> str:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0 and exp == 0:
        return "-0x0p+0" if sign else "0x0p+0"
    return f"{'-' if sign else ''}0x{int(man):x}p{exp:+d}"


def _mpf_from_hex(text: str, prec: int) -> mpmath.mpf:
    text = text.strip()
    neg = text.startswith("-")
    if neg or text.startswith("+"):
        text = text[1:]
    if not text.startswith("0x"):
        raise ValueError(f"malformed hex float: {text!r}")
    man_s, exp_s = text[2:].split("p")
    with mp.workprec(max(prec, 8)):
        val = mpmath.mpf(int(man_s, 16)) * mpmath.mpf(2) ** int(exp_s)
    return -val if neg else val


def exact_pow(base, exponent: int) -> ExactScalar:
    """Integer power preserving exactness.

    Zero base with negative exponent raises :class:`DomainError`.
    """
    base = ExactScalar.coerce(base)
    if not isinstance(exponent, int):
        raise TypeError("exponent must be an integer")
    if base.is_zero():
        if exponent < 0:
            raise DomainError("zero base with negative exponent")
        return ExactScalar(1) if exponent == 0 else ExactScalar(0)
    if exponent == 0:
        return ExactScalar(1)
    if base.is_exact:
        result = ExactScalar(1)
        b = base if exponent > 0 else ExactScalar(1) / base
        for _ in range(abs(exponent)):
            result = result * b
        return result
    prec = base.precision
    with mp.workprec(prec):
        v = base.to_mpc(prec) ** exponent
        rel = base.error_radius / abs(base.to_mpc(prec))
        err = abs(v) * rel * abs(exponent) + _ulp(v, prec)
    return ExactScalar(0, _mp=v, _prec=prec, _err=err)


# -- Bernoulli numbers and polynomials ---------------------------------

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """Exact B_n in the convention with B_1 = -1/2.

    The memo table only ever grows (write-once per index), so concurrent
    readers are safe; extension is serialized.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(_BERNOULLI_CACHE) <= n:
        with _BERNOULLI_LOCK:
            while len(_BERNOULLI_CACHE) <= n:
                m = len(_BERNOULLI_CACHE)
                # sum_{r=0}^{m} C(m+1, r) B_r = 0  for m >= 1
                acc = Fraction(0)
                for r in range(m):
                    acc += comb(m + 1, r) * _BERNOULLI_CACHE[r]
                _BERNOULLI_CACHE.append(-acc / (m + 1))
    return _BERNOULLI_CACHE[n]


class BernoulliPolynomial:
    """B_n(x) with exact rational coefficients, low degree first."""

    __slots__ = ("degree", "coefficients")

    def __init__(self, degree: int, coefficients: tuple[Fraction, ...]):
        if degree < 0 or len(coefficients) != degree + 1:
            raise ValueError("coefficient count must equal degree + 1")
        self.degree = degree
        self.coefficients = tuple(Fraction(c) for c in coefficients)

    def __call__(self, x: RationalLike) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "BernoulliPolynomial":
        if self.degree == 0:
            return BernoulliPolynomial(0, (Fraction(0),))
        coeffs = tuple(
            self.coefficients[j] * j for j in range(1, self.degree + 1)
        )
        return BernoulliPolynomial(self.degree - 1, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, BernoulliPolynomial)
            and self.degree == other.degree
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return f"BernoulliPolynomial(degree={self.degree})"


def bernoulli_poly(n: int) -> BernoulliPolynomial:
    """B_n(x) = sum_k C(n,k) B_k x^{n-k}, exact."""
    if n < 0:
        raise ValueError("n must be >= 0")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = comb(n, k) * bernoulli_number(k)
    return BernoulliPolynomial(n, tuple(coeffs))

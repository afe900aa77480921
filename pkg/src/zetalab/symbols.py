"""Exact 1-D classical pseudodifferential symbol calculus on the circle.

A symbol is a graded family of matrix-valued components, one matrix per ray
(xi > 0 and xi < 0); the degree-d component stands for p_d^{+-}(x) |xi|^d.
Coefficient functions are trigonometric polynomials with Gaussian-rational
Fourier coefficients.  Two modes: in "constant" mode all coefficient functions
are constant and every operation (including division) is exact; "trig" mode is
closed under sum, product and d/dx, with division restricted to single-mode
units.

Composition uses the 1-D expansion sigma(AB) ~ sum_j (1/j!) d_xi^j a . D_x^j b
with D_x = -i d/dx, evaluated per ray; on the xi < 0 ray d_xi contributes an
extra factor (-1)^j because |xi| = -xi there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Union

from .scalars import ExactScalar
from .series import RepresentationError

RationalLike = Union[int, Fraction]


class EllipticityError(ValueError):
    """The principal component is not invertible on both rays."""


class TruncationError(ValueError):
    """The stored expansion does not reach the required degree."""


_ZERO = ExactScalar(0)
_ONE = ExactScalar(1)
_I = ExactScalar.gaussian(0, 1)


def _as_scalar(v) -> ExactScalar:
    return v if isinstance(v, ExactScalar) else ExactScalar.coerce(v)


# -- trigonometric polynomials -------------------------------------------


class TrigPoly:
    """sum_nu c_nu e^{i nu x} with ExactScalar coefficients, finite support."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[int, ExactScalar] | Iterable = ()):
        if isinstance(coeffs, dict):
            items = coeffs.items()
        else:
            items = coeffs
        data: dict[int, ExactScalar] = {}
        for nu, c in items:
            c = _as_scalar(c)
            if not c.is_zero():
                data[int(nu)] = data.get(int(nu), _ZERO) + c
        self._coeffs = {nu: c for nu, c in sorted(data.items()) if not c.is_zero()}

    @classmethod
    def constant(cls, value) -> "TrigPoly":
        return cls({0: _as_scalar(value)})

    @classmethod
    def mode(cls, nu: int, value=1) -> "TrigPoly":
        return cls({nu: _as_scalar(value)})

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return set(self._coeffs) <= {0}

    def constant_coefficient(self) -> ExactScalar:
        return self._coeffs.get(0, _ZERO)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self._coeffs)
        for nu, c in other._coeffs.items():
            out[nu] = out.get(nu, _ZERO) + c
        return TrigPoly(out)

    def __neg__(self) -> "TrigPoly":
        return TrigPoly({nu: -c for nu, c in self._coeffs.items()})

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-other)

    def __mul__(self, other: "TrigPoly") -> "TrigPoly":
        out: dict[int, ExactScalar] = {}
        for nu, c in self._coeffs.items():
            for mu, d in other._coeffs.items():
                key = nu + mu
                out[key] = out.get(key, _ZERO) + c * d
        return TrigPoly(out)

    def scale(self, v) -> "TrigPoly":
        v = _as_scalar(v)
        return TrigPoly({nu: c * v for nu, c in self._coeffs.items()})

    def dx(self) -> "TrigPoly":
        """d/dx: multiplies the nu-mode by i nu."""
        return TrigPoly(
            {nu: c * ExactScalar.gaussian(0, nu) for nu, c in self._coeffs.items()}
        )

    def conj(self) -> "TrigPoly":
        return TrigPoly({-nu: c.conjugate() for nu, c in self._coeffs.items()})

    def unit_inverse(self) -> Optional["TrigPoly"]:
        """Inverse when the function is a single nonzero Fourier mode."""
        if len(self._coeffs) != 1:
            return None
        (nu, c), = self._coeffs.items()
        return TrigPoly({-nu: _ONE / c})

    def __eq__(self, other):
        return isinstance(other, TrigPoly) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        if not self._coeffs:
            return "TrigPoly(0)"
        parts = " + ".join(
            f"({c})e^{{{nu}ix}}" if nu else f"({c})" for nu, c in self._coeffs.items()
        )
        return f"TrigPoly({parts})"

    def serialize(self) -> list[list]:
        return [[nu, c.serialize()] for nu, c in self._coeffs.items()]

    @classmethod
    def deserialize(cls, data) -> "TrigPoly":
        return cls({int(nu): ExactScalar.deserialize(c) for nu, c in data})


# -- matrices of trig polys ------------------------------------------------

Matrix = tuple[tuple[TrigPoly, ...], ...]


def mat_zero(r: int) -> Matrix:
    return tuple(tuple(TrigPoly() for _ in range(r)) for _ in range(r))


def mat_identity(r: int) -> Matrix:
    return tuple(
        tuple(TrigPoly.constant(1) if i == j else TrigPoly() for j in range(r))
        for i in range(r)
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(x + y for x, y in zip(row_a, row_b)) for row_a, row_b in zip(a, b)
    )


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    r = len(a)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = TrigPoly()
            for l in range(r):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_scale(a: Matrix, v) -> Matrix:
    return tuple(tuple(x.scale(v) for x in row) for row in a)


def mat_dx(a: Matrix) -> Matrix:
    return tuple(tuple(x.dx() for x in row) for row in a)


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_trace(a: Matrix) -> TrigPoly:
    acc = TrigPoly()
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def mat_is_constant(a: Matrix) -> bool:
    return all(x.is_constant() for row in a for x in row)


def mat_constant_inverse(a: Matrix) -> Matrix:
    """Exact inverse of a constant-coefficient matrix (Gauss elimination)."""
    r = len(a)
    work = [[a[i][j].constant_coefficient() for j in range(r)] for i in range(r)]
    inv = [[_ONE if i == j else _ZERO for j in range(r)] for i in range(r)]
    for col in range(r):
        pivot = None
        for row in range(col, r):
            if not work[row][col].is_zero():
                pivot = row
                break
        if pivot is None:
            raise EllipticityError("constant matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        piv = work[col][col]
        work[col] = [x / piv for x in work[col]]
        inv[col] = [x / piv for x in inv[col]]
        for row in range(r):
            if row == col or work[row][col].is_zero():
                continue
            factor = work[row][col]
            work[row] = [x - factor * y for x, y in zip(work[row], work[col])]
            inv[row] = [x - factor * y for x, y in zip(inv[row], inv[col])]
    return tuple(tuple(TrigPoly.constant(x) for x in row) for row in inv)


def mat_inverse(a: Matrix) -> Matrix:
    """Inverse within the representable family."""
    if mat_is_constant(a):
        return mat_constant_inverse(a)
    if len(a) == 1:
        inv = a[0][0].unit_inverse()
        if inv is None:
            raise RepresentationError(
                "trig-mode division needs a unit-times-monomial coefficient"
            )
        return ((inv,),)
    raise RepresentationError(
        "matrix inversion with non-constant trig coefficients is not representable"
    )


# -- symbols ---------------------------------------------------------------


@dataclass(frozen=True)
class RayComponent:
    """One homogeneous component: a matrix per ray."""

    plus: Matrix
    minus: Matrix

    @property
    def rank(self) -> int:
        return len(self.plus)

    def is_zero(self) -> bool:
        return mat_is_zero(self.plus) and mat_is_zero(self.minus)


class SymbolExpansion:
    """Graded symbol: components of degree order, order-1, ..., order-N."""

    __slots__ = ("order", "truncation", "rank", "components", "mode")

    def __init__(
        self,
        order: int,
        truncation: int,
        components: dict[int, RayComponent],
        rank: int = 1,
        mode: str | None = None,
    ):
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        self.order = int(order)
        self.truncation = int(truncation)
        self.rank = rank
        comps: dict[int, RayComponent] = {}
        for d, comp in components.items():
            if d > order or d < order - truncation:
                if comp.is_zero():
                    continue
                raise ValueError(
                    f"component degree {d} outside [{order - truncation}, {order}]"
                )
            if comp.rank != rank:
                raise ValueError("component rank mismatch")
            if not comp.is_zero():
                comps[d] = comp
        self.components = dict(sorted(comps.items(), reverse=True))
        if mode is None:
            mode = (
                "constant"
                if all(
                    mat_is_constant(c.plus) and mat_is_constant(c.minus)
                    for c in self.components.values()
                )
                else "trig"
            )
        self.mode = mode

    # -- accessors -----------------------------------------------------

    def component(self, d: int) -> RayComponent:
        if d in self.components:
            return self.components[d]
        if d > self.order or d >= self.order - self.truncation:
            z = mat_zero(self.rank)
            return RayComponent(z, z)
        raise TruncationError(
            f"degree {d} below stored truncation {self.order - self.truncation}"
        )

    @property
    def lowest_degree(self) -> int:
        return self.order - self.truncation

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, SymbolExpansion):
            return NotImplemented
        return (
            self.order == other.order
            and self.rank == other.rank
            and self.components == other.components
        )

    def __repr__(self):
        degs = ", ".join(str(d) for d in self.components)
        return (
            f"SymbolExpansion(order={self.order}, N={self.truncation}, "
            f"rank={self.rank}, mode={self.mode}, degrees=[{degs}])"
        )

    def serialize(self) -> dict:
        return {
            "order": self.order,
            "truncation": self.truncation,
            "rank": self.rank,
            "mode": self.mode,
            "components": [
                {
                    "degree": d,
                    "plus": [[p.serialize() for p in row] for row in comp.plus],
                    "minus": [[p.serialize() for p in row] for row in comp.minus],
                }
                for d, comp in self.components.items()
            ],
        }

    @classmethod
    def deserialize(cls, data: dict) -> "SymbolExpansion":
        comps = {}
        for entry in data.get("components", ()):
            plus = tuple(
                tuple(TrigPoly.deserialize(p) for p in row) for row in entry["plus"]
            )
            minus = tuple(
                tuple(TrigPoly.deserialize(p) for p in row) for row in entry["minus"]
            )
            comps[int(entry["degree"])] = RayComponent(plus, minus)
        return cls(
            int(data["order"]),
            int(data["truncation"]),
            comps,
            rank=int(data.get("rank", 1)),
            mode=data.get("mode"),
        )


DEFAULT_TRUNCATION = 6


def identity_symbol(rank: int = 1, truncation: int = DEFAULT_TRUNCATION) -> SymbolExpansion:
    eye = mat_identity(rank)
    return SymbolExpansion(0, truncation, {0: RayComponent(eye, eye)}, rank)


def scalar_symbol(
    degree_coeffs: dict[int, tuple],
    truncation: int = DEFAULT_TRUNCATION,
) -> SymbolExpansion:
    """Scalar symbol from {degree: (plus trig poly, minus trig poly)}."""
    comps = {}
    order = max(degree_coeffs)
    for d, (p, m) in degree_coeffs.items():
        p = p if isinstance(p, TrigPoly) else TrigPoly.constant(p)
        m = m if isinstance(m, TrigPoly) else TrigPoly.constant(m)
        comps[d] = RayComponent(((p,),), ((m,),))
    return SymbolExpansion(order, truncation, comps, rank=1)


def differential_symbol(
    xi_coeffs: dict[int, TrigPoly | RationalLike | ExactScalar],
    truncation: int = DEFAULT_TRUNCATION,
) -> SymbolExpansion:
    """Scalar differential-type symbol sum a_d(x) xi^d (odd-class by parity)."""
    comps = {}
    for d, a in xi_coeffs.items():
        a = a if isinstance(a, TrigPoly) else TrigPoly.constant(a)
        comps[d] = (a, a.scale(ExactScalar(1 if d % 2 == 0 else -1)))
    return scalar_symbol(comps, truncation)


def dirac_circle_symbol(a: RationalLike = 0, truncation: int = DEFAULT_TRUNCATION) -> SymbolExpansion:
    """Full symbol of -i d/dx + a on the circle: xi + a."""
    coeffs: dict[int, TrigPoly | RationalLike] = {1: Fraction(1)}
    if Fraction(a) != 0:
        coeffs[0] = Fraction(a)
    return differential_symbol(coeffs, truncation)


# -- calculus ---------------------------------------------------------------


def _falling(p: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= p - i
    return out


def compose(a: SymbolExpansion, b: SymbolExpansion) -> SymbolExpansion:
    """Symbol of the product, truncated to the shared available depth."""
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    n_out = min(a.truncation, b.truncation)
    order = a.order + b.order
    comps: dict[int, RayComponent] = {}
    # lazily extended table of D_x^j b = (-i d/dx)^j b per stored degree
    derivs: dict[int, list[tuple[Matrix, Matrix]]] = {
        q: [(comp.plus, comp.minus)] for q, comp in b.components.items()
    }
    for d in range(order, order - n_out - 1, -1):
        plus = mat_zero(a.rank)
        minus = mat_zero(a.rank)
        for p, comp_a in a.components.items():
            for q, comp_b in b.components.items():
                j = p + q - d
                if j < 0:
                    continue
                rows = derivs[q]
                while len(rows) <= j:
                    prev_p, prev_m = rows[-1]
                    rows.append(
                        (
                            mat_scale(mat_dx(prev_p), -_I),
                            mat_scale(mat_dx(prev_m), -_I),
                        )
                    )
                dbp, dbm = rows[j]
                if mat_is_zero(dbp) and mat_is_zero(dbm):
                    continue
                fall = Fraction(_falling(p, j), factorial(j))
                if fall == 0:
                    continue
                plus = mat_add(plus, mat_scale(mat_mul(comp_a.plus, dbp), fall))
                minus = mat_add(
                    minus,
                    mat_scale(mat_mul(comp_a.minus, dbm), fall * (-1) ** j),
                )
        comp = RayComponent(plus, minus)
        if not comp.is_zero():
            comps[d] = comp
    return SymbolExpansion(order, n_out, comps, a.rank)


def _compose_component(
    a: SymbolExpansion, b_comps: dict[int, RayComponent], rank: int, d: int
) -> RayComponent:
    """Degree-d component of a o b for partially known b."""
    plus = mat_zero(rank)
    minus = mat_zero(rank)
    for p, comp_a in a.components.items():
        for q, comp_b in b_comps.items():
            j = p + q - d
            if j < 0:
                continue
            fall = Fraction(_falling(p, j), factorial(j))
            if fall == 0:
                continue
            dbp, dbm = comp_b.plus, comp_b.minus
            for _ in range(j):
                dbp = mat_scale(mat_dx(dbp), -_I)
                dbm = mat_scale(mat_dx(dbm), -_I)
            plus = mat_add(plus, mat_scale(mat_mul(comp_a.plus, dbp), fall))
            minus = mat_add(
                minus, mat_scale(mat_mul(comp_a.minus, dbm), fall * (-1) ** j)
            )
    return RayComponent(plus, minus)


def parametrix(a: SymbolExpansion) -> SymbolExpansion:
    """Order-by-order inverse modulo smoothing: a o parametrix(a) = 1 + O(low)."""
    principal = a.component(a.order)
    if mat_is_zero(principal.plus) or mat_is_zero(principal.minus):
        raise EllipticityError("principal component vanishes on a ray")
    inv_plus = mat_inverse(principal.plus)
    inv_minus = mat_inverse(principal.minus)
    n = a.truncation
    b_comps: dict[int, RayComponent] = {-a.order: RayComponent(inv_plus, inv_minus)}
    for l in range(1, n + 1):
        # residual of (a o b) at degree -l with the next coefficient absent
        res = _compose_component(a, b_comps, a.rank, -l)
        new_plus = mat_neg(mat_mul(inv_plus, res.plus))
        new_minus = mat_neg(mat_mul(inv_minus, res.minus))
        comp = RayComponent(new_plus, new_minus)
        if not comp.is_zero():
            b_comps[-a.order - l] = comp
    return SymbolExpansion(-a.order, n, b_comps, a.rank)


def power_int(a: SymbolExpansion, k: int) -> SymbolExpansion:
    """Integer symbol power; negative powers go through the parametrix."""
    if k == 0:
        return identity_symbol(a.rank, a.truncation)
    base = a if k > 0 else parametrix(a)
    out = base
    for _ in range(abs(k) - 1):
        out = compose(out, base)
    return out


def _matrix_sqrt(m: Matrix) -> Matrix:
    """Square root of a positive constant hermitian matrix, exact if possible.

    Scalar entries: exact rational square root required.  2x2: the closed form
    sqrt(M) = (M + s I)/t with s = sqrt(det M), t = sqrt(tr M + 2 s).
    """
    from .models import _fraction_root

    r = len(m)
    if not mat_is_constant(m):
        raise RepresentationError("square root of a non-constant component")
    if r == 1:
        c = m[0][0].constant_coefficient()
        if not (c.is_exact and c.imag == 0 and c.real > 0):
            raise RepresentationError("principal square must be positive")
        root = _fraction_root(c.real, 2)
        if root is None:
            raise RepresentationError(f"{c.real} has no rational square root")
        return ((TrigPoly.constant(ExactScalar(root)),),)
    if r == 2:
        import mpmath

        a = m[0][0].constant_coefficient()
        b = m[0][1].constant_coefficient()
        c = m[1][0].constant_coefficient()
        d = m[1][1].constant_coefficient()
        det = a * d - b * c
        tr = a + d
        if not (det.is_exact and det.imag == 0 and tr.is_exact):
            raise RepresentationError("matrix square root needs exact entries")
        s_exact = _fraction_root(det.real, 2)
        if s_exact is not None:
            s = ExactScalar(s_exact)
            t_exact = _fraction_root(tr.real + 2 * s_exact, 2)
            t = ExactScalar(t_exact) if t_exact is not None else None
        else:
            s = t = None
        if s is None or t is None:
            # eigenvalues are not rational squares: high-precision fallback
            with mpmath.mp.workprec(256):
                s = ExactScalar.bigfloat(mpmath.sqrt(det.to_mpc(256)), 256)
                t = ExactScalar.bigfloat(
                    mpmath.sqrt((tr + s + s).to_mpc(256)), 256
                )
        sI = mat_scale(mat_identity(2), s)
        return mat_scale(mat_add(m, sI), _ONE / t)
    raise RepresentationError("matrix square roots implemented for rank <= 2")


def abs_and_sign(a: SymbolExpansion) -> tuple[SymbolExpansion, SymbolExpansion]:
    """(|A|, F) with |A| o |A| = A o A order by order and F = A o |A|^{-1}."""
    square = compose(a, a)
    n = min(a.truncation, square.truncation)
    m = a.order
    principal = square.component(2 * m)
    r_plus = _matrix_sqrt(principal.plus)
    r_minus = _matrix_sqrt(principal.minus)
    comps: dict[int, RayComponent] = {m: RayComponent(r_plus, r_minus)}
    inv2_plus = mat_inverse(mat_scale(r_plus, ExactScalar(2)))
    inv2_minus = mat_inverse(mat_scale(r_minus, ExactScalar(2)))
    for l in range(1, n + 1):
        # (R o R)_{2m-l} = 2 r_m r_{m-l} + known  (scalar/commutative closed form)
        partial = SymbolExpansion(m, n, comps, a.rank)
        known = _compose_component(partial, partial.components, a.rank, 2 * m - l)
        target = square.component(2 * m - l)
        res_plus = mat_add(target.plus, mat_neg(known.plus))
        res_minus = mat_add(target.minus, mat_neg(known.minus))
        if mat_is_zero(res_plus) and mat_is_zero(res_minus):
            continue
        if a.rank > 1:
            # requires r_m X + X r_m = res; with scalar-multiple principal parts
            # (Dirac-type) r_m = mu I and this is division by 2 mu
            if not _is_scalar_multiple(r_plus) or not _is_scalar_multiple(r_minus):
                raise RepresentationError(
                    "matrix |A| needs a scalar-multiple principal square root"
                )
        new_plus = mat_mul(inv2_plus, res_plus)
        new_minus = mat_mul(inv2_minus, res_minus)
        comp = RayComponent(new_plus, new_minus)
        if not comp.is_zero():
            comps[m - l] = comp
    abs_a = SymbolExpansion(m, n, comps, a.rank)
    sign = compose(a, parametrix(abs_a))
    return abs_a, sign


def _is_scalar_multiple(m: Matrix) -> bool:
    r = len(m)
    diag = m[0][0]
    for i in range(r):
        for j in range(r):
            if i == j:
                if m[i][j] != diag:
                    return False
            elif not m[i][j].is_zero():
                return False
    return True


# -- noncommutative residue --------------------------------------------------


@dataclass(frozen=True)
class ResidueDensity:
    """The density coefficient c_A(x): (1/2pi) times the stored ray average."""

    ray_sum: Matrix  # p_{-1}(x, +1) + p_{-1}(x, -1)

    def trace(self) -> TrigPoly:
        return mat_trace(self.ray_sum)

    def value_at(self, x: float) -> complex:
        """Scalar fiber trace of the density at the point x (numeric)."""
        import math as _math

        acc = 0j
        for nu, c in self.trace().items():
            z = c.to_mpc(64)
            acc += complex(float(z.real), float(z.imag)) * complex(
                _math.cos(nu * x), _math.sin(nu * x)
            )
        return acc / (2 * _math.pi)


def residue_density(a: SymbolExpansion) -> ResidueDensity:
    """c_A(x) from the degree -1 component averaged over the 0-sphere {+-1}."""
    comp = a.component(-1)
    return ResidueDensity(mat_add(comp.plus, comp.minus))


def ncr(a: SymbolExpansion) -> ExactScalar:
    """Noncommutative residue: integral over the circle of tr c_A(x).

    Equals 2 pi times the constant Fourier mode of tr c_A, i.e. exactly the
    constant mode of tr(p_{-1}^+ + p_{-1}^-).
    """
    dens = residue_density(a)
    return dens.trace().constant_coefficient()


def is_odd_class(a: SymbolExpansion) -> bool:
    """True iff p_d(x,-xi) = (-1)^d p_d(x,xi) for every stored component."""
    for d, comp in a.components.items():
        expect = mat_scale(comp.plus, ExactScalar(1 if d % 2 == 0 else -1))
        if any(
            comp.minus[i][j] != expect[i][j]
            for i in range(a.rank)
            for j in range(a.rank)
        ):
            return False
    return True


# -- helpers used by the perturbation module ---------------------------------


def symbol_add(a: SymbolExpansion, b: SymbolExpansion) -> SymbolExpansion:
    """Componentwise sum (orders may differ; truncations intersect)."""
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    order = max(a.order, b.order)
    lowest = max(a.lowest_degree, b.lowest_degree)
    comps: dict[int, RayComponent] = {}
    for d in range(order, lowest - 1, -1):
        ca = a.component(d) if d <= a.order else RayComponent(
            mat_zero(a.rank), mat_zero(a.rank)
        )
        cb = b.component(d) if d <= b.order else RayComponent(
            mat_zero(a.rank), mat_zero(a.rank)
        )
        comp = RayComponent(mat_add(ca.plus, cb.plus), mat_add(ca.minus, cb.minus))
        if not comp.is_zero():
            comps[d] = comp
    return SymbolExpansion(order, order - lowest, comps, a.rank)


def constant_symbol_like(a: SymbolExpansion, value: ExactScalar) -> SymbolExpansion:
    eye = mat_scale(mat_identity(a.rank), value)
    return SymbolExpansion(
        0, a.truncation + max(a.order, 0), {0: RayComponent(eye, eye)}, a.rank
    )

"""Perturbations of spectral models and symbols.

Implements the constructions used to force singularities of the spectral
functions: constant shifts P + a (with full sign-crossing bookkeeping on the
spectral side), the scale perturbation P_eps = P + eps|P|, the refinement
P_{eps,c} = P_eps + c F |P_eps|^{-n}, the first-order root Q = F(P)|P|^{1/m},
and the order-m rebuild F(Q_{eps,c}+a)|Q_{eps,c}+a|^m.  All of them act on
eigenvalue laws through the closed family of spectral maps, so signs,
multiplicities and kernels transform exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .models import (
    Branch,
    LawGenerator,
    ModelError,
    SpectralModel,
    _fraction_root,
)
from .scalars import ExactScalar
from .series import SpectralMapSpec

RationalLike = Union[int, Fraction]


class ParameterError(ValueError):
    """Perturbation parameters outside the allowed regime."""


@dataclass(frozen=True)
class PerturbationParams:
    """Exact parameter tuple (a, epsilon, c, m) with domain checks."""

    a: Fraction = Fraction(0)
    epsilon: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "c", Fraction(self.c))
        if abs(self.epsilon) >= 1:
            raise ParameterError("epsilon must lie in (-1, 1)")
        if self.c < 0:
            raise ParameterError("c must be >= 0")
        if self.m < 1:
            raise ParameterError("m must be a positive integer")


def default_depth(model: SpectralModel) -> int:
    """Default law truncation: n + m + 4 correction terms."""
    return model.dimension + model.order + 4


def _regen_branch(branch: Branch, gen: LawGenerator, k0: int, depth: int) -> Branch:
    law = gen.series(depth)
    if law.sign != branch.sign:
        raise ModelError("map chain flipped a branch sign unexpectedly")
    return Branch(branch.sign, branch.mult, law.abs(), k0, gen)


def shift(model: SpectralModel, a: RationalLike) -> SpectralModel:
    """Spectral shift P -> P + a with exact re-bucketing of sign crossings.

    Eigenvalues whose sign flips move to the exceptional list with their new
    values; exact zero landings move to the kernel.  Branch start indices rise
    past the crossing region and the laws pick up the shift map.
    """
    a = Fraction(a)
    if a == 0:
        return model
    depth = default_depth(model)
    new_branches = []
    new_exceptional: list[tuple[ExactScalar, int]] = []
    kernel = 0
    for br in model.branches:
        if br.generator is None:
            gen = None
        else:
            gen = br.generator.with_map(SpectralMapSpec.shift(a))
        # crossings: signed eigenvalue sign*|law(k)| + a changes sign when
        # |law(k)| <= |a| on the side opposing a
        k = br.k0
        crossed: list[tuple[Fraction, int]] = []
        if (br.sign > 0 and a < 0) or (br.sign < 0 and a > 0):
            while True:
                lam = br.abs_eigen_exact(k)
                if lam is None:
                    approx = br.abs_eigen_mpf(k, 96)
                    gap = approx - abs(
                        mpmath.mpf(a.numerator) / a.denominator
                    )
                    if abs(gap) < mpmath.mpf(2) ** -48:
                        raise ModelError(
                            "cannot decide a sign crossing exactly for a "
                            "branch without an exact law recipe"
                        )
                    if gap > 0:
                        break
                    crossed.append((None, k))  # value handled below
                    k += 1
                    continue
                if lam > abs(a):
                    break
                new_val = br.sign * lam + a
                crossed.append((new_val, k))
                k += 1
                if k > br.k0 + 1_000_000:
                    raise ModelError("crossing search did not terminate")
        for new_val, kk in crossed:
            if new_val is None:
                raise ModelError(
                    "crossed eigenvalue is not exactly representable"
                )
            mult = int(br.mult_at(kk))
            if new_val == 0:
                kernel += mult
            else:
                new_exceptional.append((ExactScalar(new_val), mult))
        if gen is None:
            raise ModelError(
                "shift requires branches with exact law recipes; "
                "rebuild the model from a library constructor"
            )
        new_branches.append(_regen_branch(br, gen, k, depth))
    for lam, mult in model.exceptional:
        if lam.is_exact:
            moved = ExactScalar(lam.real + a)
        else:
            moved = lam + ExactScalar(a)
        if moved.is_zero():
            kernel += mult
        else:
            new_exceptional.append((moved, mult))
    if model.kernel_dim:
        # zero modes move to the eigenvalue a
        new_exceptional.append((ExactScalar(a), model.kernel_dim))
    return SpectralModel(
        branches=tuple(new_branches),
        exceptional=tuple(new_exceptional),
        kernel_dim=kernel,
        order=model.order,
        dimension=model.dimension,
        name=f"{model.name}+({a})" if model.name else "",
    )


def epsilon_scale(model: SpectralModel, epsilon: RationalLike) -> SpectralModel:
    """P -> P + eps|P|: positive branch laws scale by 1+eps, negative by 1-eps."""
    epsilon = Fraction(epsilon)
    if abs(epsilon) >= 1:
        raise ParameterError("epsilon must lie in (-1, 1)")
    if epsilon == 0:
        return model
    depth = default_depth(model)
    new_branches = []
    for br in model.branches:
        if br.generator is None:
            raise ModelError("epsilon_scale requires branches with law recipes")
        factor = 1 + epsilon if br.sign > 0 else 1 - epsilon
        gen = br.generator.with_map(SpectralMapSpec.scale(factor))
        new_branches.append(_regen_branch(br, gen, br.k0, depth))
    def move(lam: ExactScalar) -> ExactScalar:
        if lam.is_exact:
            factor = 1 + epsilon if lam.real > 0 else 1 - epsilon
            return ExactScalar(lam.real * factor)
        sgn = 1 if lam.to_mpc(64).real > 0 else -1
        return lam * ExactScalar(1 + epsilon * sgn)
    return SpectralModel(
        branches=tuple(new_branches),
        exceptional=model.map_exceptional(move),
        kernel_dim=model.kernel_dim,
        order=model.order,
        dimension=model.dimension,
        name=f"{model.name} eps={epsilon}" if model.name else "",
    )


def ec_perturb(
    model: SpectralModel, epsilon: RationalLike, c: RationalLike
) -> SpectralModel:
    """P -> P_eps + c F |P_eps|^{-n}; signs and kernel unchanged (c >= 0)."""
    epsilon = Fraction(epsilon)
    c = Fraction(c)
    PerturbationParams(epsilon=epsilon, c=c)
    scaled = epsilon_scale(model, epsilon)
    if c == 0:
        return scaled
    n = model.dimension
    depth = default_depth(model)
    new_branches = []
    for br in scaled.branches:
        gen = br.generator.with_map(SpectralMapSpec.add_signed_inverse_power(c, n))
        new = _regen_branch(br, gen, br.k0, depth)
        # the correction must not break monotonicity near the bottom of the branch
        prev = None
        for k in range(new.k0, new.k0 + 8):
            val = new.abs_eigen_mpf(k, 64)
            if val <= 0 or (prev is not None and val <= prev):
                raise ParameterError(
                    f"c={c} is too large: the perturbed law is not increasing "
                    f"near k={k}"
                )
            prev = val
        new_branches.append(new)
    def move(lam: ExactScalar) -> ExactScalar:
        if lam.is_exact:
            v = lam.real
            sgn = 1 if v > 0 else -1
            return ExactScalar(v + c * sgn * abs(v) ** (-n))
        v = lam.to_mpc(96).real
        sgn = 1 if v > 0 else -1
        return lam + ExactScalar.bigfloat(c * sgn * abs(v) ** (-n), 96)
    return SpectralModel(
        branches=tuple(new_branches),
        exceptional=scaled.map_exceptional(move),
        kernel_dim=scaled.kernel_dim,
        order=scaled.order,
        dimension=scaled.dimension,
        name=f"{model.name} (eps={epsilon}, c={c})" if model.name else "",
    )


def root_op(model: SpectralModel) -> SpectralModel:
    """Q = F(P)|P|^{1/m}: first-order root with the same sign data."""
    m = model.order
    if m == 1:
        return model
    depth = default_depth(model)
    p = Fraction(1, m)
    new_branches = []
    for br in model.branches:
        if br.generator is None:
            raise ModelError("root_op requires branches with law recipes")
        gen = br.generator.with_map(SpectralMapSpec.signed_power(p))
        new_branches.append(_regen_branch(br, gen, br.k0, depth))
    def move(lam: ExactScalar) -> ExactScalar:
        if lam.is_exact:
            v = lam.real
            sgn = 1 if v > 0 else -1
            root = _fraction_root(abs(v), m)
            if root is not None:
                return ExactScalar(sgn * root)
        with mpmath.mp.workprec(96):
            v = lam.to_mpc(96).real
            return ExactScalar.bigfloat(
                mpmath.sign(v) * mpmath.power(abs(v), mpmath.mpf(1) / m), 96
            )
    return SpectralModel(
        branches=tuple(new_branches),
        exceptional=model.map_exceptional(move),
        kernel_dim=model.kernel_dim,
        order=1,
        dimension=model.dimension,
        name=f"root({model.name})" if model.name else "",
    )


def power_op(model: SpectralModel, params: PerturbationParams) -> SpectralModel:
    """F(Q_{eps,c} + a) |Q_{eps,c} + a|^m built over a first-order model Q.

    Requires 0 <= a < (1 - |eps|) * gap so no eigenvalue crosses zero; the
    kernel then lands on the exceptional eigenvalue a^m.
    """
    if model.order != 1:
        raise ParameterError("power_op expects a first-order model (apply root_op first)")
    gap = model.spectral_gap()
    bound = (1 - abs(params.epsilon)) * gap
    if not (0 <= params.a < bound):
        raise ParameterError(
            f"shift a={params.a} outside the no-crossing window [0, {bound})"
        )
    qec = ec_perturb(model, params.epsilon, params.c)
    n = model.dimension
    m = params.m
    depth = default_depth(model) + m
    new_branches = []
    for br in qec.branches:
        gen = br.generator
        if params.a != 0:
            gen = gen.with_map(SpectralMapSpec.shift(params.a))
        if m != 1:
            gen = gen.with_map(SpectralMapSpec.signed_power(Fraction(m)))
        new_branches.append(_regen_branch(br, gen, br.k0, depth))
    def move(lam: ExactScalar) -> ExactScalar:
        if lam.is_exact:
            v = lam.real + params.a
            sgn = 1 if v > 0 else -1
            return ExactScalar(sgn * abs(v) ** m)
        with mpmath.mp.workprec(96):
            v = lam.to_mpc(96).real + mpmath.mpf(params.a.numerator) / params.a.denominator
            return ExactScalar.bigfloat(mpmath.sign(v) * abs(v) ** m, 96)
    new_exceptional = list(qec.map_exceptional(move))
    kernel = qec.kernel_dim
    if params.a != 0 and kernel:
        new_exceptional.append((ExactScalar(params.a**m), kernel))
        kernel = 0
    return SpectralModel(
        branches=tuple(new_branches),
        exceptional=tuple(new_exceptional),
        kernel_dim=kernel,
        order=m,
        dimension=model.dimension,
        name=f"{model.name} power(a={params.a}, m={m})" if model.name else "",
    )


def u_v(epsilon: RationalLike, n: int) -> tuple[ExactScalar, ExactScalar]:
    """u = ((1+eps)^-n + (1-eps)^-n)/2 and v = ((1+eps)^-n - (1-eps)^-n)/2."""
    epsilon = Fraction(epsilon)
    if abs(epsilon) >= 1:
        raise ParameterError("epsilon must lie in (-1, 1)")
    plus = (1 + epsilon) ** -n
    minus = (1 - epsilon) ** -n
    return ExactScalar((plus + minus) / 2), ExactScalar((plus - minus) / 2)


def symbol_shift(symbol, a: RationalLike):
    """Add the constant a to the degree-0 component on both rays."""
    from .symbols import constant_symbol_like, symbol_add

    a = Fraction(a)
    if a == 0:
        return symbol
    return symbol_add(symbol, constant_symbol_like(symbol, ExactScalar(a)))

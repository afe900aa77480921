"""Built-in spectral models and circle symbols.

Each built-in records the derivation of its spectrum in the docstring; the
spectra are classical computations (separation of variables / representation
theory), collected here so every downstream check is desk-verifiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .models import Branch, LawGenerator, SpectralModel
from .perturb import shift

RationalLike = Union[int, Fraction]


def _branch(
    sign: int,
    alpha: RationalLike,
    exponent: RationalLike,
    mult: tuple[RationalLike, ...],
    k0: int = 1,
    depth: int = 8,
) -> Branch:
    gen = LawGenerator(sign, Fraction(1), Fraction(alpha), Fraction(exponent))
    return Branch(
        sign,
        tuple(Fraction(c) for c in mult),
        gen.series(depth).abs(),
        k0,
        gen,
    )


def circle_dirac() -> SpectralModel:
    """-i d/dtheta on the unit circle.

    Fourier modes e^{ik theta} give the full spectrum: every integer k, simple.
    Nonzero part: +/- k with multiplicity 1 for k >= 1; the constant mode is a
    one-dimensional kernel.  n = 1, m = 1.
    """
    model = SpectralModel(
        branches=(_branch(1, 0, 1, (1,)), _branch(-1, 0, 1, (1,))),
        kernel_dim=1,
        order=1,
        dimension=1,
        name="circle_dirac",
    )
    return model


def circle_dirac_shift(a: RationalLike = Fraction(1, 3)) -> SpectralModel:
    """-i d/dtheta + a on the circle: the integer spectrum shifted by a."""
    return shift(circle_dirac(), Fraction(a))


def circle_laplacian() -> SpectralModel:
    """-d^2/dtheta^2 on the circle.

    Fourier modes give eigenvalues k^2 with multiplicity 2 for k >= 1
    (e^{+-ik theta}) and a one-dimensional kernel.  Order 2, dimension 1,
    positive spectrum only.
    """
    return SpectralModel(
        branches=(_branch(1, 0, 2, (2,)),),
        kernel_dim=1,
        order=2,
        dimension=1,
        name="circle_laplacian",
    )


def sphere2_dirac() -> SpectralModel:
    """Dirac operator on the round 2-sphere.

    The classical spectrum is +-(k+1) with multiplicity 2(k+1), k >= 0
    (spinor spherical harmonics); re-indexed: +-k with multiplicity 2k for
    k >= 1, trivial kernel.  n = 2, m = 1.
    """
    return SpectralModel(
        branches=(_branch(1, 0, 1, (0, 2)), _branch(-1, 0, 1, (0, 2))),
        kernel_dim=0,
        order=1,
        dimension=2,
        name="sphere2_dirac",
    )


def sphere3_dirac() -> SpectralModel:
    """Dirac operator on the round 3-sphere.

    Spectrum +-(k + 3/2) with multiplicity (k+1)(k+2), k >= 0; re-indexed with
    j = k + 1: +-(j + 1/2) with multiplicity j(j+1) = j^2 + j for j >= 1,
    trivial kernel.  n = 3, m = 1.
    """
    return SpectralModel(
        branches=(
            _branch(1, Fraction(1, 2), 1, (0, 1, 1)),
            _branch(-1, Fraction(1, 2), 1, (0, 1, 1)),
        ),
        kernel_dim=0,
        order=1,
        dimension=3,
        name="sphere3_dirac",
    )


@dataclass(frozen=True)
class ModelLibraryEntry:
    """A named constructor plus its parameter documentation."""

    name: str
    factory: Callable[..., SpectralModel]
    params: str
    note: str


LIBRARY: dict[str, ModelLibraryEntry] = {
    entry.name: entry
    for entry in (
        ModelLibraryEntry(
            "circle_dirac",
            circle_dirac,
            "",
            "first order, n=1, spectrum Z (kernel 1)",
        ),
        ModelLibraryEntry(
            "circle_dirac_shift",
            circle_dirac_shift,
            "a (default 1/3)",
            "circle operator shifted by a rational constant",
        ),
        ModelLibraryEntry(
            "circle_laplacian",
            circle_laplacian,
            "",
            "order 2, n=1, eigenvalues k^2 with multiplicity 2",
        ),
        ModelLibraryEntry(
            "sphere2_dirac",
            sphere2_dirac,
            "",
            "first order, n=2, eigenvalues +-k with multiplicity 2k",
        ),
        ModelLibraryEntry(
            "sphere3_dirac",
            sphere3_dirac,
            "",
            "first order, n=3, eigenvalues +-(j+1/2), multiplicity j(j+1)",
        ),
    )
}


def model_names() -> list[str]:
    return sorted(LIBRARY)


def get_model(name: str, a: Optional[RationalLike] = None) -> SpectralModel:
    """Instantiate a library model by name (a: shift parameter where applicable)."""
    if name not in LIBRARY:
        raise KeyError(
            f"unknown model {name!r}; available: {', '.join(model_names())}"
        )
    entry = LIBRARY[name]
    if entry.name == "circle_dirac_shift":
        return entry.factory(a if a is not None else Fraction(1, 3))
    model = entry.factory()
    if a is not None and Fraction(a) != 0:
        model = shift(model, Fraction(a))
    return model


def all_models() -> list[SpectralModel]:
    """One instance of every library entry (shift entry at its default a)."""
    return [get_model(name) for name in model_names()]

"""zetalab: exact pole/residue laboratory for spectral zeta and eta functions.

Two engines over one exact substrate: a spectral engine continuing Dirichlet
series built from eigenvalue branches, and a 1-D symbol calculus on the circle
computing noncommutative residues.  Perturbation tooling connects them to the
singularity-forcing constructions, and a check suite runs the corresponding
statements as decidable assertions.
"""

__version__ = "0.1.0"

from .scalars import (
    DEFAULT_PRECISION,
    BernoulliPolynomial,
    DomainError,
    ExactScalar,
    bernoulli_number,
    bernoulli_poly,
    exact_pow,
)
from .series import (
    AsymptoticSeries,
    LadderError,
    RadicalProduct,
    RepresentationError,
    SpectralMapSpec,
    series_add,
    series_compose_map,
    series_pow,
)
from .hurwitz import (
    HurwitzValue,
    PoleError,
    hurwitz_residue,
    hurwitz_value,
    riemann_zeta,
    truncated_zeta,
)
from .models import (
    Branch,
    CombinedResidue,
    InsufficientDepthError,
    LawGenerator,
    MeromorphicData,
    ModelError,
    PoleHitError,
    ResidueValue,
    SpectralFunctions,
    SpectralModel,
    direct_spectral_sum,
    evaluate,
    half_zeta,
    residues_at_admissible,
    spectral_functions,
)
from .symbols import (
    EllipticityError,
    RayComponent,
    SymbolExpansion,
    TrigPoly,
    TruncationError,
    abs_and_sign,
    compose,
    differential_symbol,
    dirac_circle_symbol,
    identity_symbol,
    is_odd_class,
    ncr,
    parametrix,
    power_int,
    residue_density,
    scalar_symbol,
)
from .perturb import (
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
from .library import (
    LIBRARY,
    ModelLibraryEntry,
    all_models,
    circle_dirac,
    circle_dirac_shift,
    circle_laplacian,
    get_model,
    model_names,
    sphere2_dirac,
    sphere3_dirac,
)
from .checks import (
    CheckVerdict,
    SuiteConfig,
    check_appendix_b,
    check_parity_tables,
    check_prop_first_order,
    check_residue_trace,
    check_section4,
    run_all,
)
from .formats import (
    FormatError,
    load_model,
    load_symbol,
    pole_table_rows,
    save_model,
    save_symbol,
)

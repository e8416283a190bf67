"""Numerical laboratory for stable recovery of functions from their moduli.

Everything is computed on exact finite probability spaces, so orthogonality
relations, moment identities, and recovery round trips hold to machine
precision rather than approximately.
"""

__version__ = "0.1.0"

from .bases import (
    CoefVec,
    DegenerateBasisError,
    ModulusSquaredExpansion,
    OrthoBasis,
    complex_span,
    expand_modulus_squared,
    exponential_basis,
    iid_basis,
    lacunary_poly_basis,
    lacunary_sine_basis,
    rudin_2d_basis,
    synthesize,
)
from .hypotheses import (
    EmbeddingEstimate,
    HypothesisReport,
    check_moments,
    check_orthogonality,
    embedding_constant,
    full_report,
)
from .measures import (
    DiscreteMeasure,
    PhaseAlignment,
    ResourceLimitError,
    SampledFunction,
    inner,
    make_interval_grid,
    make_product_space,
    make_square_grid,
    min_phase_dist,
    norm_p,
)
from .retrieval import RecoveryResult, recover_coefficients, reconstruct
from .sidon import (
    BhSequence,
    DensityProfile,
    DifferenceSetNotFoundError,
    density_profile,
    greedy_bh,
    singer_difference_set,
    verify_bh,
)
from .stability import (
    BoundCheck,
    HolderFit,
    IdentityReport,
    PhaseDecomposition,
    RatioOutcome,
    StabilityReport,
    Violation,
    adversarial_spr,
    holder_exponent_fit,
    identity_residuals,
    identity_residuals_batch,
    interpolation_theta,
    modulus_holder_gamma,
    monte_carlo_spr,
    phase_decompose,
    spr_ratio,
    stability_bound_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]

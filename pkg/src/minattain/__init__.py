"""minattain: minimum-modulus and attainment toolkit for Hilbert-space operators.

Computes operator norms, minimum moduli, positive square roots, polar
decompositions and numerical ranges of dense operators; decides minimum
attainment ("N*") and every-restriction attainment ("AN*") exactly on a
catalog of structured l2 operator families and numerically on dense
matrices; and ships a seeded property-suite verifier plus a CLI.
"""

__version__ = "0.1.0"

from .attainment import (
    AttainmentVerdict,
    IsometryCheckReport,
    RestrictionSample,
    anstar_decide_projection,
    anstar_decide_structured,
    anstar_sample,
    injectivity_check,
    isometry_compose_check,
    nstar_check_dense,
    nstar_decide_structured,
    truncated_min_modulus,
)
from .errors import (
    DimensionMismatchError,
    NonHermitianError,
    NotPositiveError,
    RankDeficiencyError,
    ToolkitError,
    TruncationError,
    UnknownSuiteError,
    UnsupportedPropertyError,
    UnsupportedVariantError,
    ValidationError,
)
from .operators import (
    DenseOperator,
    Diagonal,
    IdentityPlusFiniteRank,
    Projection,
    ScaledIdentityMinusCompact,
    ShiftVariant,
    Subspace,
    TailRule,
    TripledProjection,
    UnitVector,
    WeightSequence,
    adjoint,
    as_matrix,
    compose,
    identity,
    matrix_power,
    operator_from_dict,
    orthonormalize,
    parse_rule,
    phase_normalize,
    repeat_pattern_frame,
    restrict,
    structured_from_dict,
    tripled_projection_restriction,
    truncate,
)
from .spectral import (
    DEFAULT_DIMENSION_CAP,
    RangeDescriptor,
    SpectralData,
    hermitian_eig,
    hermitian_interval,
    is_hermitian,
    min_modulus,
    numerical_range_boundary,
    operator_norm,
    polar_decomposition,
    positive_sqrt,
    structured_range,
    svd_data,
)
from .verifier import (
    PropertyReport,
    SuiteConfig,
    minimizing_sequence_value,
    projection_algebra_check,
    run_all,
    run_suite,
    suite_names,
)

__all__ = [name for name in dir() if not name.startswith("_")]

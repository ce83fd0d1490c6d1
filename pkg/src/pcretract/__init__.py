"""Witnessed piecewise-continuous retractions on finite-dimensional normed
spaces, with a numerical property-verification suite."""

from .core import (
    DimensionMismatch,
    FiniteUnion,
    FullSpace,
    Interval,
    NormBand,
    NormKind,
    PieceFamily,
    SetDescriptor,
    Singleton,
    Tolerance,
    Translate,
    as_vector,
    constant_family,
    contains,
    descriptor_from_json,
    entier,
    norm,
    piece,
)
from .constructions import (
    Clamp1D,
    ClosedRegion,
    Constant,
    ConstructionError,
    HalfOpenUnitInterval,
    OpenUnitBall,
    PiecewiseMap,
    PuncturedSpace,
    RadialProjection,
    build_construction,
    canonical_constant_extension,
    canonical_extend,
    canonical_glue,
    constant_extension,
    extend_retraction,
    fractional_part_retraction,
    glue_retraction,
    open_ball_retraction,
    radial_projection_map,
    sphere_retraction,
    unit_sphere,
)
from .fields import (
    ScalarField,
    UnboundedFieldError,
    const_field,
    coord_field,
    cos_field,
    extension_operator,
    linear_combination,
    parse_field,
    poly_field,
    prod_field,
    sin_field,
    sup_norm_estimate,
)
from .verification import (
    CheckReport,
    Sampler,
    borsuk_discontinuity_demo,
    check_cover,
    check_norm_identity_open_ball,
    check_operator_properties,
    check_piece_continuity,
    check_retraction_identity,
    codomain_sampler,
    domain_sampler,
    lipschitz_oracle,
    run_suite,
)

__version__ = "0.1.0"

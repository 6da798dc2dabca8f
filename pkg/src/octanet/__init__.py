"""Exact engine for the octahedron recurrence with wall boundaries, its
network-matrix solution formulas, and a verification harness for the
periodicity and positivity properties."""

from .laurent import (
    DivideByZero,
    ExponentOverflow,
    LaurentError,
    LaurentPoly,
    NegativeExponent,
    NotDivisible,
    NotInvertible,
    VarTable,
    lp_canonical_text,
    lp_div_exact,
    lp_eval_rational,
    lp_parse_canonical,
    lp_serialize,
    lp_deserialize,
    lp_subst_zero,
    lp_substitute,
)
from .surface import (
    CornerAmbiguity,
    InitialData,
    NotMutable,
    OutOfWindow,
    ShadowDomain,
    SteppedSurface,
    SurfaceError,
    Window,
    build_regularized_data,
    build_symmetric_data,
    flat_surface,
    generic_data,
    mutate,
    projection,
    regularized_array,
    regularized_reflected,
    shadow,
    validate,
)
from .network import (
    Chip,
    ChipSequence,
    NetworkError,
    NotUnit,
    PathGraph,
    TheoremViolation,
    TooLarge,
    chip_U,
    chip_V,
    lgv_minor,
    parse_word,
    path_graph,
    poly_det,
    pq_matrices,
    shadow_chip_columns,
    shadow_network,
    uv_decompose,
)
from .tsystem import (
    METHODS,
    CornerMismatchWarning,
    LaurentViolation,
    NeedsRegularization,
    SolveResult,
    TSystemError,
    TSystemOracle,
    applicable_methods,
    half_twist,
    period_length,
    solve,
    solve_flat_minor,
    solve_general_minor,
    solve_t1_network,
    solve_wronskian,
)
from .verify import (
    COVERAGE,
    SUITES,
    Report,
    check_boundary_emergence,
    check_equivalence,
    check_identities,
    check_periodicity,
    check_positivity,
    run_suite,
)

__version__ = "0.1.0"

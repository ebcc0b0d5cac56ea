"""Logarithmic least squares priorities for best-worst method matrices.

Derives LLSM weights from the incomplete comparison matrix of a
best-worst elicitation, detects ordinal violations exactly, certifies
their absence via two sufficient dominance conditions, and verifies the
underlying combinatorial facts by exhaustive census and seeded Monte
Carlo simulation.
"""

from .model import (
    SAATY_SCALE,
    BadIndicesError,
    BwmError,
    BwmInstance,
    ComparisonGraph,
    IncompletePcm,
    NotDominantError,
    OutOfScaleError,
    ReciprocityError,
    TooSmallError,
    as_fraction,
    format_fraction,
    is_connected,
    make_pcm,
    on_scale,
    to_incomplete_pcm,
    validate_bwm,
    validate_comparison_value,
)
from .llsm import (
    DisconnectedError,
    LaplacianSystem,
    PriorityVector,
    SingularSystemError,
    TooLargeError,
    build_laplacian,
    normalize,
    solve_llsm,
    solve_llsm_bwm_closed_form,
    solve_llsm_general,
    spanning_tree_oracle,
)
from .ordinal import (
    ConditionDiagnosis,
    InvalidPError,
    LengthMismatchError,
    MiddleFlags,
    TheoremCheck,
    TooSmallNError,
    Violation,
    ViolationReport,
    check_corollary2,
    check_theorem1,
    check_theorem2,
    derive_p,
    detect_bwm_violations_exact,
    detect_violations,
    diagnose,
    theorem2_bound,
)
from .census import (
    DEFAULT_BUDGET,
    SAATY_CENSUS_SCALE,
    SAATY_CENSUS_THEOREM1_COUNT,
    SAATY_CENSUS_TOTAL,
    SAATY_CENSUS_VIOLATING,
    BudgetExceededError,
    CensusReport,
    enumerate_census,
    instance_from_entries,
    saaty_census_tie_family,
    saaty_census_witness_family,
)
from .montecarlo import (
    DegeneratePError,
    DetectionMath,
    McConfig,
    McReport,
    RNG_ALGORITHM,
    detection_math,
    estimate_violation_probability,
    min_runs,
    no_detection_probability,
    sample_bwm,
    sample_entries,
)
from .jsonio import (
    canonical_json,
    census_report_to_dict,
    diagnosis_to_dict,
    instance_from_dict,
    instance_to_dict,
    mc_report_to_dict,
    solve_result,
    violations_to_dict,
    weights_to_dict,
)

__version__ = "0.1.0"

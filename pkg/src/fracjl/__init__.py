"""Joseph-Lundgren criticality toolkit for the fractional Hardy-Henon
equation (-Delta)^s u = |x|^l |u|^(p-1) u.

The package decides where an exponent p sits in the Joseph-Lundgren
trichotomy, computes every critical exponent and threshold curve of the
(N, s, l) phase diagram, evaluates the explicit singular solution with
its stability inequality, and constructs the bounded supersolution
truncation profile.  A CLI (``fracjl``) exposes point queries, threshold
computation, grid scans and a built-in verification suite.
"""

from .specfun import (
    EULER_GAMMA,
    DomainError,
    digamma,
    log_gamma,
    normalization_constants,
    trigamma,
)
from .criticality import (
    DEFAULT_TOL,
    Classification,
    Label,
    ProblemParams,
    ReducedPoint,
    classify,
    decay_exponent,
    from_reduced,
    hardy_constant,
    jl_ratio,
    jl_threshold,
    log_jl_ratio,
    log_jl_ratio_d1,
    log_jl_ratio_d2,
    margin_at_infinity,
    margin_at_infinity_ds,
    reduced_from_x,
    reduced_sup,
    sobolev_exponent,
    spectral_lambda,
    spectral_offset,
    to_reduced,
)
from .exponents import (
    CriticalSet,
    Crossing,
    ThresholdReport,
    WeightThresholds,
    classical_jl_exponent,
    classical_jl_exponent_weighted,
    critical_set,
    joseph_lundgren_exponent,
    min_supercritical_dimension,
    order_threshold,
    order_thresholds_negative_weight,
    threshold_report,
    turning_order,
    weight_bound,
    weight_threshold_slope,
    weight_thresholds,
)
from .singular import (
    IntegrabilityFlags,
    SingularSolution,
    StabilityResult,
    amplitude_identity_residual,
    build_singular,
    integrability_flags,
    riesz_constant,
    scaled_profile,
    singular_stability,
)
from .truncation import (
    CutoffProfile,
    TruncationProfile,
    TruncationReport,
    build_cutoff,
    build_truncation,
    solve_zeta,
    verify_truncation,
)
from .scan import Axis, PhaseDiagram, ScanSpec, parse_json, render_csv, render_json, run_scan

__version__ = "0.1.0"

"""Numerical study of the integral of the zeta argument on short intervals.

Thin Python layer over the C++ core: zeta and Hardy Z evaluation, zero
enumeration, the argument function S and its integral S1, prime-sum grids,
Fejer-smoothed averages, moment integrals with bound checks, and the
windowed extreme-value search with its JSON/CSV reports.
"""

from ._core import (
    ArgumentConstants,
    ArgumentValue,
    ConditionFlags,
    DomainError,
    EvalResult,
    ExtremeValueCertificate,
    FejerParams,
    GridFunction,
    IdentityReport,
    Lemma3Bound,
    Lemma4Lower,
    Lemma5Verdict,
    LogAbsResult,
    LogBound,
    Method,
    MethodTrace,
    MomentPair,
    MomentReport,
    PrimePower,
    PrimePowerTable,
    QuadratureError,
    ResourceError,
    RunArtifacts,
    S1Value,
    SearchParams,
    TrackingError,
    build_table,
    compute_moments,
    constant_C,
    derive_params,
    derive_params_log,
    feasible_log_t,
    fejer,
    fejer_complex_sq,
    fejer_hat,
    full_lambda_sum,
    hardy_z,
    hardy_z_error,
    lemma1_identity_check,
    lemma3_rhs,
    lemma3_rhs_log,
    lemma4_lower_bound,
    lemma4_odd_bound,
    lemma5_certify,
    log_abs_zeta,
    moment_report,
    moment_reports,
    near_ordinate,
    pole_term,
    rs_theta,
    rs_theta_error,
    run_report,
    s1_strip,
    s1_via_integral,
    s_via_counting,
    s_via_path,
    scan,
    set_cache_dir,
    set_max_threads,
    set_tolerance,
    smoothed_s1,
    w_grid,
    w_point,
    zero_count,
    zero_ordinates,
    zeta,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]

"""meangap: certified extremal constants for the (A - G)/(P_alpha - G) ratio.

The arithmetic, geometric, and order-alpha power means of a positive
tuple satisfy sharp two-sided comparisons; this package computes the
extremal constants for each (n, alpha), certifies how they arise from a
one-variable profile, and cross-checks them with independent grid and
Monte Carlo oracles.
"""

from .means import (
    DegenerateZeroError,
    ExponentPair,
    SampleVector,
    arithmetic_mean,
    geometric_mean,
    harmonic_mean,
    power_mean,
    ratio_gap,
)
from .profile import (
    CENTER_BAND,
    ProfileParams,
    ProfilePoint,
    U_func,
    V_func,
    W_func,
    W_prime,
    f_prime,
    f_profile,
    g_prime,
    g_profile,
    g_second,
    p_prime,
    p_profile,
    p_second,
    profile_point,
    s_map,
)
from .regimes import (
    CriticalPoint,
    FShape,
    Regime,
    RegimeTag,
    classify,
    f_shape,
    locate_mu,
)
from .solver import (
    Bracket,
    BracketError,
    MaxIterationsError,
    SolveResult,
    find_extremum,
    find_root,
)
from .constants import (
    ExtremumCertificate,
    InterpolationConstants,
    augment_with_gm,
    best_constants,
    endpoint_constants,
    interpolation_constants,
    power_form_check,
    ratio_from_f,
    sweep_constants,
    wen_reference,
)
from .reduction import (
    ConstraintDegenerateError,
    CurveParams,
    CurvePoint,
    curve_params,
    curve_point,
    h_power_sum,
    h_prime,
    lemma1_coefficient,
    lemma1_ratio,
    two_value_config,
)
from .oracle import (
    BoundsCheck,
    GridExtreme,
    InstanceMismatchError,
    OracleReport,
    check_bounds,
    grid_scan_two_value,
    monte_carlo_extremes,
    simplex_sample,
    simplex_sample_block,
    splitmix64,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsCheck",
    "Bracket",
    "BracketError",
    "CENTER_BAND",
    "ConstraintDegenerateError",
    "CriticalPoint",
    "CurveParams",
    "CurvePoint",
    "DegenerateZeroError",
    "ExponentPair",
    "ExtremumCertificate",
    "FShape",
    "GridExtreme",
    "InstanceMismatchError",
    "InterpolationConstants",
    "MaxIterationsError",
    "OracleReport",
    "ProfileParams",
    "ProfilePoint",
    "Regime",
    "RegimeTag",
    "SampleVector",
    "SolveResult",
    "U_func",
    "V_func",
    "W_func",
    "W_prime",
    "__version__",
    "arithmetic_mean",
    "augment_with_gm",
    "best_constants",
    "check_bounds",
    "classify",
    "curve_params",
    "curve_point",
    "endpoint_constants",
    "f_prime",
    "f_profile",
    "f_shape",
    "find_extremum",
    "find_root",
    "g_prime",
    "g_profile",
    "g_second",
    "geometric_mean",
    "grid_scan_two_value",
    "h_power_sum",
    "h_prime",
    "harmonic_mean",
    "interpolation_constants",
    "lemma1_coefficient",
    "lemma1_ratio",
    "locate_mu",
    "monte_carlo_extremes",
    "p_prime",
    "p_profile",
    "p_second",
    "power_form_check",
    "power_mean",
    "profile_point",
    "ratio_from_f",
    "ratio_gap",
    "s_map",
    "simplex_sample",
    "simplex_sample_block",
    "splitmix64",
    "sweep_constants",
    "two_value_config",
    "wen_reference",
]

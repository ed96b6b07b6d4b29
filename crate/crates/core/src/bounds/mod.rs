//! Bounds on `LC_k`, their applicability tests, and character sums.

pub mod charsum;
pub mod lc_bounds;

pub use charsum::{
    character_sum, distinct_root_count, exact_norm_squared, is_constant_times_dth_power,
    sample_non_power_polynomials, squarefree_decomposition, weil_check, CharSumReport, FqPoly, WEIL_TOLERANCE,
};
pub use lc_bounds::{
    bound_report, corollary1_bound, hasse_at_one_via_cyclotomy, hasse_at_one_with_digits,
    prop1_applicability, prop1_verify_exhaustive, s_values, theorem1_bound, theorem2_predict,
    Applicability, BoundReport, PeriodFactorization, PredictedRelation, Theorem2Prediction,
};

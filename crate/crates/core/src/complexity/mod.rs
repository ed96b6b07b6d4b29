//! Polynomials over `F_d` and the linear-complexity machinery built on
//! them.

pub mod factor;
pub mod hasse;
pub mod kerror;
pub mod lc;
pub mod poly;

pub use factor::{berlekamp, squarefree_decomposition, CyclicFactorization};
pub use hasse::{hasse_at, hasse_derivative, lucas_binomial, root_multiplicity, root_multiplicity_by_division};
pub use kerror::{
    complexity_report, k_error_lc, k_error_lc_reference, k_error_profile, search_size, ComplexityReport,
    KErrorEntry, Methods, DEFAULT_BUDGET,
};
pub use lc::{berlekamp_massey, berlekamp_massey_terms, lc_via_gcd, sequence_poly, LcEvaluator};
pub use poly::DensePoly;

//! q = 1423, l = 711: the 1-error linear complexity equals the linear
//! complexity, as predicted from B ≡ 0 (mod 3).

use sidelnikov::bounds::{bound_report, s_values, theorem2_predict};
use sidelnikov::complexity::{k_error_profile, kerror::DEFAULT_BUDGET};
use sidelnikov::{sidelnikov_subsequence, FieldCtx};

fn main() -> sidelnikov::Result<()> {
    let ctx = FieldCtx::with_order(1423, None)?;
    let p = theorem2_predict(&ctx)?;
    println!("A = {}, B = {}, case {:?}, prediction {}", p.a, p.b, p.case, p.relation.label());
    println!("l = 3^{} * {}, hypotheses hold: {}", p.power3, p.cofactor, p.hypotheses_hold);

    let seq = sidelnikov_subsequence(&ctx, 3, 711)?;
    println!("S(1), S'(1) = {:?}, predicted ({}, {})", s_values(&seq), p.predicted_s1, p.predicted_s1_1);

    let report = k_error_profile(&seq, 1, DEFAULT_BUDGET)?;
    let bounds = bound_report(&ctx, 3, 711, 1)?;
    println!(
        "LC = {}, LC_1 = {} over {} candidates; lower bounds {:.2} and {:?}",
        report.lc,
        report.entries[1].lc_k,
        report.candidates,
        bounds.theorem1_bound,
        bounds.corollary1_bound
    );
    Ok(())
}

//! Root exclusion at q = 103, l = 51 = 3 * 17: every sequence within one
//! change stays coprime to 1 + x + ... + x^16, so LC_1 >= 2 * 3 * 8 = 48.

use sidelnikov::bounds::{corollary1_bound, prop1_applicability, prop1_verify_exhaustive};
use sidelnikov::complexity::{k_error_lc, kerror::DEFAULT_BUDGET};
use sidelnikov::{sidelnikov_subsequence, FieldCtx};

fn main() -> sidelnikov::Result<()> {
    let ctx = FieldCtx::with_order(103, None)?;
    let seq = sidelnikov_subsequence(&ctx, 3, 51)?;
    println!("{:?}", prop1_applicability(103, 3, 51, 17, 1));
    println!("{:?}", prop1_applicability(103, 3, 51, 3, 1));
    println!("verified: {}", prop1_verify_exhaustive(&seq, 17, 1, DEFAULT_BUDGET)?);
    let lc1 = k_error_lc(&seq, 1, DEFAULT_BUDGET)?.lc_k;
    println!("LC_1 = {lc1} >= {}", corollary1_bound(3, 1, 17));
    Ok(())
}

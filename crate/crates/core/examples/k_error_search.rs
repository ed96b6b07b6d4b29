//! Exhaustive k-error profile of a short subsequence, with witnesses.

use sidelnikov::complexity::{complexity_report, kerror::DEFAULT_BUDGET};
use sidelnikov::{sidelnikov_subsequence, FieldCtx};

fn main() -> sidelnikov::Result<()> {
    let ctx = FieldCtx::with_order(103, None)?;
    let seq = sidelnikov_subsequence(&ctx, 3, 34)?;
    let report = complexity_report(&seq, 3, DEFAULT_BUDGET)?;
    println!("q=103 d=3 l=34, {} candidates searched", report.candidates);
    for e in &report.entries {
        println!("  LC_{} = {:>2}  witness {:?}", e.k, e.lc_k, e.witness.changes());
    }
    Ok(())
}

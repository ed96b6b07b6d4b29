//! Linear complexity by the gcd formula and by Berlekamp-Massey, plus the
//! factor-by-factor breakdown of gcd(x^l - 1, S(x)).

use sidelnikov::complexity::{berlekamp_massey, lc_via_gcd, LcEvaluator};
use sidelnikov::{sidelnikov_subsequence, FieldCtx};

fn main() -> sidelnikov::Result<()> {
    let ctx = FieldCtx::with_order(1423, None)?;
    let seq = sidelnikov_subsequence(&ctx, 3, 711)?;
    let lc = lc_via_gcd(&seq);
    let (bm, feedback) = berlekamp_massey(&seq);
    println!("q=1423 d=3 l=711: LC = {lc} (Berlekamp-Massey {bm}, feedback degree {:?})", feedback.degree());

    let eval = LcEvaluator::new(3, 711);
    for (factor, mult) in eval.factor_multiplicities(seq.terms()) {
        println!("  factor of degree {:?} divides S(x) {mult} times", factor.degree());
    }
    Ok(())
}

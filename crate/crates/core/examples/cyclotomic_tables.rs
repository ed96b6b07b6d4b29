//! Order-6 cyclotomic numbers for q = 31 from the closed forms, next to
//! the direct count.

use sidelnikov::cyclotomy::{cyclotomic_numbers_bruteforce, cyclotomic_numbers_order6};
use sidelnikov::FieldCtx;

fn main() -> sidelnikov::Result<()> {
    let ctx = FieldCtx::with_order(31, None)?;
    let closed = cyclotomic_numbers_order6(&ctx)?;
    let direct = cyclotomic_numbers_bruteforce(&ctx, 6)?;
    let dec = closed.decomposition.as_ref().expect("closed-form tables carry A and B");
    println!("q=31 gamma={}: A={} B={} case {:?}", ctx.gamma(), dec.a, dec.b, dec.case());
    for (i, row) in closed.rows().iter().enumerate() {
        println!("  {i}: {row:?}");
    }
    println!("formula entries: {}, mismatches: {:?}", closed.formula_entries().len(), closed.formula_mismatches());
    assert_eq!(closed.rows(), direct.rows());
    Ok(())
}

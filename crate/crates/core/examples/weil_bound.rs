//! Character sums against the Weil bound, including the equality case.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sidelnikov::bounds::{character_sum, sample_non_power_polynomials, weil_check, FqPoly};
use sidelnikov::FieldCtx;

fn main() -> sidelnikov::Result<()> {
    let ctx = FieldCtx::with_order(7, Some(3))?;
    let r = character_sum(&ctx, 3, &FqPoly::new(vec![0, 1, 1]))?;
    println!("q=7 x^2+x: tally {:?}, |sum|^2 = {:?}, bound {:.4}", r.tally, r.norm_squared, r.weil_rhs);

    let cube = character_sum(&ctx, 3, &FqPoly::new(vec![1, 3, 3, 1]))?;
    println!("(x+1)^3: {:?}", weil_check(&cube));

    let ctx = FieldCtx::with_order(181, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for f in sample_non_power_polynomials(&ctx, 5, 5, 4, &mut rng) {
        let r = character_sum(&ctx, 5, &f)?;
        println!("q=181 d=5 f={:?}: {:.3} <= {:.3}", f.coeffs(), r.magnitude, r.weil_rhs);
    }
    Ok(())
}

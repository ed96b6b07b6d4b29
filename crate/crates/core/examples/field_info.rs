//! Build F_9 and F_1423, print their primitive elements and a few logs.
//!
//! ```bash
//! cargo run --example field_info
//! ```

use sidelnikov::FieldCtx;

fn main() -> sidelnikov::Result<()> {
    let f9 = FieldCtx::with_order(9, None)?;
    println!("F_9: modulus {:?}, gamma = {} (encoded base 3)", f9.modulus(), f9.gamma());
    for x in 1..9 {
        println!("  log({x}) = {}", f9.discrete_log(x)?);
    }

    let f = FieldCtx::with_order(1423, None)?;
    println!("F_1423: gamma = {}, log(2) = {}", f.gamma(), f.discrete_log(2)?);
    let other = FieldCtx::with_order(1423, Some(6))?;
    println!("with gamma = 6: log(2) = {}", other.discrete_log(2)?);
    Ok(())
}

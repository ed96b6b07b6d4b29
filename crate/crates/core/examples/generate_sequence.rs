//! Generate subsequences for q = 7 and write one to a file.

use sidelnikov::{sidelnikov_subsequence, FieldCtx, PeriodicSequence};

fn main() -> sidelnikov::Result<()> {
    let ctx = FieldCtx::with_order(7, None)?;
    for l in [1, 2, 3, 6] {
        let seq = sidelnikov_subsequence(&ctx, 3, l)?;
        println!("q=7 d=3 l={l}: {:?}", seq.terms());
    }

    let seq = sidelnikov_subsequence(&ctx, 3, 6)?;
    let path = std::env::temp_dir().join("sidelnikov_q7.txt");
    std::fs::write(&path, seq.to_file_string())?;
    let back: PeriodicSequence = std::fs::read_to_string(&path)?.parse()?;
    assert_eq!(back.terms(), seq.terms());
    println!("wrote {}", path.display());
    Ok(())
}

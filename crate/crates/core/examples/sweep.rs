//! Run the sweep in `examples/sweep.toml` and summarize it.

use sidelnikov::cli::sweep::{run_sweep, write_records, SweepConfig, SweepSummary};

fn main() -> sidelnikov::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sweep.toml"))?;
    let cfg: SweepConfig = text.parse()?;
    let records = run_sweep(&cfg)?;
    let out = std::env::temp_dir().join("sidelnikov_sweep.jsonl");
    write_records(&out, &records)?;

    let tightest = records
        .iter()
        .filter_map(|r| Some((r.lc_k? as f64 - r.bounds.as_ref()?.theorem1_bound, r)))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    if let Some((gap, r)) = tightest {
        println!("tightest: q={} d={} l={} k={} LC_k={:?} gap {gap:.3}", r.q, r.d, r.l, r.k, r.lc_k);
    }
    println!("{:?}", SweepSummary::of(&records));
    println!("records in {}", out.display());
    Ok(())
}

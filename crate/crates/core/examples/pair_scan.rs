//! Classifies wave-number pairs by the divisibility test, the endpoint
//! limits of `phi` and a root search.
//!
//! ```text
//! cargo run --release --example pair_scan -- 12
//! ```

use capillary_whitham::symbreak::{pair_scan, PairStatus, ScanOptions};

fn main() -> anyhow::Result<()> {
    let k_max: u32 = std::env::args().nth(1).map_or(Ok(12), |s| s.parse())?;
    let opts = ScanOptions { find_roots: true, ..ScanOptions::default() };
    let verdicts = pair_scan(k_max, &opts)?;
    for v in &verdicts {
        let roots: Vec<String> = v.roots.iter().map(|r| format!("{:.6}", r.t0)).collect();
        println!("{:>9} {:<20} roots [{}]", v.pair, v.status.as_str(), roots.join(", "));
    }
    let admitted = verdicts.iter().filter(|v| v.status == PairStatus::Admits).count();
    println!("{admitted} of {} coprime pairs admit symmetry breaking", verdicts.len());
    Ok(())
}

//! Double bifurcation points of a wave-number pair across the weak
//! surface-tension range.
//!
//! ```text
//! cargo run --example bifurcation_points -- 2 5
//! ```

use capillary_whitham::symbol::{double_bifurcation, turning_point};
use capillary_whitham::{SurfaceTension, WaveNumberPair};

fn main() -> anyhow::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (k1, k2) = match args[..] {
        [k1, k2] => (k1, k2),
        _ => (2, 5),
    };
    let pair = WaveNumberPair::new(k1, k2)?;
    println!("{:>8} {:>12} {:>20} {:>20} {:>10}", "T", "xi*", "c0", "kappa0", "residual");
    for i in 1..=12 {
        let t = SurfaceTension::new(i as f64 / 39.0)?;
        let bp = double_bifurcation(pair, t)?;
        println!(
            "{:>8.5} {:>12.6} {:>20.16} {:>20.16} {:>10.1e}",
            t.value(),
            turning_point(t)?,
            bp.c0,
            bp.kappa0,
            bp.residual()
        );
    }
    Ok(())
}

//! Symmetric bimodal and unimodal waves at a fixed surface tension.
//!
//! ```text
//! cargo run --release --example symmetric_wave
//! ```

use std::f64::consts::PI;

use capillary_whitham::symbol::double_bifurcation;
use capillary_whitham::wave::{symmetric_solve, ModalParameters, WaveOptions};
use capillary_whitham::{SurfaceTension, WaveNumberPair};

fn main() -> anyhow::Result<()> {
    let pair = WaveNumberPair::new(2, 5)?;
    let t = SurfaceTension::new(0.2)?;
    let bp = double_bifurcation(pair, t)?;
    println!("c0 = {:.15}, kappa0 = {:.15}", bp.c0, bp.kappa0);
    let opts = WaveOptions { truncation: 32, ..WaveOptions::default() };
    for (r1, r2, theta1) in [(0.01, 0.0, 0.0), (0.0, 0.01, 0.0), (0.01, 0.01, 0.0), (0.01, 0.01, PI / 10.0)] {
        let params = ModalParameters::new(pair, r1, r2, theta1, 0.0)?;
        let (_, report) = symmetric_solve(pair, &params, t, &opts)?;
        println!(
            "r = ({r1}, {r2}) theta1 = {theta1:.4}: {:?}, c - c0 = {:+.6e}, kappa - kappa0 = {:+.6e}, |J|_inf = {:.1e}",
            report.mode,
            report.c - bp.c0,
            report.kappa - bp.kappa0,
            report.residual_j_inf
        );
    }
    Ok(())
}

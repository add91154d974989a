//! A small asymmetric travelling wave near the symmetry-breaking point of
//! `(2, 5)`.
//!
//! ```text
//! cargo run --release --example asymmetric_wave -- 0.002
//! ```

use std::f64::consts::PI;

use capillary_whitham::symbreak::{phi_root, DEFAULT_GRID};
use capillary_whitham::wave::{solve_wave, ModalParameters, WaveOptions};
use capillary_whitham::{SurfaceTension, WaveNumberPair};

fn main() -> anyhow::Result<()> {
    let r: f64 = std::env::args().nth(1).map_or(Ok(0.002), |s| s.parse())?;
    let pair = WaveNumberPair::new(2, 5)?;
    let t0 = phi_root(pair, DEFAULT_GRID)?.first().map(|root| root.t0).ok_or_else(|| anyhow::anyhow!("no root"))?;
    let params = ModalParameters::new(pair, r, r, PI / 20.0, 0.0)?;
    let (profile, report) = solve_wave(pair, &params, SurfaceTension::new(t0)?, &WaveOptions::default())?;

    println!("mode        {:?} (asymmetric: {})", report.mode, report.asymmetric);
    println!("c           {:.15}", report.c);
    println!("kappa       {:.15}", report.kappa);
    println!("T           {:.15}  (T0 = {t0:.15})", report.t);
    println!("newton      {} steps, equations {:.2e}", report.iterations_newton, report.residual_equations);
    println!("|J|_inf     {:.2e}", report.residual_j_inf);
    println!("<J, u'>     {:.2e}", report.residual_orthogonality);
    let u = profile.modes;
    let reflected = u.reflect();
    // An even translate would make u(x + a) = u(-x + a) for some a.
    let best = (0..2000)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / 2000.0;
            u.translate(a).sub(&reflected.translate(-a)).l2()
        })
        .fold(f64::INFINITY, f64::min);
    println!("min_a |u(.+a) - u(-.+a)| = {best:.3e} (|u| = {:.3e})", u.l2());
    Ok(())
}

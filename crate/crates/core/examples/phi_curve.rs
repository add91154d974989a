//! Samples `phi(T; k1, k2)`, locates its roots and writes an SVG plot.
//!
//! ```text
//! cargo run --example phi_curve -- 2 5 phi.svg
//! ```

use capillary_whitham::io::{Marker, PlotKind, PlotSpec};
use capillary_whitham::symbreak::{phi_curve, phi_root, DEFAULT_GRID};
use capillary_whitham::WaveNumberPair;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k1 = args.first().map_or(Ok(2), |s| s.parse())?;
    let k2 = args.get(1).map_or(Ok(5), |s| s.parse())?;
    let pair = WaveNumberPair::new(k1, k2)?;

    let curve = phi_curve(pair, DEFAULT_GRID)?;
    for (t, phi) in curve.iter().step_by(20) {
        println!("T = {t:.6}  phi = {phi:+.6e}");
    }
    let roots = phi_root(pair, DEFAULT_GRID)?;
    let mut plot = PlotSpec::new(PlotKind::Line, curve, "T", "phi")?
        .title(format!("phi(T) for {pair}"))
        .marker(Marker::Horizontal { y: 0.0, label: String::new() });
    for r in &roots {
        println!("root T0 = {:.12} (slope {:.4e})", r.t0, r.slope);
        plot = plot.marker(Marker::Vertical { x: r.t0, label: format!("T0 = {:.4}", r.t0) });
    }
    if let Some(path) = args.get(2) {
        std::fs::write(path, plot.render())?;
        println!("wrote {path}");
    }
    Ok(())
}

//! Exact monomial expansion of `phi` and a numeric cross-check.
//!
//! ```text
//! cargo run --example symbolic_expansion -- 2 5
//! ```

use capillary_whitham::coeff::{expand_symbolic, phi_term_count, MultiplierContext};
use capillary_whitham::symbreak::phi_eval;
use capillary_whitham::{SurfaceTension, WaveNumberPair};

fn main() -> anyhow::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (k1, k2) = match args[..] {
        [k1, k2] => (k1, k2),
        _ => (2, 5),
    };
    let pair = WaveNumberPair::new(k1, k2)?;
    println!("N (term count) = {}", phi_term_count(pair));
    let expansion = expand_symbolic(pair)?;
    println!("2^{} phi =", expansion.prefactor_exponent);
    for m in &expansion.monomials {
        let factors: Vec<String> = m.factors.iter().map(|n| format!("l({n})")).collect();
        println!("  + {:>4} {}", m.coeff, factors.join(" "));
    }
    println!("M (degree) = {}", expansion.monomials.first().map_or(0, |m| m.degree()));

    let t = SurfaceTension::new(0.2)?;
    let sample = phi_eval(pair, t)?;
    let ctx = MultiplierContext::at_bifurcation(&sample.bifurcation);
    let from_monomials = expansion.try_eval(|n| ctx.multiplier(i64::from(n)))?;
    println!("phi(0.2) = {:.15e} (recursion), {:.15e} (monomials)", sample.value, from_monomials);
    Ok(())
}

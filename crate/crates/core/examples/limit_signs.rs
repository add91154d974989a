//! Endpoint limits of the normalized `phi` for every coprime pair up to a
//! bound; opposite signs certify a root.
//!
//! ```text
//! cargo run --example limit_signs -- 9
//! ```

use capillary_whitham::symbol::gcd;
use capillary_whitham::symbreak::{exclusion_check, phi_limits};
use capillary_whitham::WaveNumberPair;

fn main() -> anyhow::Result<()> {
    let k_max: u32 = std::env::args().nth(1).map_or(Ok(9), |s| s.parse())?;
    for k2 in 2..=k_max {
        for k1 in 1..k2 {
            if gcd(k1, k2) != 1 {
                continue;
            }
            let pair = WaveNumberPair::new(k1, k2)?;
            let status = exclusion_check(k1, k2)?;
            match phi_limits(pair) {
                Ok((low, high)) => {
                    let verdict = if low * high < 0.0 { "sign change" } else { "" };
                    println!("{pair:>9} {:<20} {low:>+14.6e} {high:>+14.6e} {verdict}", status.as_str());
                }
                Err(e) => println!("{pair:>9} {:<20} {e}", status.as_str()),
            }
        }
    }
    Ok(())
}

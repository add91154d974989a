//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use capillary_whitham::coeff::{MultiIndex, MultiplierContext};
use capillary_whitham::symbol::double_bifurcation;
use capillary_whitham::{SurfaceTension, WaveNumberPair};

/// `(r1 power, r2 power, e1, e2)`: the monomial `r1^p r2^q E1^e1 E2^e2`.
pub type Key = (u32, u32, i32, i32);

pub fn key(alpha: MultiIndex, beta: MultiIndex) -> Key {
    (alpha.a1 + beta.a1, alpha.a2 + beta.a2, alpha.a1 as i32 - beta.a1 as i32, alpha.a2 as i32 - beta.a2 as i32)
}

fn square(u: &HashMap<Key, f64>, degree: u32) -> HashMap<Key, f64> {
    let mut out: HashMap<Key, f64> = HashMap::new();
    for (&(p1, q1, e1, f1), &a) in u {
        for (&(p2, q2, e2, f2), &b) in u {
            if p1 + q1 + p2 + q2 <= degree {
                *out.entry((p1 + p2, q1 + q2, e1 + e2, f1 + f2)).or_insert(0.0) += a * b;
            }
        }
    }
    out
}

/// Brute-force `u` and `u^2` as truncated series in the `r`-monomial and
/// wavenumber algebra, up to total `r`-degree `degree`.
///
/// `u = v + L P_W u^2` is iterated from `u = v`; after `degree` rounds every
/// coefficient of degree at most `degree` is final.
pub fn series_oracle(ctx: &MultiplierContext, degree: u32) -> (HashMap<Key, f64>, HashMap<Key, f64>) {
    let (k1, k2) = (ctx.pair.k1() as i64, ctx.pair.k2() as i64);
    let mut v = HashMap::new();
    for k in [(1, 0, 1, 0), (1, 0, -1, 0), (0, 1, 0, 1), (0, 1, 0, -1)] {
        v.insert(k, 0.5);
    }
    let mut u = v.clone();
    for _ in 0..degree {
        let mut next = v.clone();
        for ((p, q, e1, e2), c) in square(&u, degree) {
            let n = k1 * i64::from(e1) + k2 * i64::from(e2);
            let ell = ctx.multiplier(n).expect("no resonance in the oracle");
            *next.entry((p, q, e1, e2)).or_insert(0.0) += ell * c;
        }
        u = next;
    }
    let u2 = square(&u, degree);
    (u, u2)
}

pub fn context(k1: u32, k2: u32, t: f64) -> MultiplierContext {
    let pair = WaveNumberPair::new(k1, k2).unwrap();
    let bp = double_bifurcation(pair, SurfaceTension::new(t).unwrap()).unwrap();
    MultiplierContext::at_bifurcation(&bp)
}

/// All `(alpha, beta)` with `lo <= |alpha| + |beta| <= hi`.
pub fn multi_indices(lo: u32, hi: u32) -> Vec<(MultiIndex, MultiIndex)> {
    let mut out = Vec::new();
    for a1 in 0..=hi {
        for a2 in 0..=hi - a1 {
            for b1 in 0..=hi - a1 - a2 {
                for b2 in 0..=hi - a1 - a2 - b1 {
                    if a1 + a2 + b1 + b2 >= lo {
                        out.push((MultiIndex::new(a1, a2), MultiIndex::new(b1, b2)));
                    }
                }
            }
        }
    }
    out
}

/// `|a - b| <= tol * max(|a|, |b|)`, with exact zeros matching.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

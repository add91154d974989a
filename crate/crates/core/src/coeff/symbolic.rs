//! Exact expansion of `phi` as integer-weighted monomials in `ell`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{phi_indices, Algebra, Session};
use crate::error::{Error, Result};
use crate::symbol::WaveNumberPair;

/// Largest `N` for which [`expand_symbolic`] runs.
pub const TERM_LIMIT: u64 = 100_000_000;

/// A polynomial in the symbols `ell(n)`: sorted factor lists to coefficients.
pub type Poly = BTreeMap<Vec<u32>, u64>;

/// `coeff * prod ell(factors[i])`, factors ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: u64,
    pub factors: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Value after substituting `ell(n) -> ell(n)`.
    pub fn eval(&self, mut ell: impl FnMut(u32) -> f64) -> f64 {
        self.factors.iter().fold(self.coeff as f64, |acc, &n| acc * ell(n))
    }
}

/// `2^{prefactor_exponent} * phi` as a sum of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiExpansion {
    pub pair: [u32; 2],
    pub prefactor_exponent: u32,
    pub monomials: Vec<Monomial>,
}

impl PhiExpansion {
    /// Sum of coefficients, i.e. the number of monomials counted with multiplicity.
    pub fn term_count(&self) -> u64 {
        self.monomials.iter().map(|m| m.coeff).sum()
    }

    /// `phi` itself, given values of `ell` (only `|n|` is ever requested).
    pub fn eval(&self, mut ell: impl FnMut(u32) -> f64) -> f64 {
        let scaled: f64 = self.monomials.iter().map(|m| m.eval(&mut ell)).sum();
        scaled / 2f64.powi(self.prefactor_exponent as i32)
    }

    /// Like [`eval`](Self::eval) with a fallible `ell`.
    pub fn try_eval(&self, mut ell: impl FnMut(u32) -> Result<f64>) -> Result<f64> {
        let mut scaled = 0.0;
        for m in &self.monomials {
            let mut term = m.coeff as f64;
            for &n in &m.factors {
                term *= ell(n)?;
            }
            scaled += term;
        }
        Ok(scaled / 2f64.powi(self.prefactor_exponent as i32))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("expansion serializes")
    }
}

/// The recursion over [`Poly`], with first-order coefficients scaled to 1.
///
/// Every coefficient of order `p` is then `2^p` times its numeric value, so
/// all weights stay integers.
#[derive(Debug, Clone, Copy)]
pub struct SymbolicAlgebra {
    pair: WaveNumberPair,
}

impl SymbolicAlgebra {
    pub fn new(pair: WaveNumberPair) -> Self {
        Self { pair }
    }
}

impl Algebra for SymbolicAlgebra {
    type Value = Poly;

    fn pair(&self) -> WaveNumberPair {
        self.pair
    }
    fn zero(&self) -> Poly {
        Poly::new()
    }
    fn base(&self) -> Poly {
        Poly::from([(Vec::new(), 1)])
    }
    fn multiplier(&self, wavenumber: i64) -> Result<Poly> {
        if wavenumber == 0 || self.pair.is_kernel_mode(wavenumber) {
            return Err(Error::domain(format!("symbolic recursion for {} reached ell({wavenumber})", self.pair)));
        }
        let n = u32::try_from(wavenumber.unsigned_abs())
            .map_err(|_| Error::domain(format!("wavenumber {wavenumber} out of range")))?;
        Ok(Poly::from([(vec![n], 1)]))
    }
    fn add_product(&self, acc: &mut Poly, a: &Poly, b: &Poly) {
        for (fa, ca) in a {
            for (fb, cb) in b {
                let key = merge_sorted(fa, fb);
                let weight = ca.checked_mul(*cb).expect("monomial weight overflow");
                let slot = acc.entry(key).or_insert(0);
                *slot = slot.checked_add(weight).expect("monomial weight overflow");
            }
        }
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        self.add_product(&mut out, a, b);
        out
    }
}

fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// `N = (2 k2 + 2 k1 - 4)! / ((k1 + k2 - 2)! k1! (k2 - 1)!)`.
pub fn phi_term_count(pair: WaveNumberPair) -> BigUint {
    let (k1, k2) = (pair.k1(), pair.k2());
    factorial(2 * (k1 + k2) - 4) / (factorial(k1 + k2 - 2) * factorial(k1) * factorial(k2 - 1))
}

/// Expands `2^{k1 + k2 - 1} * phi(T; k1, k2)` exactly.
pub fn expand_symbolic(pair: WaveNumberPair) -> Result<PhiExpansion> {
    let n = phi_term_count(pair);
    if n > BigUint::from(TERM_LIMIT) {
        return Err(Error::SizeGuard { n: n.to_string(), limit: TERM_LIMIT });
    }
    let (alpha, beta) = phi_indices(pair);
    let mut session = Session::new(SymbolicAlgebra::new(pair));
    let poly = session.u2(alpha, beta)?;
    let monomials = poly.into_iter().map(|(factors, coeff)| Monomial { coeff, factors }).collect();
    Ok(PhiExpansion { pair: [pair.k1(), pair.k2()], prefactor_exponent: pair.prefactor_exponent(), monomials })
}

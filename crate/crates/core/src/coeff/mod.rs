//! Taylor–Fourier coefficients of small solutions.
//!
//! Near a double bifurcation point a solution expands as
//! `u = sum û_{a,b} r^{a+b} E^{a-b}` over pairs of multi-indices, where
//! `E = (e^{i k1 (x + theta1)}, e^{i k2 (x + theta2)})`. Writing the
//! fixed-point equation `w = L (v + w)^2` mode by mode gives
//!
//! ```text
//! û_{a,b}  = ell(k1 (a1 - b1) + k2 (a2 - b2)) * sum û_{a',b'} û_{a'',b''}
//! û²_{a,b} = sum û_{a',b'} û_{a'',b''}
//! ```
//!
//! with the sums over ordered splittings `a' + a'' = a`, `b' + b'' = b` into
//! two nonzero parts, seeded by the four first-order coefficients `1/2`.
//!
//! The recursion is written once over an [`Algebra`] and instantiated three
//! ways: numerically at a [`MultiplierContext`], at the endpoint limits of
//! the normalized multiplier ([`LimitRatio`]), and symbolically over
//! integer-weighted monomials in `ell` ([`symbolic`]).

mod multiplier;
pub mod symbolic;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::symbol::WaveNumberPair;

pub use multiplier::{limit_ratio, Endpoint, LimitRatio, MultiplierContext, RESONANCE_GUARD};
pub use symbolic::{expand_symbolic, phi_term_count, Monomial, PhiExpansion, SymbolicAlgebra};

/// A multi-index `(a1, a2)` in `N_0^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct MultiIndex {
    pub a1: u32,
    pub a2: u32,
}

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex { a1: 0, a2: 0 };

    pub const fn new(a1: u32, a2: u32) -> Self {
        Self { a1, a2 }
    }

    /// `|a| = a1 + a2`.
    pub fn order(self) -> u32 {
        self.a1 + self.a2
    }

    /// Componentwise difference; `None` if any component would go negative.
    pub fn checked_sub(self, other: Self) -> Option<Self> {
        Some(Self { a1: self.a1.checked_sub(other.a1)?, a2: self.a2.checked_sub(other.a2)? })
    }

    /// All `a'` with `a' <= self` componentwise.
    pub fn below(self) -> impl Iterator<Item = MultiIndex> {
        (0..=self.a1).flat_map(move |a1| (0..=self.a2).map(move |a2| MultiIndex { a1, a2 }))
    }
}

impl std::ops::Add for MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: Self) -> Self {
        MultiIndex { a1: self.a1 + rhs.a1, a2: self.a2 + rhs.a2 }
    }
}

impl std::ops::Sub for MultiIndex {
    type Output = MultiIndex;

    /// Panics on underflow; use [`MultiIndex::checked_sub`] otherwise.
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("multi-index subtraction underflow")
    }
}

impl From<(u32, u32)> for MultiIndex {
    fn from((a1, a2): (u32, u32)) -> Self {
        MultiIndex { a1, a2 }
    }
}

/// Fourier wavenumber carried by `E^{a - b}`: `k1 (a1 - b1) + k2 (a2 - b2)`.
pub fn wavenumber(pair: WaveNumberPair, alpha: MultiIndex, beta: MultiIndex) -> i64 {
    let (k1, k2) = (i64::from(pair.k1()), i64::from(pair.k2()));
    k1 * (i64::from(alpha.a1) - i64::from(beta.a1)) + k2 * (i64::from(alpha.a2) - i64::from(beta.a2))
}

/// The coefficient ring the recursion runs in.
pub trait Algebra {
    type Value: Clone;

    fn pair(&self) -> WaveNumberPair;
    fn zero(&self) -> Self::Value;
    /// Value of each first-order coefficient.
    fn base(&self) -> Self::Value;
    /// The multiplier `ell(k)` as an element of the ring.
    fn multiplier(&self, wavenumber: i64) -> Result<Self::Value>;
    /// `acc += a * b`.
    fn add_product(&self, acc: &mut Self::Value, a: &Self::Value, b: &Self::Value);
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
}

/// Any source of real multiplier values drives a numeric recursion.
pub trait MultiplierSource {
    fn pair(&self) -> WaveNumberPair;
    fn ell(&self, wavenumber: i64) -> Result<f64>;
}

/// Real-valued recursion driven by a [`MultiplierSource`].
#[derive(Debug, Clone)]
pub struct Numeric<M>(pub M);

impl<M: MultiplierSource> Algebra for Numeric<M> {
    type Value = f64;

    fn pair(&self) -> WaveNumberPair {
        self.0.pair()
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn base(&self) -> f64 {
        0.5
    }
    fn multiplier(&self, wavenumber: i64) -> Result<f64> {
        self.0.ell(wavenumber)
    }
    fn add_product(&self, acc: &mut f64, a: &f64, b: &f64) {
        *acc += a * b;
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
}

type Key = (MultiIndex, MultiIndex);

/// Canonical memo key: the lexicographically smaller of `(a, b)` and `(b, a)`.
fn canonical(alpha: MultiIndex, beta: MultiIndex) -> Key {
    if (alpha, beta) <= (beta, alpha) {
        (alpha, beta)
    } else {
        (beta, alpha)
    }
}

fn is_first_order(alpha: MultiIndex, beta: MultiIndex) -> bool {
    alpha.order() + beta.order() == 1
}

/// One memoized evaluation of the recursion.
///
/// A session is tied to one algebra (one `(c, kappa, T)`, one endpoint, or the
/// symbolic ring) and is not shared between threads; parallel callers build
/// their own.
pub struct Session<A: Algebra> {
    algebra: A,
    memo: HashMap<Key, A::Value>,
}

impl<A: Algebra> Session<A> {
    pub fn new(algebra: A) -> Self {
        Self { algebra, memo: HashMap::new() }
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    /// Number of stored coefficients.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `û_{alpha, beta}` for `|alpha| + |beta| >= 1`. The zero index yields zero.
    pub fn u(&mut self, alpha: MultiIndex, beta: MultiIndex) -> Result<A::Value> {
        self.ensure(alpha, beta)?;
        Ok(self.lookup(alpha, beta))
    }

    /// `û²_{alpha, beta}`; zero for `|alpha| + |beta| < 2`.
    pub fn u2(&mut self, alpha: MultiIndex, beta: MultiIndex) -> Result<A::Value> {
        self.convolution(alpha, beta)
    }

    fn lookup(&self, alpha: MultiIndex, beta: MultiIndex) -> A::Value {
        if alpha.order() + beta.order() == 0 {
            return self.algebra.zero();
        }
        self.memo[&canonical(alpha, beta)].clone()
    }

    fn ensure(&mut self, alpha: MultiIndex, beta: MultiIndex) -> Result<()> {
        if alpha.order() + beta.order() == 0 {
            return Ok(());
        }
        let key = canonical(alpha, beta);
        if self.memo.contains_key(&key) {
            return Ok(());
        }
        let value = if is_first_order(alpha, beta) {
            self.algebra.base()
        } else {
            let ell = self.algebra.multiplier(wavenumber(self.algebra.pair(), key.0, key.1))?;
            let sum = self.convolution(key.0, key.1)?;
            self.algebra.mul(&ell, &sum)
        };
        self.memo.insert(key, value);
        Ok(())
    }

    /// `sum û_{a',b'} û_{a'',b''}` over ordered splittings into nonzero parts.
    fn convolution(&mut self, alpha: MultiIndex, beta: MultiIndex) -> Result<A::Value> {
        let total = alpha.order() + beta.order();
        let mut splits = Vec::new();
        for a1 in alpha.below() {
            for b1 in beta.below() {
                let order = a1.order() + b1.order();
                if order == 0 || order == total {
                    continue;
                }
                splits.push((a1, b1, alpha - a1, beta - b1));
            }
        }
        for &(a1, b1, a2, b2) in &splits {
            self.ensure(a1, b1)?;
            self.ensure(a2, b2)?;
        }
        let mut acc = self.algebra.zero();
        for (a1, b1, a2, b2) in splits {
            let left = &self.memo[&canonical(a1, b1)];
            let right = &self.memo[&canonical(a2, b2)];
            self.algebra.add_product(&mut acc, left, right);
        }
        Ok(acc)
    }
}

/// The multi-indices `((k2 - 1, 0), (0, k1))` whose `û²` coefficient is `phi`.
pub fn phi_indices(pair: WaveNumberPair) -> (MultiIndex, MultiIndex) {
    (MultiIndex::new(pair.k2() - 1, 0), MultiIndex::new(0, pair.k1()))
}

/// `û_{alpha, beta}` at a numeric multiplier context.
pub fn coefficient_u(ctx: &MultiplierContext, alpha: MultiIndex, beta: MultiIndex) -> Result<f64> {
    if alpha.order() + beta.order() == 0 {
        return Err(crate::Error::domain("coefficient_u needs |alpha| + |beta| >= 1"));
    }
    Session::new(Numeric(*ctx)).u(alpha, beta)
}

/// `û²_{alpha, beta}` at a numeric multiplier context.
pub fn coefficient_u2(ctx: &MultiplierContext, alpha: MultiIndex, beta: MultiIndex) -> Result<f64> {
    if alpha.order() + beta.order() < 2 {
        return Err(crate::Error::domain("coefficient_u2 needs |alpha| + |beta| >= 2"));
    }
    Session::new(Numeric(*ctx)).u2(alpha, beta)
}

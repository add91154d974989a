//! Truncated Fourier series of real `2*pi`-periodic functions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Coefficients `u_k`, `-K <= k <= K`, of a real trigonometric polynomial
/// `u(x) = sum u_k e^{i k x}`. Conjugate symmetry `u_{-k} = conj(u_k)` is
/// kept by every mutator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Modes {
    truncation: usize,
    coeffs: Vec<Complex64>,
}

impl Modes {
    pub fn zeros(truncation: usize) -> Self {
        Self { truncation, coeffs: vec![Complex64::new(0.0, 0.0); 2 * truncation + 1] }
    }

    /// Builds a real series from the nonnegative modes `u_0, ..., u_K`.
    /// The imaginary part of `u_0` is discarded.
    pub fn from_nonnegative(half: &[Complex64]) -> Self {
        assert!(!half.is_empty(), "need at least the zero mode");
        let mut m = Self::zeros(half.len() - 1);
        for (k, &c) in half.iter().enumerate() {
            m.set(k as i64, c);
        }
        m
    }

    /// `K`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn index(&self, k: i64) -> Option<usize> {
        let shifted = k + self.truncation as i64;
        (0..self.coeffs.len() as i64).contains(&shifted).then_some(shifted as usize)
    }

    /// `u_k`, zero outside the resolved range.
    pub fn get(&self, k: i64) -> Complex64 {
        self.index(k).map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    /// Sets `u_k` and `u_{-k} = conj(u_k)`. Panics outside `|k| <= K`.
    pub fn set(&mut self, k: i64, value: Complex64) {
        let value = if k == 0 { Complex64::new(value.re, 0.0) } else { value };
        let i = self.index(k).expect("mode outside truncation");
        let j = self.index(-k).expect("mode outside truncation");
        self.coeffs[i] = value;
        self.coeffs[j] = value.conj();
    }

    /// Iterates `(k, u_k)` for `k = -K..=K`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let shift = self.truncation as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - shift, c))
    }

    /// Applies `u_k -> f(k) u_k` for a real, even `f`.
    pub fn scale_by(&self, mut f: impl FnMut(i64) -> f64) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c *= f(i as i64 - self.truncation as i64);
        }
        out
    }

    /// Applies `u_k -> f(k) u_k` for complex `f` with `f(-k) = conj(f(k))`.
    pub fn map_complex(&self, mut f: impl FnMut(i64, Complex64) -> Complex64) -> Self {
        let mut out = self.clone();
        for k in 0..=self.truncation as i64 {
            out.set(k, f(k, self.get(k)));
        }
        out
    }

    /// `u'`, with modes `i k u_k`.
    pub fn derivative(&self) -> Self {
        self.map_complex(|k, c| c * Complex64::new(0.0, k as f64))
    }

    /// The square `u^2`, truncated back to `K`.
    ///
    /// Computed by direct convolution over all resolved modes, so every
    /// retained coefficient is exact (no aliasing).
    pub fn square(&self) -> Self {
        let k_max = self.truncation as i64;
        let mut out = Self::zeros(self.truncation);
        for k in 0..=k_max {
            let lo = (k - k_max).max(-k_max);
            let hi = k_max.min(k + k_max);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in lo..=hi {
                acc += self.get(j) * self.get(k - j);
            }
            out.set(k, acc);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.truncation, other.truncation, "truncation mismatch");
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.truncation, other.truncation, "truncation mismatch");
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        out
    }

    /// `(1/2pi) int f g dx = sum f_k conj(g_k)`; real for real series.
    pub fn inner(&self, other: &Self) -> f64 {
        self.iter().map(|(k, c)| (c * other.get(k).conj()).re).sum()
    }

    /// `max |u_k|`.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `sqrt(sum |u_k|^2)`, the normalized `L^2` norm.
    pub fn l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `u(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = self.get(0).re;
        for k in 1..=self.truncation as i64 {
            let e = Complex64::from_polar(1.0, k as f64 * x);
            acc += 2.0 * (self.get(k) * e).re;
        }
        acc
    }

    /// Samples `u` at `n` equispaced points of `[0, 2 pi)`.
    pub fn sample(&self, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let x = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                (x, self.eval(x))
            })
            .collect()
    }

    /// The series of `u(x + a)`, with modes `e^{i k a} u_k`.
    pub fn translate(&self, a: f64) -> Self {
        self.map_complex(|k, c| c * Complex64::from_polar(1.0, k as f64 * a))
    }

    /// The series of `u(-x)`, with modes `conj(u_k)`.
    pub fn reflect(&self) -> Self {
        self.map_complex(|_, c| c.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn conjugate_symmetry_is_maintained() {
        let mut m = Modes::zeros(4);
        m.set(3, c(1.0, 2.0));
        assert_eq!(m.get(-3), c(1.0, -2.0));
        m.set(0, c(5.0, 7.0));
        assert_eq!(m.get(0), c(5.0, 0.0));
        assert_eq!(m.get(9), c(0.0, 0.0));
    }

    #[test]
    fn square_of_cosine() {
        // cos(2x)^2 = 1/2 + cos(4x)/2
        let mut m = Modes::zeros(8);
        m.set(2, c(0.5, 0.0));
        let s = m.square();
        assert!((s.get(0).re - 0.5).abs() < 1e-16);
        assert!((s.get(4).re - 0.25).abs() < 1e-16);
        assert_eq!(s.get(2), c(0.0, 0.0));
    }

    #[test]
    fn square_matches_pointwise_product_on_resolved_modes() {
        let mut m = Modes::zeros(6);
        m.set(1, c(0.3, -0.1));
        m.set(2, c(-0.2, 0.4));
        m.set(3, c(0.05, 0.0));
        m.set(0, c(0.1, 0.0));
        let s = m.square();
        for x in [0.0, 0.7, 2.1, 5.5] {
            assert!((s.eval(x) - m.eval(x).powi(2)).abs() < 1e-14);
        }
    }

    #[test]
    fn inner_product_of_cosines_is_half() {
        let mut m = Modes::zeros(5);
        m.set(3, c(0.5, 0.0));
        assert!((m.inner(&m) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn eval_and_derivative() {
        let mut m = Modes::zeros(4);
        m.set(2, Complex64::from_polar(0.5, 2.0 * 0.3));
        // cos(2(x + 0.3))
        for x in [0.0, 1.0, 2.5] {
            assert!((m.eval(x) - (2.0 * (x + 0.3)).cos()).abs() < 1e-15);
            assert!((m.derivative().eval(x) + 2.0 * (2.0 * (x + 0.3)).sin()).abs() < 1e-15);
        }
        assert!((m.eval(-0.3) - 1.0).abs() < 1e-15);
        assert!((m.translate(PI / 4.0).eval(0.0) - (2.0 * (PI / 4.0 + 0.3)).cos()).abs() < 1e-15);
        assert!((m.reflect().eval(1.0) - m.eval(-1.0)).abs() < 1e-15);
    }
}

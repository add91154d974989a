//! Double-double arithmetic for the kernel projections.
//!
//! The odd kernel projection of `J` is of order `r^{k1+k2-1}` while the terms
//! it is assembled from are of order `r^3`; in plain `f64` its rounding
//! noise swamps the Newton tolerance already at moderate amplitudes. Series
//! here carry about 32 significant digits, and so do the multipliers: near
//! the root of `phi` the odd projection is a sum of large cancelling terms in
//! `ell`, so `f64` multipliers would leave a floor of about `1e-9`.
//!
//! Division and the elementary functions are written out here; the ones in
//! `twofloat` are only accurate to about `f64` precision.

use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

use super::Modes;
use crate::coeff::MultiplierContext;
use crate::error::{Error, Result};

pub(crate) type Cdd = Complex<TwoFloat>;

pub(crate) fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

fn cdd(c: Complex64) -> Cdd {
    Complex::new(dd(c.re), dd(c.im))
}

fn zero() -> Cdd {
    cdd(Complex64::new(0.0, 0.0))
}

/// A real series stored by its modes `0..=K`.
#[derive(Debug, Clone)]
pub(crate) struct DdSeries {
    half: Vec<Cdd>,
}

impl DdSeries {
    pub fn zeros(truncation: usize) -> Self {
        Self { half: vec![zero(); truncation + 1] }
    }

    /// `hi + lo`, mode by mode.
    pub fn from_parts(hi: &Modes, lo: Option<&Modes>) -> Self {
        let half = (0..=hi.truncation() as i64)
            .map(|k| {
                let mut c = cdd(hi.get(k));
                if let Some(lo) = lo {
                    c += cdd(lo.get(k));
                }
                c
            })
            .collect();
        Self { half }
    }

    pub fn truncation(&self) -> usize {
        self.half.len() - 1
    }

    pub fn get(&self, k: i64) -> Cdd {
        let i = k.unsigned_abs() as usize;
        match self.half.get(i) {
            None => zero(),
            Some(&c) if k < 0 => c.conj(),
            Some(&c) => c,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { half: self.half.iter().zip(&other.half).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { half: self.half.iter().zip(&other.half).map(|(a, b)| a - b).collect() }
    }

    /// Subtracts an `f64` correction.
    pub fn sub_modes(&self, other: &Modes) -> Self {
        let half = self.half.iter().enumerate().map(|(k, &a)| a - cdd(other.get(k as i64))).collect();
        Self { half }
    }

    pub fn scale_by(&self, mut f: impl FnMut(usize) -> TwoFloat) -> Self {
        let half = self.half.iter().enumerate().map(|(k, &a)| a * f(k)).collect();
        Self { half }
    }

    /// `u^2` truncated to `K`, by direct convolution.
    pub fn square(&self) -> Self {
        let k_max = self.truncation() as i64;
        let half = (0..=k_max)
            .map(|k| {
                let mut acc = zero();
                for j in (k - k_max)..=k_max {
                    acc += self.get(j) * self.get(k - j);
                }
                acc
            })
            .collect();
        let mut out = Self { half };
        out.half[0].im = dd(0.0);
        out
    }

    /// The rounded series and the rounding remainder.
    pub fn split(&self) -> (Modes, Modes) {
        let k_max = self.truncation();
        let mut hi = Modes::zeros(k_max);
        let mut lo = Modes::zeros(k_max);
        for (k, c) in self.half.iter().enumerate() {
            hi.set(k as i64, Complex64::new(c.re.hi(), c.im.hi()));
            lo.set(k as i64, Complex64::new(c.re.lo(), c.im.lo()));
        }
        (hi, lo)
    }

    pub fn max_abs(&self) -> f64 {
        self.half.iter().map(|c| f64::from(c.re).hypot(f64::from(c.im))).fold(0.0, f64::max)
    }
}

/// `a / b` to full double-double accuracy.
pub(crate) fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

fn sqrt(a: TwoFloat) -> TwoFloat {
    if a.hi() <= 0.0 {
        return dd(0.0);
    }
    let y = dd(a.hi().sqrt());
    // One Newton step doubles the ~53 correct bits.
    y + div(a - y * y, y * 2.0)
}

/// `e^x - 1` by its Taylor series, for `|x| <= 1/2`.
fn expm1_series(x: TwoFloat) -> TwoFloat {
    let mut term = x;
    let mut sum = x;
    for n in 2..60 {
        term = div(term * x, dd(f64::from(n)));
        sum += term;
        if term.hi().abs() < 1e-34 * sum.hi().abs() {
            break;
        }
    }
    sum
}

fn exp(x: TwoFloat) -> TwoFloat {
    if x.hi() < -700.0 {
        return dd(0.0);
    }
    let k = (x.hi() / std::f64::consts::LN_2).round();
    let r = x - twofloat::consts::LN_2 * k;
    // Shrink further so the series converges fast, then square back.
    let mut e = expm1_series(r * (1.0 / 256.0)) + 1.0;
    for _ in 0..8 {
        e = e * e;
    }
    let scale = 2f64.powi(k as i32);
    e * scale
}

fn expm1(x: TwoFloat) -> TwoFloat {
    if x.hi().abs() <= 0.5 {
        expm1_series(x)
    } else {
        exp(x) - 1.0
    }
}

/// `m_T(xi)` for `xi >= 0`.
pub(crate) fn symbol(t: f64, xi: TwoFloat) -> TwoFloat {
    if xi.hi() == 0.0 {
        return dd(1.0);
    }
    // tanh(xi) = s / (2 - s) with s = 1 - e^{-2 xi}.
    let s = -expm1(xi * -2.0);
    let tanh_over_xi = div(s, (-s + 2.0) * xi);
    sqrt((xi * xi * t + 1.0) * tanh_over_xi)
}

/// `c - m_T(kappa |k|)`.
pub(crate) fn detuning(ctx: &MultiplierContext, k: i64) -> TwoFloat {
    let xi = TwoFloat::new_mul(ctx.kappa, k.unsigned_abs() as f64);
    -symbol(ctx.t.value(), xi) + ctx.c
}

/// `ell(k)`, zero on the kernel modes; near resonances are refused as in
/// [`MultiplierContext::multiplier`].
pub(crate) fn multiplier(ctx: &MultiplierContext, k: i64) -> Result<TwoFloat> {
    if ctx.multiplier(k)? == 0.0 {
        return Ok(dd(0.0));
    }
    let gap = detuning(ctx, k);
    if gap.hi() == 0.0 {
        return Err(Error::NearResonance { wavenumber: k, gap: 0.0 });
    }
    Ok(div(dd(1.0), gap))
}

/// `z * conj(e)` returned as `(re, im)` in `f64` after the extended product.
pub(crate) fn rotate_back(z: Cdd, e: Complex64) -> (f64, f64) {
    let r = z * cdd(e).conj();
    (f64::from(r.re), f64::from(r.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_agrees_with_f64_series() {
        let mut m = Modes::zeros(6);
        m.set(1, Complex64::new(0.3, -0.1));
        m.set(2, Complex64::new(-0.2, 0.4));
        m.set(5, Complex64::new(0.05, 0.01));
        let (hi, lo) = DdSeries::from_parts(&m, None).square().split();
        let reference = m.square();
        for k in 0..=6 {
            assert!((hi.get(k) - reference.get(k)).norm() < 4e-16);
            assert!(lo.get(k).norm() < 1e-16);
        }
    }

    fn close(a: TwoFloat, b: f64, tol: f64) -> bool {
        ((a - b).hi() / b).abs() < tol
    }

    #[test]
    fn division_and_roots_reach_extended_precision() {
        for i in 1..200 {
            let a = dd(0.037 * f64::from(i)) + dd(1e-19 * f64::from(i));
            let b = dd(1.0 / (f64::from(i) + 0.3)) + dd(3e-20);
            assert!(((div(a, b) * b - a).hi() / a.hi()).abs() < 1e-30);
            let s = sqrt(a);
            assert!(((s * s - a).hi() / a.hi()).abs() < 1e-30);
            let e = exp(a) * exp(-a) - 1.0;
            assert!(e.hi().abs() < 1e-29, "{}", e.hi());
            let e2 = div(exp(a + a), exp(a) * exp(a)) - 1.0;
            assert!(e2.hi().abs() < 1e-28, "{}", e2.hi());
        }
    }

    #[test]
    fn extended_symbol_rounds_to_f64_symbol() {
        use crate::symbol::{eval_symbol, SurfaceTension};
        let t = SurfaceTension::new(0.2).unwrap();
        for xi in [1e-6, 0.01, 0.3, 1.7, 8.0, 40.0] {
            let reference = eval_symbol(t, xi).unwrap();
            assert!(close(symbol(0.2, dd(xi)), reference, 4e-16), "{xi}");
        }
        assert_eq!(symbol(0.2, dd(0.0)).hi(), 1.0);
    }

    #[test]
    fn rotation_by_own_direction_is_real() {
        let v = Complex64::from_polar(0.025, 0.7);
        let z = cdd(v) * dd(-3.0);
        let (re, im) = rotate_back(z, v);
        assert!((re + 3.0 * 0.025 * 0.025).abs() < 1e-18);
        assert!(im.abs() < 1e-33, "{im:e}");
    }
}

use serde::{Deserialize, Serialize};

use super::MultiplierSource;
use crate::error::{Error, Result};
use crate::symbol::{eval_symbol, symbol_difference, BifurcationPoint, SurfaceTension, WaveNumberPair};

/// Smallest admissible `|c - m_T(kappa k)|` off the kernel modes.
pub const RESONANCE_GUARD: f64 = 1e-13;

/// The parameters `(c, kappa, T)` at which `ell(k)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiplierContext {
    pub pair: WaveNumberPair,
    pub c: f64,
    pub kappa: f64,
    #[serde(rename = "T")]
    pub t: SurfaceTension,
}

impl MultiplierContext {
    pub fn new(pair: WaveNumberPair, c: f64, kappa: f64, t: SurfaceTension) -> Result<Self> {
        if !(c.is_finite() && c > 0.0 && kappa.is_finite() && kappa > 0.0) {
            return Err(Error::domain(format!("need c, kappa > 0, got c = {c}, kappa = {kappa}")));
        }
        Ok(Self { pair, c, kappa, t })
    }

    pub fn at_bifurcation(point: &BifurcationPoint) -> Self {
        Self { pair: point.pair, c: point.c0, kappa: point.kappa0, t: point.t }
    }

    /// `c - m_T(kappa |k|)`, formed as `(c - m_T(kappa k1)) + (m_T(kappa k1) - m_T(kappa |k|))`
    /// so that the second difference stays accurate when `kappa` is small.
    pub fn detuning(&self, k: i64) -> f64 {
        let anchor = self.kappa * f64::from(self.pair.k1());
        let xi = self.kappa * k.unsigned_abs() as f64;
        let offset = self.c - eval_symbol(self.t, anchor).expect("finite symbol argument");
        offset + symbol_difference(self.t, anchor, xi)
    }

    /// `ell(k) = 1 / (c - m_T(kappa k))`, zero on the kernel modes `±k1, ±k2`.
    pub fn multiplier(&self, k: i64) -> Result<f64> {
        if self.pair.is_kernel_mode(k) {
            return Ok(0.0);
        }
        let gap = self.detuning(k);
        if gap.is_nan() || gap.abs() < RESONANCE_GUARD {
            return Err(Error::NearResonance { wavenumber: k, gap: gap.abs() });
        }
        Ok(1.0 / gap)
    }
}

impl MultiplierSource for MultiplierContext {
    fn pair(&self) -> WaveNumberPair {
        self.pair
    }
    fn ell(&self, wavenumber: i64) -> Result<f64> {
        self.multiplier(wavenumber)
    }
}

/// An end of the weak surface tension interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    /// `T -> 0`.
    Low,
    /// `T -> 1/3`.
    High,
}

/// `lim ell(n) / ell(k2 + 1)` at the given endpoint, from the closed forms.
pub fn limit_ratio(pair: WaveNumberPair, endpoint: Endpoint, n: u32) -> Result<f64> {
    if n == 0 || pair.is_kernel_mode(i64::from(n)) {
        return Err(Error::domain(format!("limit ratio undefined at n = {n} for pair {pair}")));
    }
    let (k1, k2) = (f64::from(pair.k1()), f64::from(pair.k2()));
    let reference = k2 + 1.0;
    let n = f64::from(n);
    Ok(match endpoint {
        Endpoint::Low => {
            let root = (k1 + k2).sqrt();
            let term = |m: f64| root - (k1 * k2 / m + m).sqrt();
            term(reference) / term(n)
        }
        Endpoint::High => {
            let term = |m: f64| -(m * m - k1 * k1) * (m * m - k2 * k2);
            term(reference) / term(n)
        }
    })
}

/// Multiplier source returning the normalized endpoint limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRatio {
    pub pair: WaveNumberPair,
    pub endpoint: Endpoint,
}

impl MultiplierSource for LimitRatio {
    fn pair(&self) -> WaveNumberPair {
        self.pair
    }
    fn ell(&self, wavenumber: i64) -> Result<f64> {
        if self.pair.is_kernel_mode(wavenumber) {
            return Ok(0.0);
        }
        let n = u32::try_from(wavenumber.unsigned_abs())
            .map_err(|_| Error::domain(format!("wavenumber {wavenumber} out of range")))?;
        limit_ratio(self.pair, self.endpoint, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::double_bifurcation;

    fn pair(k1: u32, k2: u32) -> WaveNumberPair {
        WaveNumberPair::new(k1, k2).unwrap()
    }

    fn ctx(p: WaveNumberPair, t: f64) -> MultiplierContext {
        let bp = double_bifurcation(p, SurfaceTension::new(t).unwrap()).unwrap();
        MultiplierContext::at_bifurcation(&bp)
    }

    #[test]
    fn kernel_modes_vanish_and_multiplier_is_even() {
        let c = ctx(pair(2, 5), 0.15);
        for k in [2, -2, 5, -5] {
            assert_eq!(c.multiplier(k).unwrap(), 0.0);
        }
        for k in [0, 1, 3, 4, 6, 9, 17] {
            assert_eq!(c.multiplier(k).unwrap(), c.multiplier(-k).unwrap());
        }
    }

    #[test]
    fn zero_mode_is_one_over_c_minus_one() {
        let c = ctx(pair(2, 5), 0.15);
        let expected = 1.0 / (c.c - 1.0);
        assert!((c.multiplier(0).unwrap() - expected).abs() < 1e-13 * expected.abs());
    }

    #[test]
    fn signs_at_the_25_bifurcation() {
        let c = ctx(pair(2, 5), 0.1215);
        assert!(c.multiplier(3).unwrap() > 0.0);
        assert!(c.multiplier(4).unwrap() > 0.0);
        for k in [1, 6, 8, 10] {
            assert!(c.multiplier(k).unwrap() < 0.0, "ell({k})");
        }
    }

    #[test]
    fn resonance_is_reported() {
        let p = pair(2, 5);
        let bp = double_bifurcation(p, SurfaceTension::new(0.2).unwrap()).unwrap();
        // Put c exactly on m_T(3 kappa0).
        let c3 = eval_symbol(bp.t, 3.0 * bp.kappa0).unwrap();
        let c = MultiplierContext::new(p, c3, bp.kappa0, bp.t).unwrap();
        match c.multiplier(3) {
            Err(Error::NearResonance { wavenumber, .. }) => assert_eq!(wavenumber, 3),
            other => panic!("expected resonance, got {other:?}"),
        }
    }

    #[test]
    fn reference_ratio_is_one() {
        for p in [pair(2, 5), pair(3, 7), pair(1, 3)] {
            for e in [Endpoint::Low, Endpoint::High] {
                assert_eq!(limit_ratio(p, e, p.k2() + 1).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn limit_ratio_rejects_kernel_modes() {
        let p = pair(2, 5);
        assert!(limit_ratio(p, Endpoint::Low, 2).is_err());
        assert!(limit_ratio(p, Endpoint::High, 5).is_err());
        assert!(limit_ratio(p, Endpoint::High, 0).is_err());
    }

    #[test]
    fn high_endpoint_denominator_factorizes() {
        // n^2 (k1^2 + k2^2) - k1^2 k2^2 - n^4 == -(n^2 - 4)(n^2 - 25) for (2, 5)
        let p = pair(2, 5);
        let num = 36.0 * 29.0 - 100.0 - 1296.0;
        for n in [1u32, 3, 4, 6, 7, 8, 10, 13] {
            let nf = f64::from(n);
            let expanded = nf * nf * 29.0 - 100.0 - nf.powi(4);
            let factored = -(nf * nf - 4.0) * (nf * nf - 25.0);
            assert_eq!(expanded, factored);
            assert_eq!(limit_ratio(p, Endpoint::High, n).unwrap(), num / factored);
        }
    }

    #[test]
    fn low_endpoint_agrees_with_small_t() {
        let p = pair(2, 5);
        let c = ctx(p, 1e-6);
        let direct = c.multiplier(1).unwrap() / c.multiplier(6).unwrap();
        let limit = limit_ratio(p, Endpoint::Low, 1).unwrap();
        assert!(((direct - limit) / limit).abs() < 0.02, "{direct} vs {limit}");
    }

    #[test]
    fn high_endpoint_agrees_with_t_near_third() {
        let p = pair(2, 5);
        let c = ctx(p, 1.0 / 3.0 - 1e-6);
        for n in [1i64, 3, 4, 8, 10] {
            let direct = c.multiplier(n).unwrap() / c.multiplier(6).unwrap();
            let limit = limit_ratio(p, Endpoint::High, n as u32).unwrap();
            assert!(((direct - limit) / limit).abs() < 0.02, "n = {n}: {direct} vs {limit}");
        }
    }
}

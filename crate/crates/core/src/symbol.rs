//! The dispersion symbol `m_T` and double bifurcation points.
//!
//! `m_T(xi) = sqrt((1 + T xi^2) tanh(xi) / xi)`. For `0 < T < 1/3` the symbol
//! first decreases and then increases, with a single turning point `xi_T`;
//! every pair of integers `k1 < k2` then admits a unique scaling `kappa0` with
//! `m_T(kappa0 k1) = m_T(kappa0 k2) = c0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{brent, BrentOptions};

/// Upper end of the weak surface tension regime.
pub const WEAK_LIMIT: f64 = 1.0 / 3.0;

/// Maclaurin coefficients of `tanh(x) / x` in powers of `x^2`.
const TANH_OVER_X: [f64; 12] = [
    1.0,
    -1.0 / 3.0,
    2.0 / 15.0,
    -17.0 / 315.0,
    62.0 / 2835.0,
    -1382.0 / 155925.0,
    21844.0 / 6081075.0,
    -929569.0 / 638512875.0,
    6404582.0 / 10854718875.0,
    -443861162.0 / 1856156927625.0,
    18888466084.0 / 194896477400625.0,
    -113927491862.0 / 2900518163668125.0,
];

/// Below this argument `tanh(x)/x` uses its four-term Maclaurin polynomial.
const SMALL_ARG: f64 = 1e-2;
/// Below this argument symbol differences and derivatives use the long series.
const SERIES_ARG: f64 = 0.25;

/// Dimensionless surface tension `T > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SurfaceTension(f64);

impl SurfaceTension {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::domain(format!("surface tension must be finite and > 0, got {value}")))
        }
    }

    /// A weak surface tension, `0 < T < 1/3`.
    pub fn weak(value: f64) -> Result<Self> {
        let t = Self::new(value)?;
        t.require_weak()?;
        Ok(t)
    }

    /// The purely gravitational symbol, `T = 0`. Only meaningful for
    /// [`eval_symbol`] and [`eval_symbol_deriv`].
    pub fn gravity_only() -> Self {
        Self(0.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_weak(self) -> bool {
        self.0 > 0.0 && self.0 < WEAK_LIMIT
    }

    pub fn require_weak(self) -> Result<()> {
        if self.is_weak() {
            Ok(())
        } else {
            Err(Error::domain(format!("surface tension {} outside the weak regime (0, 1/3)", self.0)))
        }
    }
}

/// A coprime pair of wave numbers `1 <= k1 < k2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WaveNumberPair {
    k1: u32,
    k2: u32,
}

impl WaveNumberPair {
    /// Builds a pair, dividing out any common factor.
    pub fn new(k1: u32, k2: u32) -> Result<Self> {
        Self::reduce(k1, k2).map(|(pair, _)| pair)
    }

    /// Like [`WaveNumberPair::new`] but also reports the common factor that
    /// was divided out (1 when the input was already coprime).
    pub fn reduce(k1: u32, k2: u32) -> Result<(Self, u32)> {
        if k1 == 0 || k1 >= k2 {
            return Err(Error::domain(format!("wave numbers must satisfy 1 <= k1 < k2, got ({k1}, {k2})")));
        }
        let g = gcd(k1, k2);
        Ok((Self { k1: k1 / g, k2: k2 / g }, g))
    }

    pub fn k1(self) -> u32 {
        self.k1
    }

    pub fn k2(self) -> u32 {
        self.k2
    }

    /// Whether `|k|` is one of the kernel modes.
    pub fn is_kernel_mode(self, k: i64) -> bool {
        let k = k.unsigned_abs();
        k == u64::from(self.k1) || k == u64::from(self.k2)
    }

    /// Number of multiplier factors per monomial of `phi`, `k1 + k2 - 3`.
    pub fn degree(self) -> u32 {
        self.k1 + self.k2 - 3
    }

    /// Power of two dividing the integer expansion of `phi`, `k1 + k2 - 1`.
    pub fn prefactor_exponent(self) -> u32 {
        self.k1 + self.k2 - 1
    }
}

impl std::fmt::Display for WaveNumberPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.k1, self.k2)
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A double bifurcation point `m_T(kappa0 k1) = c0 = m_T(kappa0 k2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BifurcationPoint {
    pub pair: WaveNumberPair,
    #[serde(rename = "T")]
    pub t: SurfaceTension,
    pub c0: f64,
    pub kappa0: f64,
}

impl BifurcationPoint {
    /// `|m_T(kappa0 k1) - m_T(kappa0 k2)|`.
    pub fn residual(&self) -> f64 {
        let (a, b) = self.kernel_arguments();
        symbol_difference(self.t, a, b).abs()
    }

    /// `(kappa0 k1, kappa0 k2)`.
    pub fn kernel_arguments(&self) -> (f64, f64) {
        (self.kappa0 * f64::from(self.pair.k1()), self.kappa0 * f64::from(self.pair.k2()))
    }
}

fn tanh_over_x(x: f64) -> f64 {
    let x = x.abs();
    if x < SMALL_ARG {
        let s = x * x;
        1.0 + s * (TANH_OVER_X[1] + s * (TANH_OVER_X[2] + s * TANH_OVER_X[3]))
    } else {
        x.tanh() / x
    }
}

/// Derivative of `tanh(x) / x`.
fn tanh_over_x_deriv(x: f64) -> f64 {
    if x.abs() < SERIES_ARG {
        let s = x * x;
        let mut acc = 0.0;
        for j in (1..TANH_OVER_X.len()).rev() {
            acc = acc * s + 2.0 * j as f64 * TANH_OVER_X[j];
        }
        acc * x
    } else {
        let sech = 1.0 / x.cosh();
        (x * sech * sech - x.tanh()) / (x * x)
    }
}

/// `g(xi) = m_T(xi)^2 = (1 + T xi^2) tanh(xi) / xi`.
fn symbol_squared(t: f64, xi: f64) -> f64 {
    (1.0 + t * xi * xi) * tanh_over_x(xi)
}

/// `g'(xi)`.
fn symbol_squared_deriv(t: f64, xi: f64) -> f64 {
    2.0 * t * xi * tanh_over_x(xi) + (1.0 + t * xi * xi) * tanh_over_x_deriv(xi)
}

/// Evaluates `m_T(xi)`. Even in `xi`, with `m_T(0) = 1`.
pub fn eval_symbol(t: SurfaceTension, xi: f64) -> Result<f64> {
    if !xi.is_finite() {
        return Err(Error::domain(format!("symbol argument must be finite, got {xi}")));
    }
    Ok(symbol_squared(t.value(), xi).sqrt())
}

/// Evaluates `m_T'(xi)` for `xi > 0` from the closed-form derivative.
pub fn eval_symbol_deriv(t: SurfaceTension, xi: f64) -> Result<f64> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::domain(format!("symbol derivative needs finite xi > 0, got {xi}")));
    }
    let g = symbol_squared(t.value(), xi);
    Ok(symbol_squared_deriv(t.value(), xi) / (2.0 * g.sqrt()))
}

/// `m_T(a) - m_T(b)`, free of cancellation when both arguments are small.
///
/// Near `T = 1/3` the bifurcation scaling `kappa0` tends to zero and all
/// resolved symbol values crowd around 1; the difference is then formed from
/// the Maclaurin series of `m_T^2` term by term.
pub fn symbol_difference(t: SurfaceTension, a: f64, b: f64) -> f64 {
    let tv = t.value();
    let (a, b) = (a.abs(), b.abs());
    if a == b {
        return 0.0;
    }
    let ga = symbol_squared(tv, a);
    let gb = symbol_squared(tv, b);
    let dg = if a.max(b) < SERIES_ARG {
        let (sa, sb) = (a * a, b * b);
        let diff = (a - b) * (a + b);
        // a^{2j} - b^{2j} = (sa - sb) * sum_{i<j} sa^i sb^{j-1-i}
        let mut acc = 0.0;
        let mut partial = 0.0; // sum_{i<j} sa^i sb^{j-1-i}
        let mut sa_pow = 1.0; // sa^{j-1}
        for j in 1..TANH_OVER_X.len() {
            partial = partial * sb + sa_pow;
            sa_pow *= sa;
            let coeff = TANH_OVER_X[j] + tv * TANH_OVER_X[j - 1];
            acc += coeff * partial;
        }
        acc * diff
    } else {
        ga - gb
    };
    dg / (ga.sqrt() + gb.sqrt())
}

/// `g'(xi) / xi`, which has the sign of `m_T'(xi)` and stays O(1) as `xi -> 0`.
fn scaled_slope(t: f64, xi: f64) -> f64 {
    if xi < SERIES_ARG {
        let s = xi * xi;
        // d/dxi sum G_j xi^{2j} / xi = sum 2 j G_j xi^{2j-2}
        let mut acc = 0.0;
        for j in (1..TANH_OVER_X.len()).rev() {
            let coeff = TANH_OVER_X[j] + t * TANH_OVER_X[j - 1];
            acc = acc * s + 2.0 * j as f64 * coeff;
        }
        acc
    } else {
        symbol_squared_deriv(t, xi) / xi
    }
}

/// The unique `xi_T > 0` where `m_T'` changes sign, for `0 < T < 1/3`.
pub fn turning_point(t: SurfaceTension) -> Result<f64> {
    t.require_weak()?;
    let tv = t.value();
    let mut prev = (2f64.powi(-20), scaled_slope(tv, 2f64.powi(-20)));
    for j in -19..=40 {
        let xi = 2f64.powi(j);
        let s = scaled_slope(tv, xi);
        if prev.1 < 0.0 && s >= 0.0 {
            if s == 0.0 {
                return Ok(xi);
            }
            let opts = BrentOptions { xtol: 1e-14, ftol: 0.0, max_iter: 200 };
            let root = brent(|x| Ok(scaled_slope(tv, x)), prev.0, xi, opts, "turning point")?;
            return Ok(root.x);
        }
        prev = (xi, s);
    }
    Err(Error::Bracket {
        context: format!("turning point scan for T = {tv}"),
        a: 2f64.powi(-20),
        b: 2f64.powi(40),
        fa: scaled_slope(tv, 2f64.powi(-20)),
        fb: scaled_slope(tv, 2f64.powi(40)),
    })
}

/// Residual bound accepted for `|m_T(kappa0 k1) - m_T(kappa0 k2)|`.
pub const BIFURCATION_RESIDUAL_TOL: f64 = 1e-13;

/// Solves `m_T(kappa k1) = m_T(kappa k2)` for the double bifurcation point.
pub fn double_bifurcation(pair: WaveNumberPair, t: SurfaceTension) -> Result<BifurcationPoint> {
    let xi_t = turning_point(t)?;
    let (k1, k2) = (f64::from(pair.k1()), f64::from(pair.k2()));
    let lo = xi_t / k2;
    let hi = xi_t / k1;
    let gap = |kappa: f64| Ok(symbol_difference(t, kappa * k1, kappa * k2) / (kappa * kappa));
    let opts = BrentOptions { xtol: 1e-14, ftol: 0.0, max_iter: 300 };
    let root = brent(gap, lo, hi, opts, &format!("double bifurcation {pair}, T = {}", t.value()))?;
    let kappa0 = root.x;
    let point = BifurcationPoint { pair, t, c0: eval_symbol(t, kappa0 * k1)?, kappa0 };
    let residual = point.residual();
    if residual > BIFURCATION_RESIDUAL_TOL {
        return Err(Error::NotConverged {
            what: format!("double bifurcation {pair}, T = {}", t.value()),
            iterations: root.iterations,
            residual,
        });
    }
    let (a, b) = point.kernel_arguments();
    let (da, db) = (eval_symbol_deriv(t, a)?, eval_symbol_deriv(t, b)?);
    if !(da < 0.0 && db > 0.0) {
        return Err(Error::NotConverged {
            what: format!("double bifurcation {pair}: slope signs m'(kappa k1) = {da:e}, m'(kappa k2) = {db:e}"),
            iterations: root.iterations,
            residual,
        });
    }
    Ok(point)
}

/// `(k1 tanh(kappa k2) - k2 tanh(kappa k1)) / (k1 tanh(kappa k1) - k2 tanh(kappa k2))`,
/// which equals `T kappa^2 k1 k2` exactly at a double bifurcation point.
pub fn bifurcation_ratio(pair: WaveNumberPair, kappa: f64) -> f64 {
    let (k1, k2) = (f64::from(pair.k1()), f64::from(pair.k2()));
    let (t1, t2) = ((kappa * k1).tanh(), (kappa * k2).tanh());
    (k1 * t2 - k2 * t1) / (k1 * t1 - k2 * t2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: f64) -> SurfaceTension {
        SurfaceTension::new(v).unwrap()
    }

    #[test]
    fn symbol_at_origin_is_one() {
        assert_eq!(eval_symbol(t(0.25), 0.0).unwrap(), 1.0);
        assert_eq!(eval_symbol(t(0.01), 0.0).unwrap(), 1.0);
    }

    #[test]
    fn symbol_rejects_non_finite() {
        assert!(matches!(eval_symbol(t(0.2), f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(eval_symbol(t(0.2), f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn derivative_rejects_nonpositive() {
        assert!(eval_symbol_deriv(t(0.2), 0.0).is_err());
        assert!(eval_symbol_deriv(t(0.2), -1.0).is_err());
    }

    #[test]
    fn small_argument_branch_is_continuous() {
        let tv = t(0.3);
        let below = eval_symbol(tv, SMALL_ARG * (1.0 - 1e-12)).unwrap();
        let above = eval_symbol(tv, SMALL_ARG * (1.0 + 1e-12)).unwrap();
        assert!((below - above).abs() < 1e-15);
    }

    #[test]
    fn derivative_series_matches_closed_form_at_switch() {
        let x = SERIES_ARG;
        let series = {
            let s = x * x;
            let mut acc = 0.0;
            for j in (1..TANH_OVER_X.len()).rev() {
                acc = acc * s + 2.0 * j as f64 * TANH_OVER_X[j];
            }
            acc * x
        };
        let sech = 1.0 / x.cosh();
        let closed = (x * sech * sech - x.tanh()) / (x * x);
        assert!((series - closed).abs() < 1e-14);
    }

    #[test]
    fn difference_series_matches_direct() {
        let tv = t(0.2);
        for &(a, b) in &[(0.1, 0.2), (0.01, 0.24), (0.2, 0.05)] {
            let direct = eval_symbol(tv, a).unwrap() - eval_symbol(tv, b).unwrap();
            let accurate = symbol_difference(tv, a, b);
            assert!((direct - accurate).abs() < 1e-15, "{a} {b}: {direct} vs {accurate}");
        }
    }

    #[test]
    fn pair_is_reduced() {
        let (pair, g) = WaveNumberPair::reduce(2, 4).unwrap();
        assert_eq!((pair.k1(), pair.k2(), g), (1, 2, 2));
        assert_eq!(WaveNumberPair::new(6, 15).unwrap(), WaveNumberPair::new(2, 5).unwrap());
        assert!(WaveNumberPair::new(3, 3).is_err());
        assert!(WaveNumberPair::new(0, 3).is_err());
        assert!(WaveNumberPair::new(5, 2).is_err());
    }

    #[test]
    fn weak_regime_is_enforced() {
        assert!(turning_point(t(0.5)).is_err());
        assert!(turning_point(t(1.0 / 3.0)).is_err());
        assert!(double_bifurcation(WaveNumberPair::new(2, 5).unwrap(), t(0.4)).is_err());
        assert!(SurfaceTension::new(0.0).is_err());
        assert!(SurfaceTension::new(-1.0).is_err());
    }
}

//! The symmetry-breaking function `phi(T; k1, k2)` and pair classification.
//!
//! `phi` is the coefficient `û²_{(k2-1,0),(0,k1)}` evaluated at the double
//! bifurcation point for `T`. A root `T0` in the weak regime, where `phi`
//! changes sign, marks a point from which asymmetric waves bifurcate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{phi_indices, Endpoint, LimitRatio, MultiplierContext, Numeric, Session};
use crate::error::{Error, Result};
use crate::roots::{brent, BrentOptions};
use crate::symbol::{double_bifurcation, BifurcationPoint, SurfaceTension, WaveNumberPair, WEAK_LIMIT};

/// Distance kept from the ends of `(0, 1/3)` when sampling.
pub const ENDPOINT_MARGIN: f64 = 1e-4;
pub const DEFAULT_GRID: usize = 200;
pub const MIN_GRID: usize = 16;
/// Bracket width at which a root of `phi` is accepted.
pub const ROOT_XTOL: f64 = 1e-10;
/// Step of the central difference used for the slope at a root.
pub const SLOPE_STEP: f64 = 1e-5;

/// `phi` at one surface tension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiSample {
    #[serde(rename = "T")]
    pub t: SurfaceTension,
    pub value: f64,
    pub bifurcation: BifurcationPoint,
}

impl PhiSample {
    /// For `k1 = 1` the value is defined but never vanishes; callers may
    /// want to flag such samples.
    pub fn k1_is_one(&self) -> bool {
        self.bifurcation.pair.k1() == 1
    }
}

/// A root of `phi` with its final bracket and the slope there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiRoot {
    #[serde(rename = "T0")]
    pub t0: f64,
    pub bracket: (f64, f64),
    /// Central difference of `phi` at `t0`; nonzero suggests a simple root.
    pub slope: f64,
}

fn phi_at(point: &BifurcationPoint) -> Result<f64> {
    let ctx = MultiplierContext::at_bifurcation(point);
    let (alpha, beta) = phi_indices(point.pair);
    let value = Session::new(Numeric(ctx)).u2(alpha, beta)?;
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("phi({}; {})", point.t.value(), point.pair)));
    }
    Ok(value)
}

/// `phi(T; k1, k2)`.
pub fn phi_eval(pair: WaveNumberPair, t: SurfaceTension) -> Result<PhiSample> {
    let bifurcation = double_bifurcation(pair, t)?;
    Ok(PhiSample { t, value: phi_at(&bifurcation)?, bifurcation })
}

fn phi_value(pair: WaveNumberPair, t: f64) -> Result<f64> {
    Ok(phi_eval(pair, SurfaceTension::weak(t)?)?.value)
}

/// `phi(T) / ell(k2 + 1)^M` with `M = k1 + k2 - 3`, the quantity whose endpoint
/// limits [`phi_limits`] returns.
pub fn phi_normalized(pair: WaveNumberPair, t: SurfaceTension) -> Result<f64> {
    let sample = phi_eval(pair, t)?;
    let ctx = MultiplierContext::at_bifurcation(&sample.bifurcation);
    let reference = ctx.multiplier(i64::from(pair.k2()) + 1)?;
    Ok(sample.value / reference.powi(pair.degree() as i32))
}

/// Limit of [`phi_normalized`] as `T` tends to the given endpoint.
pub fn phi_limit(pair: WaveNumberPair, endpoint: Endpoint) -> Result<f64> {
    let (alpha, beta) = phi_indices(pair);
    let value = Session::new(Numeric(LimitRatio { pair, endpoint })).u2(alpha, beta)?;
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("limit of phi for {pair} at {endpoint:?}")));
    }
    Ok(value)
}

/// The normalized limits of `phi` at `T -> 0` and `T -> 1/3`.
pub fn phi_limits(pair: WaveNumberPair) -> Result<(f64, f64)> {
    Ok((phi_limit(pair, Endpoint::Low)?, phi_limit(pair, Endpoint::High)?))
}

/// Sample points on `(delta, 1/3 - delta)`, denser towards both ends.
pub fn sample_grid(grid_size: usize) -> Vec<f64> {
    let lo = ENDPOINT_MARGIN;
    let width = WEAK_LIMIT - 2.0 * ENDPOINT_MARGIN;
    (0..grid_size)
        .map(|i| {
            let s = i as f64 / (grid_size - 1) as f64;
            let g = if s < 0.5 { 2.0 * s * s } else { 1.0 - 2.0 * (1.0 - s) * (1.0 - s) };
            lo + width * g
        })
        .collect()
}

/// Samples `phi` on [`sample_grid`], returning `(T, phi)` pairs.
pub fn phi_curve(pair: WaveNumberPair, grid_size: usize) -> Result<Vec<(f64, f64)>> {
    if grid_size < 2 {
        return Err(Error::domain("phi curve needs at least two points"));
    }
    sample_grid(grid_size).into_iter().map(|t| Ok((t, phi_value(pair, t)?))).collect()
}

/// All sign changes of `phi` resolved on a grid of `grid_size` points.
pub fn phi_root(pair: WaveNumberPair, grid_size: usize) -> Result<Vec<PhiRoot>> {
    phi_root_with(pair, grid_size, ROOT_XTOL)
}

/// [`phi_root`] with brackets refined to width `xtol`.
pub fn phi_root_with(pair: WaveNumberPair, grid_size: usize, xtol: f64) -> Result<Vec<PhiRoot>> {
    if !(xtol.is_finite() && xtol > 0.0) {
        return Err(Error::domain(format!("root tolerance must be > 0, got {xtol}")));
    }
    if grid_size < MIN_GRID {
        return Err(Error::domain(format!("grid size must be at least {MIN_GRID}, got {grid_size}")));
    }
    let samples = phi_curve(pair, grid_size)?;
    debug_assert!(pair.k1() != 1 || samples.iter().all(|&(_, v)| v > 0.0), "phi must stay positive for k1 = 1");
    let opts = BrentOptions { xtol, ftol: 0.0, max_iter: 200 };
    let mut roots = Vec::new();
    for w in samples.windows(2) {
        let ((a, fa), (b, fb)) = (w[0], w[1]);
        if fa == 0.0 {
            roots.push((a, (a, a)));
            continue;
        }
        if fa.signum() != fb.signum() && fb != 0.0 {
            let root = brent(|t| phi_value(pair, t), a, b, opts, &format!("phi root {pair}"))?;
            roots.push((root.x, root.bracket));
        }
    }
    if let Some(&(t, v)) = samples.last() {
        if v == 0.0 {
            roots.push((t, (t, t)));
        }
    }
    roots
        .into_iter()
        .map(|(t0, bracket)| {
            let h = SLOPE_STEP;
            let slope = (phi_value(pair, t0 + h)? - phi_value(pair, t0 - h)?) / (2.0 * h);
            Ok(PhiRoot { t0, bracket, slope })
        })
        .collect()
}

/// Outcome of a pair classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    /// `k1` divides `k2`.
    ExcludedDivisor,
    /// `k2 - k1` divides `k1`.
    ExcludedDifference,
    /// A sign change of `phi` is certain.
    Admits,
    /// Equal limit signs and no verified root.
    Undecided,
    /// Passed the divisibility test; nothing computed yet.
    Passes,
}

impl PairStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PairStatus::ExcludedDivisor => "excluded-divisor",
            PairStatus::ExcludedDifference => "excluded-difference",
            PairStatus::Admits => "admits",
            PairStatus::Undecided => "undecided",
            PairStatus::Passes => "passes",
        }
    }

    pub fn is_excluded(self) -> bool {
        matches!(self, PairStatus::ExcludedDivisor | PairStatus::ExcludedDifference)
    }
}

/// Divisibility test ruling out symmetry breaking for `(k1, k2)`.
pub fn exclusion_check(k1: u32, k2: u32) -> Result<PairStatus> {
    if k1 == 0 || k1 >= k2 {
        return Err(Error::domain(format!("need 1 <= k1 < k2, got ({k1}, {k2})")));
    }
    Ok(if k2.is_multiple_of(k1) {
        PairStatus::ExcludedDivisor
    } else if k1.is_multiple_of(k2 - k1) {
        PairStatus::ExcludedDifference
    } else {
        PairStatus::Passes
    })
}

/// Classification of one pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub pair: WaveNumberPair,
    pub status: PairStatus,
    pub limit_low: Option<f64>,
    pub limit_high: Option<f64>,
    pub roots: Vec<PhiRoot>,
    /// Set when a computation for this pair failed; the status is then undecided.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub grid_size: usize,
    /// Locate the roots of `phi` for every pair that survives the exclusion test.
    pub find_roots: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub root_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { grid_size: DEFAULT_GRID, find_roots: false, jobs: None, root_tol: ROOT_XTOL }
    }
}

fn classify(pair: WaveNumberPair, opts: &ScanOptions) -> PairVerdict {
    let status = exclusion_check(pair.k1(), pair.k2()).expect("pair is ordered");
    let mut verdict = PairVerdict { pair, status, limit_low: None, limit_high: None, roots: Vec::new(), error: None };
    if status.is_excluded() {
        return verdict;
    }
    verdict.status = PairStatus::Undecided;
    match phi_limits(pair) {
        Ok((low, high)) => {
            verdict.limit_low = Some(low);
            verdict.limit_high = Some(high);
            if low.signum() != high.signum() {
                verdict.status = PairStatus::Admits;
            }
        }
        Err(e) => {
            verdict.error = Some(e.to_string());
            return verdict;
        }
    }
    if opts.find_roots {
        match phi_root_with(pair, opts.grid_size, opts.root_tol) {
            Ok(roots) => {
                // Every returned root comes from a bracket with a sign change.
                if !roots.is_empty() {
                    verdict.status = PairStatus::Admits;
                }
                verdict.roots = roots;
            }
            Err(e) => verdict.error = Some(e.to_string()),
        }
    }
    verdict
}

/// Classifies every coprime pair `1 <= k1 < k2 <= k_max`, sorted by `(k1, k2)`.
///
/// Failures for individual pairs are recorded in [`PairVerdict::error`].
pub fn pair_scan(k_max: u32, opts: &ScanOptions) -> Result<Vec<PairVerdict>> {
    if k_max < 3 {
        return Err(Error::domain(format!("k_max must be at least 3, got {k_max}")));
    }
    if opts.find_roots && opts.grid_size < MIN_GRID {
        return Err(Error::domain(format!("grid size must be at least {MIN_GRID}")));
    }
    let pairs: Vec<WaveNumberPair> = (1..k_max)
        .flat_map(|k1| (k1 + 1..=k_max).map(move |k2| (k1, k2)))
        .filter(|&(k1, k2)| crate::symbol::gcd(k1, k2) == 1)
        .map(|(k1, k2)| WaveNumberPair::new(k1, k2).expect("ordered coprime pair"))
        .collect();
    let run = || pairs.par_iter().map(|&p| classify(p, opts)).collect::<Vec<_>>();
    let mut verdicts = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    verdicts.sort_by_key(|v| v.pair);
    Ok(verdicts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(k1: u32, k2: u32) -> WaveNumberPair {
        WaveNumberPair::new(k1, k2).unwrap()
    }

    #[test]
    fn exclusion_examples() {
        assert_eq!(exclusion_check(3, 6).unwrap(), PairStatus::ExcludedDivisor);
        assert_eq!(exclusion_check(2, 3).unwrap(), PairStatus::ExcludedDifference);
        assert_eq!(exclusion_check(2, 5).unwrap(), PairStatus::Passes);
        assert!(exclusion_check(5, 5).is_err());
    }

    #[test]
    fn grid_is_increasing_and_clustered() {
        let g = sample_grid(200);
        assert_eq!(g.len(), 200);
        assert!((g[0] - ENDPOINT_MARGIN).abs() < 1e-15);
        assert!((g[199] - (WEAK_LIMIT - ENDPOINT_MARGIN)).abs() < 1e-15);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g[1] - g[0] < g[100] - g[99]);
    }

    #[test]
    fn phi_for_k1_one_is_positive() {
        for t in [0.01, 0.1, 0.3] {
            let s = phi_eval(pair(1, 4), SurfaceTension::new(t).unwrap()).unwrap();
            assert!(s.value > 0.0);
            assert!(s.k1_is_one());
        }
    }

    #[test]
    fn limits_25_have_opposite_signs() {
        let (low, high) = phi_limits(pair(2, 5)).unwrap();
        assert!(low < 0.0 && high > 0.0, "{low} {high}");
    }

    #[test]
    fn root_25() {
        let roots = phi_root(pair(2, 5), DEFAULT_GRID).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].t0 - 0.1215).abs() <= 0.003, "{:?}", roots[0]);
        assert!(roots[0].slope != 0.0);
    }

    #[test]
    fn small_grid_is_rejected() {
        assert!(phi_root(pair(2, 5), 8).is_err());
    }
}

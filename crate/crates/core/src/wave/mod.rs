//! Small-amplitude travelling waves on a truncated Fourier basis.
//!
//! A profile is split as `u = v + w`, where `v` lives on the kernel modes
//! `±k1, ±k2`,
//!
//! ```text
//! v(x) = r1 cos(k1 (x + theta1)) + r2 cos(k2 (x + theta2)),
//! ```
//!
//! and `w` has no kernel content. For fixed `(c, kappa, T)` the complement is
//! the fixed point `w = L P_W (v + w)^2`, where `L` multiplies mode `k` by
//! `ell(k)`. What remains are the four kernel projections of
//! `J(u) = (M_{T,kappa} - c) u + u^2`, of which three are independent; they
//! are solved by Newton's method in `(c, kappa, T)`.

mod extended;
mod fourier;

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use extended::DdSeries;
pub use fourier::Modes;

use crate::coeff::MultiplierContext;
use crate::error::{Error, Result};
use crate::symbol::{double_bifurcation, SurfaceTension, WaveNumberPair};

pub const DEFAULT_TRUNCATION: usize = 64;
/// Bound on `sup |v|` under which the fixed point for `w` is attempted.
pub const AMPLITUDE_CAP: f64 = 0.3;
/// Tolerance on `(theta1 - theta2) mod pi/(k1 k2)` in [`asymmetry_test`].
pub const ASYMMETRY_TOL: f64 = 1e-12;
/// Below this `|sin(k1 k2 (theta1 - theta2))|` the scaled third equation is
/// not formed.
pub const DEGENERATE_SINE: f64 = 1e-10;
/// Relative Newton step below which `(c, kappa, T)` counts as settled.
pub const STEP_FLOOR: f64 = 1e-13;
/// Number of consecutive growing updates that counts as divergence.
pub const DIVERGENCE_RUN: usize = 10;

/// Iteration controls for the wave solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveOptions {
    /// Number of resolved modes `K`.
    pub truncation: usize,
    /// Target for `max_k |w_{n+1,k} - w_{n,k}|`.
    pub w_tol: f64,
    pub w_max_iter: usize,
    /// Target for the max-norm of the scaled kernel equations.
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Relative step of the central-difference Jacobian.
    pub fd_step: f64,
    pub amplitude_cap: f64,
    pub w_method: WMethod,
}

/// Iteration used for the `w` equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WMethod {
    /// Newton steps on `w - L P_W (v + w)^2 = 0`.
    Newton,
    /// Plain iteration of `w -> L P_W (v + w)^2`; contracts only when
    /// `2 max|ell| sup|u|` is below one.
    Picard,
}

impl Default for WaveOptions {
    fn default() -> Self {
        Self {
            truncation: DEFAULT_TRUNCATION,
            w_tol: 1e-14,
            w_max_iter: 200,
            newton_tol: 1e-12,
            newton_max_iter: 50,
            fd_step: 1e-7,
            amplitude_cap: AMPLITUDE_CAP,
            w_method: WMethod::Newton,
        }
    }
}

/// Amplitudes and phases of the kernel part `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModalParameters {
    pub r1: f64,
    pub r2: f64,
    /// Reduced to `[0, 2 pi / k1)`.
    pub theta1: f64,
    /// Reduced to `[0, 2 pi / k2)`.
    pub theta2: f64,
}

impl ModalParameters {
    pub fn new(pair: WaveNumberPair, r1: f64, r2: f64, theta1: f64, theta2: f64) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite() && r1 >= 0.0 && r2 >= 0.0) {
            return Err(Error::domain(format!("amplitudes must be finite and >= 0, got ({r1}, {r2})")));
        }
        if !(theta1.is_finite() && theta2.is_finite()) {
            return Err(Error::domain("phases must be finite"));
        }
        Ok(Self {
            r1,
            r2,
            theta1: theta1.rem_euclid(2.0 * PI / f64::from(pair.k1())),
            theta2: theta2.rem_euclid(2.0 * PI / f64::from(pair.k2())),
        })
    }

    /// `sin(k1 k2 (theta1 - theta2))`, the factor carried by the odd part of
    /// the kernel equations.
    pub fn phase_sine(&self, pair: WaveNumberPair) -> f64 {
        let k = f64::from(pair.k1()) * f64::from(pair.k2());
        (k * (self.theta1 - self.theta2)).sin()
    }
}

/// Whether `v` has no even translate: `r1 r2 != 0` and
/// `theta1 - theta2` is not a multiple of `pi / (k1 k2)`.
pub fn asymmetry_test(pair: WaveNumberPair, params: &ModalParameters) -> bool {
    if params.r1 == 0.0 || params.r2 == 0.0 {
        return false;
    }
    let period = PI / (f64::from(pair.k1()) * f64::from(pair.k2()));
    let rem = (params.theta1 - params.theta2).rem_euclid(period);
    rem.min(period - rem) > ASYMMETRY_TOL
}

fn check_truncation(pair: WaveNumberPair, truncation: usize) -> Result<()> {
    let required = 2 * pair.k2() as usize;
    if truncation < required {
        return Err(Error::Truncation { truncation, required });
    }
    Ok(())
}

/// The kernel part `v` on `K` modes.
pub fn synthesize_v(pair: WaveNumberPair, params: &ModalParameters, truncation: usize) -> Result<Modes> {
    check_truncation(pair, truncation)?;
    let mut v = Modes::zeros(truncation);
    let (k1, k2) = (f64::from(pair.k1()), f64::from(pair.k2()));
    v.set(i64::from(pair.k1()), Complex64::from_polar(0.5 * params.r1, k1 * params.theta1));
    v.set(i64::from(pair.k2()), Complex64::from_polar(0.5 * params.r2, k2 * params.theta2));
    Ok(v)
}

/// `ell(k)` for `k = 0..=K`.
fn multipliers(ctx: &MultiplierContext, truncation: usize) -> Result<Vec<f64>> {
    (0..=truncation as i64).map(|k| ctx.multiplier(k)).collect()
}

/// Outcome of the fixed point for `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct WSolution {
    pub w: Modes,
    /// Rounding remainder of `w`: the iteration runs in double-double
    /// arithmetic and `w + w_lo` is the extended result.
    pub w_lo: Modes,
    pub iterations: usize,
    /// `max_k |w_{n+1,k} - w_{n,k}|` at the last step.
    pub last_update: f64,
}

/// Solves `w = L P_W (v + w)^2` from `start`.
///
/// With [`WMethod::Newton`] each step solves the linearization
/// `dw - 2 L P_W (u dw) = -(w - L P_W u^2)` exactly; with
/// [`WMethod::Picard`] the map itself is iterated. Either way, once the
/// update drops below `w_tol` the iteration continues for as long as the
/// update keeps shrinking, so the returned `w` is accurate to rounding.
pub fn solve_w_from(
    v: &Modes,
    ctx: &MultiplierContext,
    opts: &WaveOptions,
    start: Option<&Modes>,
) -> Result<WSolution> {
    let start = start.map(|w| DdSeries::from_parts(w, None));
    let (w, iterations, last_update) = solve_w_extended(v, ctx, opts, start)?;
    let (w, w_lo) = w.split();
    Ok(WSolution { w, w_lo, iterations, last_update })
}

fn solve_w_extended(
    v: &Modes,
    ctx: &MultiplierContext,
    opts: &WaveOptions,
    start: Option<DdSeries>,
) -> Result<(DdSeries, usize, f64)> {
    let truncation = v.truncation();
    let sup_bound: f64 = v.iter().map(|(_, c)| c.norm()).sum();
    if sup_bound > opts.amplitude_cap {
        return Err(Error::domain(format!("kernel amplitude {sup_bound} above the cap {}", opts.amplitude_cap)));
    }
    let ell = multipliers(ctx, truncation)?;
    let ell_extended = (0..=truncation as i64).map(|k| extended::multiplier(ctx, k)).collect::<Result<Vec<_>>>()?;
    let v = DdSeries::from_parts(v, None);
    let step = |w: &DdSeries| -> Result<DdSeries> {
        let u = v.add(w);
        let image = u.square().scale_by(|k| ell_extended[k]);
        match opts.w_method {
            WMethod::Picard => Ok(image),
            WMethod::Newton => {
                let (rhs, _) = w.sub(&image).split();
                let delta = linearized_solve(&u.split().0, &ell, &rhs)?;
                Ok(w.sub_modes(&delta))
            }
        }
    };

    let mut w = start.unwrap_or_else(|| DdSeries::zeros(truncation));
    let mut history = Vec::new();
    let mut growing = 0;
    let mut reached = false;
    for iter in 1..=opts.w_max_iter {
        let next = step(&w)?;
        let delta = next.sub(&w).max_abs();
        if !delta.is_finite() {
            return Err(Error::NonFinite(format!("w update at iteration {iter}")));
        }
        let previous = history.last().copied();
        history.push(delta);
        if reached {
            if let Some(p) = previous.filter(|&p| delta >= p) {
                // Rounding floor: keep the iterate before the stall.
                return Ok((w, iter, p));
            }
        } else if previous.is_some_and(|p| delta > p) {
            growing += 1;
            if growing >= DIVERGENCE_RUN {
                return Err(Error::Divergence { history });
            }
        } else {
            growing = 0;
        }
        w = next;
        if delta == 0.0 {
            return Ok((w, iter, 0.0));
        }
        if delta <= opts.w_tol {
            reached = true;
        }
    }
    if reached {
        let last_update = *history.last().unwrap();
        return Ok((w, opts.w_max_iter, last_update));
    }
    Err(Error::NotConverged {
        what: "fixed point for w".into(),
        iterations: opts.w_max_iter,
        residual: history.last().copied().unwrap_or(f64::NAN),
    })
}

/// Real coordinates of a real series: `u_0`, then `Re u_k, Im u_k` for `k = 1..=K`.
fn to_real(m: &Modes) -> DVector<f64> {
    let k_max = m.truncation() as i64;
    let mut out = DVector::zeros(2 * m.truncation() + 1);
    out[0] = m.get(0).re;
    for k in 1..=k_max {
        let c = m.get(k);
        out[2 * k as usize - 1] = c.re;
        out[2 * k as usize] = c.im;
    }
    out
}

fn from_real(x: &DVector<f64>, truncation: usize) -> Modes {
    let mut m = Modes::zeros(truncation);
    m.set(0, Complex64::new(x[0], 0.0));
    for k in 1..=truncation {
        m.set(k as i64, Complex64::new(x[2 * k - 1], x[2 * k]));
    }
    m
}

/// Solves `dw - 2 ell (u dw) = rhs` on the resolved modes.
fn linearized_solve(u: &Modes, ell: &[f64], rhs: &Modes) -> Result<Modes> {
    let truncation = u.truncation();
    let k_max = truncation as i64;
    let n = 2 * truncation + 1;
    let mut jac = DMatrix::<f64>::identity(n, n);
    // Column for each real coordinate of dw: the product u * dw at modes 0..=K.
    for col in 0..n {
        let (m, unit) = if col == 0 {
            (0, Complex64::new(1.0, 0.0))
        } else if col % 2 == 1 {
            ((col as i64 + 1) / 2, Complex64::new(1.0, 0.0))
        } else {
            (col as i64 / 2, Complex64::new(0.0, 1.0))
        };
        for k in 0..=k_max {
            let gain = 2.0 * ell[k as usize];
            if gain == 0.0 {
                continue;
            }
            // dw has unit at +m and conj(unit) at -m.
            let prod = if m == 0 { u.get(k) * unit } else { u.get(k - m) * unit + u.get(k + m) * unit.conj() };
            let entry = -gain * prod;
            if k == 0 {
                jac[(0, col)] += entry.re;
            } else {
                jac[(2 * k as usize - 1, col)] += entry.re;
                jac[(2 * k as usize, col)] += entry.im;
            }
        }
    }
    let x = jac
        .lu()
        .solve(&to_real(rhs))
        .ok_or_else(|| Error::Degenerate("singular linearization of the w equation".into()))?;
    Ok(from_real(&x, truncation))
}

/// [`solve_w_from`] started at `w = 0`.
pub fn solve_w(v: &Modes, ctx: &MultiplierContext, opts: &WaveOptions) -> Result<WSolution> {
    solve_w_from(v, ctx, opts, None)
}

/// `J(u) = (M_{T,kappa} - c) u + u^2`, truncated to the modes of `u`.
pub fn residual(u: &Modes, ctx: &MultiplierContext) -> Modes {
    u.scale_by(|k| -ctx.detuning(k)).add(&u.square())
}

fn residual_extended(u: &DdSeries, ctx: &MultiplierContext) -> DdSeries {
    u.scale_by(|k| -extended::detuning(ctx, k as i64)).add(&u.square())
}

/// The kernel projections of `J`:
/// `<J, cos(k_i (x + theta_i))>` and `<J, sin(k_i (x + theta_i))>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelProjections {
    pub v1_cos: f64,
    pub v2_cos: f64,
    pub v1_sin: f64,
    pub v2_sin: f64,
}

impl KernelProjections {
    pub fn of(j: &Modes, pair: WaveNumberPair, params: &ModalParameters) -> Self {
        let rotated = |k: u32, theta: f64| {
            let k = f64::from(k);
            j.get(k as i64) * Complex64::from_polar(1.0, -k * theta)
        };
        let a = rotated(pair.k1(), params.theta1);
        let b = rotated(pair.k2(), params.theta2);
        Self { v1_cos: a.re, v2_cos: b.re, v1_sin: -a.im, v2_sin: -b.im }
    }

    /// Projections of an extended `J`, rotated by the phase of `v` itself
    /// so that the part of `J` along `v` contributes nothing to the sine
    /// projections.
    fn of_extended(j: &DdSeries, pair: WaveNumberPair, params: &ModalParameters, v: &Modes) -> Self {
        let rotated = |k: u32, r: f64, theta: f64| {
            let k = i64::from(k);
            if r > 0.0 {
                let (re, im) = extended::rotate_back(j.get(k), v.get(k));
                (re / (0.5 * r), im / (0.5 * r))
            } else {
                extended::rotate_back(j.get(k), Complex64::from_polar(1.0, k as f64 * theta))
            }
        };
        let a = rotated(pair.k1(), params.r1, params.theta1);
        let b = rotated(pair.k2(), params.r2, params.theta2);
        Self { v1_cos: a.0, v2_cos: b.0, v1_sin: -a.1, v2_sin: -b.1 }
    }

    /// `k1 r1 <J, v1_sin> + k2 r2 <J, v2_sin>`, which vanishes once `w` is
    /// converged because `J` is orthogonal to `u'`.
    pub fn linear_dependence(&self, pair: WaveNumberPair, params: &ModalParameters) -> f64 {
        f64::from(pair.k1()) * params.r1 * self.v1_sin + f64::from(pair.k2()) * params.r2 * self.v2_sin
    }
}

/// A candidate solution `u = v + w` with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveProfile {
    pub pair: WaveNumberPair,
    pub params: ModalParameters,
    pub c: f64,
    pub kappa: f64,
    #[serde(rename = "T")]
    pub t: SurfaceTension,
    /// Modes of `u`, `-K..=K`.
    pub modes: Modes,
    /// Rounding remainder of `modes` left by the solver.
    #[serde(skip)]
    pub(crate) correction: Option<Modes>,
}

impl WaveProfile {
    pub fn truncation(&self) -> usize {
        self.modes.truncation()
    }

    pub fn context(&self) -> Result<MultiplierContext> {
        MultiplierContext::new(self.pair, self.c, self.kappa, self.t)
    }

    pub fn v(&self) -> Modes {
        synthesize_v(self.pair, &self.params, self.truncation()).expect("truncation checked on construction")
    }

    pub fn w(&self) -> Modes {
        self.modes.sub(&self.v())
    }

    /// Builds a profile from explicit modes.
    pub fn new(
        pair: WaveNumberPair,
        params: ModalParameters,
        c: f64,
        kappa: f64,
        t: SurfaceTension,
        modes: Modes,
    ) -> Result<Self> {
        check_truncation(pair, modes.truncation())?;
        MultiplierContext::new(pair, c, kappa, t)?;
        Ok(Self { pair, params, c, kappa, t, modes, correction: None })
    }

    /// `u = v + w` for a solved `w` at `(c, kappa, T)`, keeping the extended
    /// remainder of `w`.
    pub fn from_w(
        pair: WaveNumberPair,
        params: ModalParameters,
        ctx: &MultiplierContext,
        w: &WSolution,
    ) -> Result<Self> {
        check_truncation(pair, w.w.truncation())?;
        let v = synthesize_v(pair, &params, w.w.truncation())?;
        let (modes, correction) =
            DdSeries::from_parts(&v, None).add(&DdSeries::from_parts(&w.w, Some(&w.w_lo))).split();
        Ok(Self { pair, params, c: ctx.c, kappa: ctx.kappa, t: ctx.t, modes, correction: Some(correction) })
    }

    fn extended(&self) -> DdSeries {
        DdSeries::from_parts(&self.modes, self.correction.as_ref())
    }

    fn residual_extended(&self) -> Result<DdSeries> {
        Ok(residual_extended(&self.extended(), &self.context()?))
    }

    /// `J(u)`, evaluated in extended precision and rounded.
    pub fn residual(&self) -> Result<Modes> {
        Ok(self.residual_extended()?.split().0)
    }

    pub fn projections(&self) -> Result<KernelProjections> {
        let j = self.residual_extended()?;
        Ok(KernelProjections::of_extended(&j, self.pair, &self.params, &self.v()))
    }
}

/// How a solve was carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    /// Newton in `(c, kappa, T)` on three scaled equations.
    Asymmetric,
    /// Newton in `(c, kappa)` at fixed `T`; both kernel modes present.
    SymmetricBimodal,
    /// Only the `k1` mode present; `c` solved at `kappa = kappa0`.
    UnimodalK1,
    /// Only the `k2` mode present; `c` solved at `kappa = kappa0`.
    UnimodalK2,
    /// `v = 0`: the trivial solution at the bifurcation point.
    Trivial,
}

/// Diagnostics of a wave solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub converged: bool,
    pub mode: SolveMode,
    pub asymmetric: bool,
    pub iterations_w: usize,
    pub iterations_newton: usize,
    /// Max-norm of the solved equations at the final iterate.
    pub residual_equations: f64,
    /// `max_k |J_k|` over the resolved modes.
    pub residual_j_inf: f64,
    /// `<J(u), u'>`.
    pub residual_orthogonality: f64,
    /// `k1 r1 <J, v1_sin> + k2 r2 <J, v2_sin>`.
    pub residual_lindep: f64,
    pub projections: KernelProjections,
    pub c: f64,
    pub kappa: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

/// Fixed-point state shared by the Newton evaluations.
struct Evaluator<'a> {
    pair: WaveNumberPair,
    params: ModalParameters,
    v: Modes,
    opts: &'a WaveOptions,
    warm: Option<DdSeries>,
    w_iterations: usize,
}

impl<'a> Evaluator<'a> {
    fn profile(&mut self, c: f64, kappa: f64, t: f64) -> Result<WaveProfile> {
        let t = SurfaceTension::weak(t)?;
        let ctx = MultiplierContext::new(self.pair, c, kappa, t)?;
        let (w, iterations, _) = solve_w_extended(&self.v, &ctx, self.opts, self.warm.take())?;
        self.w_iterations += iterations;
        let (modes, correction) = DdSeries::from_parts(&self.v, None).add(&w).split();
        self.warm = Some(w);
        Ok(WaveProfile { pair: self.pair, params: self.params, c, kappa, t, modes, correction: Some(correction) })
    }
}

/// Newton's method with a central-difference Jacobian.
///
/// Stops when the residual max-norm meets `newton_tol`, or when a step is
/// below [`STEP_FLOOR`] relative to the iterate: the scaled equations are
/// ill-conditioned like `1/r^2`, so their value at the nearest `f64` point
/// can sit above any fixed tolerance. Returns the last iterate, the number
/// of steps, the residual max-norm there and whether either test was met.
fn newton(
    mut f: impl FnMut(&[f64]) -> Result<Vec<f64>>,
    mut x: Vec<f64>,
    opts: &WaveOptions,
) -> Result<(Vec<f64>, usize, f64, bool)> {
    let n = x.len();
    let mut settled = false;
    let mut norm = f64::NAN;
    // Past the starting point, a failed evaluation means the iteration has
    // wandered off, not that the caller's input was bad.
    let mut eval = |x: &[f64], step: usize, norm: f64| {
        f(x).map_err(|e| match e {
            Error::Domain(_) | Error::NearResonance { .. } | Error::Divergence { .. } | Error::NotConverged { .. }
                if step > 0 =>
            {
                Error::NotConverged {
                    what: format!("Newton iteration for the kernel equations ({e})"),
                    iterations: step,
                    residual: norm,
                }
            }
            other => other,
        })
    };
    for step in 0..=opts.newton_max_iter {
        let g = eval(&x, step, norm)?;
        norm = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !norm.is_finite() {
            return Err(Error::NonFinite(format!("kernel equations at Newton step {step}")));
        }
        if norm <= opts.newton_tol || settled {
            return Ok((x, step, norm, true));
        }
        if step == opts.newton_max_iter {
            return Ok((x, step, norm, false));
        }
        let mut jac = DMatrix::zeros(n, n);
        for j in 0..n {
            let h = opts.fd_step * x[j].abs().max(1e-3);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let (gp, gm) = (eval(&xp, step + 1, norm)?, eval(&xm, step + 1, norm)?);
            for i in 0..n {
                jac[(i, j)] = (gp[i] - gm[i]) / (2.0 * h);
            }
        }
        let delta = jac
            .lu()
            .solve(&DVector::from_vec(g))
            .ok_or_else(|| Error::Degenerate("singular Jacobian in the kernel equations".into()))?;
        settled = x.iter().zip(delta.iter()).all(|(xi, di)| di.abs() <= STEP_FLOOR * xi.abs().max(1e-3));
        for (xi, di) in x.iter_mut().zip(delta.iter()) {
            *xi -= di;
        }
    }
    unreachable!("loop returns at step == newton_max_iter")
}

fn finish(
    profile: WaveProfile,
    mode: SolveMode,
    asymmetric: bool,
    iterations_w: usize,
    iterations_newton: usize,
    residual_equations: f64,
    converged: bool,
) -> Result<(WaveProfile, SolveReport)> {
    let j = profile.residual()?;
    let projections = profile.projections()?;
    let report = SolveReport {
        converged,
        mode,
        asymmetric,
        iterations_w,
        iterations_newton,
        residual_equations,
        residual_j_inf: j.max_abs(),
        residual_orthogonality: j.inner(&profile.modes.derivative()),
        residual_lindep: projections.linear_dependence(profile.pair, &profile.params),
        projections,
        c: profile.c,
        kappa: profile.kappa,
        t: profile.t.value(),
    };
    Ok((profile, report))
}

/// Solves with `T` held at `t`, for data with an even translate.
///
/// Returns the report even when Newton stops short of the tolerance; see
/// [`symmetric_solve`] for the strict variant.
pub fn symmetric_solve_report(
    pair: WaveNumberPair,
    params: &ModalParameters,
    t: SurfaceTension,
    opts: &WaveOptions,
) -> Result<(WaveProfile, SolveReport)> {
    let asymmetric = asymmetry_test(pair, params);
    if asymmetric {
        return Err(Error::domain("symmetric solve needs r1 r2 = 0 or theta1 - theta2 in (pi/(k1 k2)) Z"));
    }
    let bp = double_bifurcation(pair, t)?;
    let mut eval = Evaluator {
        pair,
        params: *params,
        v: synthesize_v(pair, params, opts.truncation)?,
        opts,
        warm: None,
        w_iterations: 0,
    };
    let tv = t.value();
    let (mode, c, kappa, steps, norm, converged) = if params.r1 == 0.0 && params.r2 == 0.0 {
        (SolveMode::Trivial, bp.c0, bp.kappa0, 0, 0.0, true)
    } else if params.r1 == 0.0 || params.r2 == 0.0 {
        let first = params.r2 == 0.0;
        let k0 = bp.kappa0;
        let (x, steps, norm, ok) = newton(
            |x| {
                let p = eval.profile(x[0], k0, tv)?;
                let proj = p.projections()?;
                Ok(vec![if first { proj.v1_cos / params.r1 } else { proj.v2_cos / params.r2 }])
            },
            vec![bp.c0],
            opts,
        )?;
        let mode = if first { SolveMode::UnimodalK1 } else { SolveMode::UnimodalK2 };
        (mode, x[0], k0, steps, norm, ok)
    } else {
        let (x, steps, norm, ok) = newton(
            |x| {
                let p = eval.profile(x[0], x[1], tv)?;
                let proj = p.projections()?;
                Ok(vec![proj.v1_cos / params.r1, proj.v2_cos / params.r2])
            },
            vec![bp.c0, bp.kappa0],
            opts,
        )?;
        (SolveMode::SymmetricBimodal, x[0], x[1], steps, norm, ok)
    };
    let profile = eval.profile(c, kappa, tv)?;
    finish(profile, mode, false, eval.w_iterations, steps, norm, converged)
}

/// [`symmetric_solve_report`], failing when Newton does not converge.
pub fn symmetric_solve(
    pair: WaveNumberPair,
    params: &ModalParameters,
    t: SurfaceTension,
    opts: &WaveOptions,
) -> Result<(WaveProfile, SolveReport)> {
    strict(symmetric_solve_report(pair, params, t, opts)?)
}

fn strict((profile, report): (WaveProfile, SolveReport)) -> Result<(WaveProfile, SolveReport)> {
    if report.converged {
        Ok((profile, report))
    } else {
        Err(Error::NotConverged {
            what: "Newton iteration for the kernel equations".into(),
            iterations: report.iterations_newton,
            residual: report.residual_equations,
        })
    }
}

/// Solves for `(c, kappa, T)` starting from the bifurcation point at `t_init`.
///
/// Symmetric data are routed to [`symmetric_solve_report`] with `T = t_init`.
/// The report is returned even without convergence; see [`solve_wave`].
pub fn solve_wave_report(
    pair: WaveNumberPair,
    params: &ModalParameters,
    t_init: SurfaceTension,
    opts: &WaveOptions,
) -> Result<(WaveProfile, SolveReport)> {
    check_truncation(pair, opts.truncation)?;
    if !asymmetry_test(pair, params) {
        return symmetric_solve_report(pair, params, t_init, opts);
    }
    let bp = double_bifurcation(pair, t_init)?;
    asymmetric_newton(pair, params, [bp.c0, bp.kappa0, t_init.value()], opts)
}

/// Asymmetric solve started from an explicit guess `(c, kappa, T)`.
pub fn solve_wave_report_from(
    pair: WaveNumberPair,
    params: &ModalParameters,
    start: [f64; 3],
    opts: &WaveOptions,
) -> Result<(WaveProfile, SolveReport)> {
    check_truncation(pair, opts.truncation)?;
    if !asymmetry_test(pair, params) {
        return Err(Error::domain("explicit starts are only supported for asymmetric data"));
    }
    asymmetric_newton(pair, params, start, opts)
}

fn asymmetric_newton(
    pair: WaveNumberPair,
    params: &ModalParameters,
    start: [f64; 3],
    opts: &WaveOptions,
) -> Result<(WaveProfile, SolveReport)> {
    let sine = params.phase_sine(pair);
    if sine.abs() < DEGENERATE_SINE {
        return Err(Error::Degenerate(format!("sin(k1 k2 (theta1 - theta2)) = {sine:e}; use the symmetric solve")));
    }
    let scale = params.r1.powi(pair.k2() as i32 - 1) * params.r2.powi(pair.k1() as i32) * sine;
    let mut eval = Evaluator {
        pair,
        params: *params,
        v: synthesize_v(pair, params, opts.truncation)?,
        opts,
        warm: None,
        w_iterations: 0,
    };
    let (x, steps, norm, converged) = newton(
        |x| {
            let p = eval.profile(x[0], x[1], x[2])?;
            let proj = p.projections()?;
            Ok(vec![proj.v1_cos / params.r1, proj.v2_cos / params.r2, proj.v1_sin / scale])
        },
        start.to_vec(),
        opts,
    )?;
    let profile = eval.profile(x[0], x[1], x[2])?;
    finish(profile, SolveMode::Asymmetric, true, eval.w_iterations, steps, norm, converged)
}

/// [`solve_wave_report`], failing when Newton does not converge.
pub fn solve_wave(
    pair: WaveNumberPair,
    params: &ModalParameters,
    t_init: SurfaceTension,
    opts: &WaveOptions,
) -> Result<(WaveProfile, SolveReport)> {
    strict(solve_wave_report(pair, params, t_init, opts)?)
}

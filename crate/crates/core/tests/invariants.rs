mod common;

use std::f64::consts::PI;

use capillary_whitham::coeff::{coefficient_u, expand_symbolic, MultiIndex, MultiplierContext};
use capillary_whitham::symbol::{double_bifurcation, gcd};
use capillary_whitham::symbreak::{exclusion_check, phi_eval};
use capillary_whitham::wave::{asymmetry_test, residual, solve_w, synthesize_v, ModalParameters, Modes, WaveOptions};
use capillary_whitham::{SurfaceTension, WaveNumberPair};
use num_complex::Complex64;
use proptest::prelude::*;

fn pair25() -> WaveNumberPair {
    WaveNumberPair::new(2, 5).unwrap()
}

fn ctx25(t: f64) -> MultiplierContext {
    common::context(2, 5, t)
}

fn max_diff(a: &Modes, b: &Modes) -> f64 {
    a.sub(b).max_abs()
}

fn small_opts() -> WaveOptions {
    WaveOptions { truncation: 24, ..WaveOptions::default() }
}

// The w equation folds at r of order 1 / max|ell|, and max|ell| grows like
// 1 / (1/3 - T); amplitudes stay well inside that.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn w_commutes_with_translation(
        t in 0.1..0.25f64,
        r1 in 0.0..0.004f64,
        r2 in 0.0..0.004f64,
        th1 in 0.0..PI,
        th2 in 0.0..PI,
        shift in -PI..PI,
    ) {
        let p = pair25();
        let ctx = ctx25(t);
        let opts = small_opts();
        let params = ModalParameters::new(p, r1, r2, th1, th2).unwrap();
        let moved = ModalParameters::new(p, r1, r2, th1 + shift, th2 + shift).unwrap();
        let v = synthesize_v(p, &params, opts.truncation).unwrap();
        let w = solve_w(&v, &ctx, &opts).unwrap().w;
        let w_moved = solve_w(&synthesize_v(p, &moved, opts.truncation).unwrap(), &ctx, &opts).unwrap().w;
        prop_assert!(max_diff(&w_moved, &w.translate(shift)) <= 1e-15);
        prop_assert_eq!(asymmetry_test(p, &params), asymmetry_test(p, &moved));
    }

    #[test]
    fn w_commutes_with_reflection(t in 0.1..0.25f64, r1 in 0.0..0.004f64, r2 in 0.0..0.004f64, th1 in 0.0..PI, th2 in 0.0..PI) {
        let p = pair25();
        let ctx = ctx25(t);
        let opts = small_opts();
        let params = ModalParameters::new(p, r1, r2, th1, th2).unwrap();
        let mirrored = ModalParameters::new(p, r1, r2, -th1, -th2).unwrap();
        let w = solve_w(&synthesize_v(p, &params, opts.truncation).unwrap(), &ctx, &opts).unwrap().w;
        let w_mirrored = solve_w(&synthesize_v(p, &mirrored, opts.truncation).unwrap(), &ctx, &opts).unwrap().w;
        prop_assert!(max_diff(&w_mirrored, &w.reflect()) <= 1e-15);
    }

    #[test]
    fn residual_is_orthogonal_to_the_derivative(
        half in prop::collection::vec((-0.2..0.2f64, -0.2..0.2f64), 9..40),
        t in 0.01..0.33f64,
        kappa in 0.2..3.0f64,
        c in 0.5..1.5f64,
    ) {
        let modes = Modes::from_nonnegative(&half.iter().map(|&(a, b)| Complex64::new(a, b)).collect::<Vec<_>>());
        let ctx = MultiplierContext::new(pair25(), c, kappa, SurfaceTension::new(t).unwrap()).unwrap();
        let j = residual(&modes, &ctx);
        let du = modes.derivative();
        prop_assert!(j.inner(&du).abs() <= 1e-13 * j.l2() * du.l2());
    }

    #[test]
    fn exclusion_is_scale_invariant(k1 in 1u32..30, gap in 1u32..30, g in 1u32..6) {
        let k2 = k1 + gap;
        let base = exclusion_check(k1, k2).unwrap();
        let scaled = exclusion_check(g * k1, g * k2).unwrap();
        prop_assert_eq!(base, scaled);
        prop_assert_eq!(base.is_excluded(), k2 % k1 == 0 || k1 % (k2 - k1) == 0);
    }

    #[test]
    fn bifurcation_points_solve_the_dispersion_relation(k1 in 1u32..8, gap in 1u32..8, t in 1e-3..0.333f64) {
        let k2 = k1 + gap;
        prop_assume!(gcd(k1, k2) == 1);
        let p = WaveNumberPair::new(k1, k2).unwrap();
        let bp = double_bifurcation(p, SurfaceTension::new(t).unwrap()).unwrap();
        prop_assert!(bp.residual() <= 1e-13);
        prop_assert!(bp.kappa0 > 0.0 && bp.c0 > 0.0);
    }

    #[test]
    fn symbolic_expansion_evaluates_to_phi(t in 0.02..0.32f64) {
        let p = pair25();
        let sample = phi_eval(p, SurfaceTension::new(t).unwrap()).unwrap();
        let ctx = MultiplierContext::at_bifurcation(&sample.bifurcation);
        let expansion = expand_symbolic(p).unwrap();
        let value = expansion.try_eval(|n| ctx.multiplier(i64::from(n))).unwrap();
        prop_assert!(common::rel_close(value, sample.value, 1e-12), "{} vs {}", value, sample.value);
    }
}

#[test]
fn coefficients_are_symmetric_in_alpha_and_beta() {
    let ctx = ctx25(0.2);
    for (alpha, beta) in common::multi_indices(1, 6) {
        let a = coefficient_u(&ctx, alpha, beta).unwrap();
        let b = coefficient_u(&ctx, beta, alpha).unwrap();
        assert_eq!(a, b, "{alpha:?} {beta:?}");
    }
}

#[test]
fn first_order_coefficients_are_one_half() {
    let ctx = ctx25(0.2);
    let one = MultiIndex::new(1, 0);
    assert_eq!(coefficient_u(&ctx, one, MultiIndex::ZERO).unwrap(), 0.5);
    assert_eq!(coefficient_u(&ctx, MultiIndex::ZERO, MultiIndex::new(0, 1)).unwrap(), 0.5);
}

//! Offsets of asymmetric waves from the symmetry-breaking point shrink like
//! `r^2` once `r` is small against `1 / max|ell|`.

use std::f64::consts::PI;

use capillary_whitham::coeff::{coefficient_u, wavenumber, MultiIndex};
use capillary_whitham::symbol::double_bifurcation;
use capillary_whitham::symbreak::{phi_root, DEFAULT_GRID};
use capillary_whitham::wave::{asymmetry_test, solve_wave, ModalParameters, Modes, WaveOptions, WaveProfile};
use capillary_whitham::{SurfaceTension, WaveNumberPair};
use num_complex::Complex64;

#[test]
fn offsets_scale_quadratically_at_small_amplitude() {
    let pair = WaveNumberPair::new(2, 5).unwrap();
    let t0 = phi_root(pair, DEFAULT_GRID).unwrap()[0].t0;
    let bp = double_bifurcation(pair, SurfaceTension::new(t0).unwrap()).unwrap();
    let mut offsets = Vec::new();
    for r in [0.002, 0.001, 0.0005] {
        let params = ModalParameters::new(pair, r, r, PI / 20.0, 0.0).unwrap();
        assert!(asymmetry_test(pair, &params));
        let (_, report) =
            solve_wave(pair, &params, SurfaceTension::new(0.1215).unwrap(), &WaveOptions::default()).unwrap();
        assert!(report.residual_j_inf <= 1e-10);
        offsets.push([report.c - bp.c0, report.kappa - bp.kappa0, report.t - t0]);
    }
    for w in offsets.windows(2) {
        for (a, b) in w[0].iter().zip(&w[1]) {
            let ratio = a / b;
            assert!((3.2..=4.8).contains(&ratio), "{offsets:?}");
        }
    }
    assert!(offsets[1][2].abs() <= 5e-3, "{offsets:?}");
}

/// Modes of `v + sum_{|a|+|b|=2} u_{a,b} r^{a+b} E^{a-b}` at the solved parameters.
fn second_order_prediction(profile: &WaveProfile) -> Modes {
    let ctx = profile.context().unwrap();
    let p = profile.params;
    let (k1, k2) = (f64::from(profile.pair.k1()), f64::from(profile.pair.k2()));
    let mut u = profile.v();
    let indices = [
        MultiIndex::ZERO,
        MultiIndex::new(1, 0),
        MultiIndex::new(0, 1),
        MultiIndex::new(2, 0),
        MultiIndex::new(1, 1),
        MultiIndex::new(0, 2),
    ];
    for alpha in indices {
        for beta in indices {
            if alpha.order() + beta.order() != 2 {
                continue;
            }
            let k = wavenumber(profile.pair, alpha, beta);
            // Negative wavenumbers are the conjugates of the stored half.
            if k < 0 || k as usize > profile.truncation() {
                continue;
            }
            let amplitude = p.r1.powi((alpha.a1 + beta.a1) as i32) * p.r2.powi((alpha.a2 + beta.a2) as i32);
            let phase = k1 * p.theta1 * (f64::from(alpha.a1) - f64::from(beta.a1))
                + k2 * p.theta2 * (f64::from(alpha.a2) - f64::from(beta.a2));
            let term = Complex64::from_polar(coefficient_u(&ctx, alpha, beta).unwrap() * amplitude, phase);
            u.set(k, u.get(k) + term);
        }
    }
    u
}

#[test]
fn profiles_agree_with_the_second_order_expansion() {
    let pair = WaveNumberPair::new(2, 5).unwrap();
    let mut errors = Vec::new();
    for r in [0.002, 0.001, 0.0005] {
        let params = ModalParameters::new(pair, r, r, PI / 20.0, 0.0).unwrap();
        let (profile, _) =
            solve_wave(pair, &params, SurfaceTension::new(0.1215).unwrap(), &WaveOptions::default()).unwrap();
        errors.push(profile.modes.sub(&second_order_prediction(&profile)).max_abs());
    }
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((5.6..=10.4).contains(&ratio), "{errors:?}");
    }
}

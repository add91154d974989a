mod common;

use capillary_whitham::coeff::{coefficient_u, coefficient_u2, phi_indices};
use capillary_whitham::symbreak::phi_eval;
use capillary_whitham::{SurfaceTension, WaveNumberPair};

fn check(k1: u32, k2: u32, t: f64, degree: u32) {
    let ctx = common::context(k1, k2, t);
    let (u, u2) = common::series_oracle(&ctx, degree);
    for (alpha, beta) in common::multi_indices(1, degree) {
        let key = common::key(alpha, beta);
        let want = u.get(&key).copied().unwrap_or(0.0);
        let got = coefficient_u(&ctx, alpha, beta).unwrap();
        assert!(common::rel_close(got, want, 1e-10), "({k1},{k2}) T={t} u {alpha:?} {beta:?}: {got} vs {want}");
        if alpha.order() + beta.order() >= 2 {
            let want = u2.get(&key).copied().unwrap_or(0.0);
            let got = coefficient_u2(&ctx, alpha, beta).unwrap();
            assert!(common::rel_close(got, want, 1e-10), "({k1},{k2}) T={t} u2 {alpha:?} {beta:?}: {got} vs {want}");
        }
    }
}

#[test]
fn recursion_matches_series_for_several_pairs() {
    for (k1, k2) in [(2, 5), (3, 8), (1, 3), (3, 4)] {
        for t in [0.05, 0.2, 0.3] {
            check(k1, k2, t, 5);
        }
    }
}

#[test]
fn phi_is_the_oracle_coefficient() {
    let (k1, k2, t) = (2, 5, 0.1);
    let ctx = common::context(k1, k2, t);
    let pair = WaveNumberPair::new(k1, k2).unwrap();
    let (alpha, beta) = phi_indices(pair);
    let (_, u2) = common::series_oracle(&ctx, alpha.order() + beta.order());
    let want = u2[&common::key(alpha, beta)];
    let phi = phi_eval(pair, SurfaceTension::new(t).unwrap()).unwrap().value;
    assert!(common::rel_close(phi, want, 1e-10), "{phi} vs {want}");
}

//! Bracketing root finder (Brent's method).

use crate::error::{Error, Result};

/// Termination settings for [`brent`].
#[derive(Debug, Clone, Copy)]
pub struct BrentOptions {
    /// Absolute tolerance on the abscissa.
    pub xtol: f64,
    /// Stop as soon as `|f(x)| <= ftol`. Zero disables the residual test.
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for BrentOptions {
    fn default() -> Self {
        Self { xtol: 1e-14, ftol: 1e-13, max_iter: 200 }
    }
}

/// A root together with the final bracket that encloses it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Finds a root of `f` in `[a, b]`, which must straddle a sign change.
///
/// Errors from `f` are propagated unchanged.
pub fn brent<F>(mut f: F, a: f64, b: f64, opts: BrentOptions, context: &str) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (a, b);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NonFinite(format!("{context}: f({a}) = {fa}, f({b}) = {fb}")));
    }
    if fa == 0.0 {
        return Ok(Root { x: a, fx: fa, bracket: (a, a), iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, fx: fb, bracket: (b, b), iterations: 0 });
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { context: context.to_string(), a, b, fa, fb });
    }

    // b is the best estimate, a the previous one, c the contrapoint.
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=opts.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * opts.xtol;
        let half = 0.5 * (c - b);
        if half.abs() <= tol || fb == 0.0 || fb.abs() <= opts.ftol {
            let (lo, hi) = if b < c { (b, c) } else { (c, b) };
            return Ok(Root { x: b, fx: fb, bracket: (lo, hi), iterations: iter });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two points differ.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            let min1 = 3.0 * half * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b)?;
        if !fb.is_finite() {
            return Err(Error::NonFinite(format!("{context}: f({b}) = {fb}")));
        }
    }
    Err(Error::NotConverged { what: format!("brent ({context})"), iterations: opts.max_iter, residual: fb.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let root = brent(|x| Ok(x * x - 2.0), 0.0, 2.0, BrentOptions::default(), "sqrt2").unwrap();
        assert!((root.x - 2f64.sqrt()).abs() < 1e-14);
        assert!(root.bracket.0 <= root.x && root.x <= root.bracket.1);
    }

    #[test]
    fn handles_flat_then_steep() {
        let f = |x: f64| Ok((x - 0.3).powi(3));
        let root = brent(f, -1.0, 1.0, BrentOptions { ftol: 0.0, ..Default::default() }, "cubic").unwrap();
        assert!((root.x - 0.3).abs() < 1e-4);
    }

    #[test]
    fn rejects_missing_sign_change() {
        let err = brent(|x| Ok(x * x + 1.0), -1.0, 1.0, BrentOptions::default(), "nope").unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn endpoint_root_is_returned() {
        let root = brent(Ok, 0.0, 1.0, BrentOptions::default(), "zero").unwrap();
        assert_eq!(root.x, 0.0);
    }
}

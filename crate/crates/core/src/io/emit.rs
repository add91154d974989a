//! CSV tables and JSON documents with fixed columns and keys.
//!
//! Floats are written in Rust's shortest round-trip form (`0.1215`,
//! `1e-14`), so repeated runs produce byte-identical files.

use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff::PhiExpansion;
use crate::error::{Error, Result};
use crate::symbol::BifurcationPoint;
use crate::symbreak::{PairVerdict, PhiRoot};
use crate::wave::{SolveReport, WaveProfile};

pub const BIFURCATION_COLUMNS: [&str; 4] = ["T", "c0", "kappa0", "residual"];
pub const PAIR_COLUMNS: [&str; 7] = ["k1", "k2", "status", "limit_low", "limit_high", "n_roots", "T0_first"];
pub const PHI_CURVE_COLUMNS: [&str; 2] = ["T", "phi"];
pub const PHI_ROOT_COLUMNS: [&str; 4] = ["T0", "bracket_low", "bracket_high", "slope"];
pub const PROFILE_COLUMNS: [&str; 2] = ["x", "u"];
/// Points of the uniform grid on `[0, 2 pi)` used for profile samples.
pub const PROFILE_SAMPLES: usize = 1024;

/// `x` in shortest round-trip form.
pub fn float(x: f64) -> String {
    format!("{x:?}")
}

fn optional(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

fn table<const N: usize>(columns: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::io("<csv>", e);
    w.write_record(columns).map_err(to_err)?;
    for row in rows {
        w.write_record(&row).map_err(to_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::io("<csv>", e))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn bifurcation_csv(points: &[BifurcationPoint]) -> Result<String> {
    table(
        BIFURCATION_COLUMNS,
        points.iter().map(|p| [float(p.t.value()), float(p.c0), float(p.kappa0), float(p.residual())]),
    )
}

pub fn pairs_csv(verdicts: &[PairVerdict]) -> Result<String> {
    table(
        PAIR_COLUMNS,
        verdicts.iter().map(|v| {
            [
                v.pair.k1().to_string(),
                v.pair.k2().to_string(),
                v.status.as_str().to_string(),
                optional(v.limit_low),
                optional(v.limit_high),
                v.roots.len().to_string(),
                optional(v.roots.first().map(|r| r.t0)),
            ]
        }),
    )
}

pub fn phi_curve_csv(samples: &[(f64, f64)]) -> Result<String> {
    table(PHI_CURVE_COLUMNS, samples.iter().map(|&(t, phi)| [float(t), float(phi)]))
}

pub fn phi_roots_csv(roots: &[PhiRoot]) -> Result<String> {
    table(PHI_ROOT_COLUMNS, roots.iter().map(|r| [float(r.t0), float(r.bracket.0), float(r.bracket.1), float(r.slope)]))
}

/// `u` on [`PROFILE_SAMPLES`] uniform points of `[0, 2 pi)`.
pub fn profile_csv(profile: &WaveProfile) -> Result<String> {
    table(PROFILE_COLUMNS, profile.modes.sample(PROFILE_SAMPLES).into_iter().map(|(x, u)| [float(x), float(u)]))
}

/// The JSON header accompanying a profile: parameters, solved values and
/// residuals. `P = pi / kappa` is the half-period of the unscaled wave.
pub fn wave_header(profile: &WaveProfile, report: &SolveReport) -> Value {
    json!({
        "pair": [profile.pair.k1(), profile.pair.k2()],
        "r": [profile.params.r1, profile.params.r2],
        "theta": [profile.params.theta1, profile.params.theta2],
        "c": report.c,
        "kappa": report.kappa,
        "T": report.t,
        "P": std::f64::consts::PI / report.kappa,
        "K": profile.truncation(),
        "samples": PROFILE_SAMPLES,
        "mode": report.mode,
        "asymmetric": report.asymmetric,
        "converged": report.converged,
        "iterations": { "w": report.iterations_w, "newton": report.iterations_newton },
        "residuals": {
            "equations": report.residual_equations,
            "J_inf": report.residual_j_inf,
            "orthogonality": report.residual_orthogonality,
            "lindep": report.residual_lindep,
        },
        "projections": report.projections,
    })
}

/// The expansion document plus `N` (the term count) and `M` (the degree).
pub fn expansion_json(expansion: &PhiExpansion) -> Result<Value> {
    let mut doc = to_value(expansion)?;
    let degree = expansion.monomials.first().map_or(0, |m| m.degree());
    doc["N"] = json!(expansion.term_count());
    doc["M"] = json!(degree);
    Ok(doc)
}

/// `{code, message, context}` for a failed command.
pub fn error_envelope(err: &Error, context: Value) -> Value {
    json!({ "code": err.code(), "message": err.to_string(), "context": context })
}

/// A non-fatal note, e.g. that a pair was reduced by its common divisor.
pub fn warning_record(code: &str, message: &str, context: Value) -> Value {
    json!({ "warning": code, "message": message, "context": context })
}

pub fn to_value(x: &impl Serialize) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::io("<json>", e))
}

/// Pretty JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{double_bifurcation, SurfaceTension, WaveNumberPair};

    #[test]
    fn bifurcation_table_has_fixed_header() {
        let p = WaveNumberPair::new(2, 5).unwrap();
        let bp = double_bifurcation(p, SurfaceTension::new(0.2).unwrap()).unwrap();
        let csv = bifurcation_csv(&[bp]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("T,c0,kappa0,residual"));
        assert!(lines.next().unwrap().starts_with("0.2,"));
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1215, 1e-14, -3.25, 123456.789] {
            assert_eq!(float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(optional(None), "");
    }

    #[test]
    fn envelope_keys() {
        let v = error_envelope(&Error::Domain("bad".into()), json!({ "T": 0.5 }));
        assert_eq!(v["code"], "domain");
        assert_eq!(v["context"]["T"], 0.5);
    }
}

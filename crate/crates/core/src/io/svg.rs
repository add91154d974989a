//! Minimal static SVG line and scatter plots on a fixed 800×500 viewport.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    Line,
    Scatter,
}

/// A reference line across the plot, e.g. `y = 0` or `x = T0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Marker {
    Horizontal { y: f64, label: String },
    Vertical { x: f64, label: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub points: Vec<(f64, f64)>,
    pub x_label: String,
    pub y_label: String,
    pub title: String,
    pub markers: Vec<Marker>,
    /// Fixed axis ranges; derived from the data when unset.
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
}

impl PlotSpec {
    /// Checks that all points are finite and, for a line, that `x` increases.
    pub fn new(
        kind: PlotKind,
        points: Vec<(f64, f64)>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
    ) -> Result<Self> {
        if let Some(p) = points.iter().find(|(x, y)| !(x.is_finite() && y.is_finite())) {
            return Err(Error::NonFinite(format!("plot point {p:?}")));
        }
        if kind == PlotKind::Line && points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::domain("line plot needs strictly increasing x"));
        }
        Ok(Self {
            kind,
            points,
            x_label: x_label.into(),
            y_label: y_label.into(),
            title: String::new(),
            markers: Vec::new(),
            x_range: None,
            y_range: None,
        })
    }

    pub fn title(mut self, title: impl Into<String>) -> Self {
        self.title = title.into();
        self
    }

    pub fn marker(mut self, marker: Marker) -> Self {
        self.markers.push(marker);
        self
    }

    pub fn ranges(mut self, x: Option<(f64, f64)>, y: Option<(f64, f64)>) -> Self {
        self.x_range = x;
        self.y_range = y;
        self
    }

    fn bounds(&self) -> ((f64, f64), (f64, f64)) {
        let mut xs: Vec<f64> = self.points.iter().map(|p| p.0).collect();
        let mut ys: Vec<f64> = self.points.iter().map(|p| p.1).collect();
        for m in &self.markers {
            match m {
                Marker::Horizontal { y, .. } => ys.push(*y),
                Marker::Vertical { x, .. } => xs.push(*x),
            }
        }
        let x = self.x_range.unwrap_or_else(|| padded(&xs));
        let y = self.y_range.unwrap_or_else(|| padded(&ys));
        (x, y)
    }

    pub fn render(&self) -> String {
        let ((x0, x1), (y0, y1)) = self.bounds();
        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
        let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        if !self.title.is_empty() {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
                WIDTH / 2.0,
                escape(&self.title)
            );
        }
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        );
        for t in ticks(x0, x1) {
            let px = sx(t);
            let _ = writeln!(
                s,
                r#"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="black"/>"#,
                TOP + plot_h,
                TOP + plot_h + 5.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
                TOP + plot_h + 18.0,
                tick_label(t)
            );
        }
        for t in ticks(y0, y1) {
            let py = sy(t);
            let _ = writeln!(s, r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/>"#, LEFT - 5.0);
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 8.0,
                py + 4.0,
                tick_label(t)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
            TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        for m in &self.markers {
            let (x_a, y_a, x_b, y_b, label) = match m {
                Marker::Horizontal { y, label } => (LEFT, sy(*y), LEFT + plot_w, sy(*y), label),
                Marker::Vertical { x, label } => (sx(*x), TOP, sx(*x), TOP + plot_h, label),
            };
            let _ = writeln!(
                s,
                r#"<line x1="{x_a:.2}" y1="{y_a:.2}" x2="{x_b:.2}" y2="{y_b:.2}" stroke="gray" stroke-dasharray="6 4"/>"#
            );
            if !label.is_empty() {
                let _ = writeln!(
                    s,
                    r#"<text x="{:.2}" y="{:.2}" fill="gray">{}</text>"#,
                    x_a + 4.0,
                    y_a + 14.0,
                    escape(label)
                );
            }
        }

        match self.kind {
            PlotKind::Line if !self.points.is_empty() => {
                let path: Vec<String> =
                    self.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
                    path.join(" ")
                );
            }
            PlotKind::Line => {}
            PlotKind::Scatter => {
                for &(x, y) in &self.points {
                    let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="steelblue"/>"#, sx(x), sy(y));
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

fn padded(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Round tick positions, about five across `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(t: f64) -> String {
    let a = t.abs();
    if a == 0.0 || (1e-3..1e4).contains(&a) {
        let s = format!("{t:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".into()
        } else {
            s.into()
        }
    } else {
        format!("{t:.1e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_needs_increasing_x() {
        assert!(PlotSpec::new(PlotKind::Line, vec![(1.0, 0.0), (1.0, 2.0)], "x", "y").is_err());
        assert!(PlotSpec::new(PlotKind::Scatter, vec![(1.0, 0.0), (1.0, 2.0)], "x", "y").is_ok());
        assert!(PlotSpec::new(PlotKind::Scatter, vec![(f64::NAN, 0.0)], "x", "y").is_err());
    }

    #[test]
    fn render_has_fixed_viewport_and_marks() {
        let svg = PlotSpec::new(PlotKind::Line, vec![(0.0, -1.0), (0.5, 0.2), (1.0, 1.0)], "T", "phi")
            .unwrap()
            .marker(Marker::Horizontal { y: 0.0, label: String::new() })
            .render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"viewBox="0 0 800 500""#));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("stroke-dasharray"));
        let dots = PlotSpec::new(PlotKind::Scatter, vec![(2.0, 5.0)], "k1", "k2").unwrap().render();
        assert_eq!(dots.matches("<circle").count(), 1);
    }

    #[test]
    fn ticks_are_round() {
        let labels: Vec<String> = ticks(0.0, 1.0).into_iter().map(tick_label).collect();
        assert_eq!(labels, ["0", "0.2", "0.4", "0.6", "0.8", "1"]);
        assert_eq!(tick_label(0.25), "0.25");
        assert_eq!(tick_label(2e-6), "2.0e-6");
    }
}

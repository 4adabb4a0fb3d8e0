//! SVG rendering of two affine plane curves by marching squares.
//!
//! Curve traces are sampled in floating point. Intersection markers come
//! from the exact computation: crossing signs are exact, only their
//! positions are rounded for drawing.

use std::fmt::Write;

use bezout_core::bezout::RealCrossing;
use bezout_core::geometry::{dehomogenize_twisted, HomogeneousPoly};
use bezout_core::{Rational, Rationals};
use num_traits::ToPrimitive;
use thiserror::Error;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error("empty plotting window")]
    EmptyWindow,
    #[error("at least 16 samples per axis are required, got {0}")]
    TooFewSamples(usize),
    #[error("{0}")]
    Core(String),
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub window: [Rational; 4],
    pub samples: usize,
    pub colors: [String; 2],
    pub labels: bool,
}

impl PlotSpec {
    pub fn new(window: [Rational; 4], samples: usize) -> Result<Self, PlotError> {
        if window[0] >= window[1] || window[2] >= window[3] {
            return Err(PlotError::EmptyWindow);
        }
        if samples < 16 {
            return Err(PlotError::TooFewSamples(samples));
        }
        Ok(PlotSpec { window, samples, colors: ["#1f77b4".into(), "#d62728".into()], labels: true })
    }

    fn bounds(&self) -> [f64; 4] {
        let w: Vec<f64> = self.window.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        [w[0], w[1], w[2], w[3]]
    }
}

/// Six significant digits, trailing zeros removed.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Affine chart-0 evaluator with f64 coefficients.
struct Evaluator {
    terms: Vec<(i32, i32, f64)>,
}

impl Evaluator {
    fn new(curve: &HomogeneousPoly<Rationals>) -> Result<Self, PlotError> {
        let affine = dehomogenize_twisted(curve, 0).map_err(|e| PlotError::Core(e.to_string()))?;
        let terms = affine
            .terms()
            .map(|(m, c)| (m[0] as i32, m[1] as i32, c.to_f64().unwrap_or(f64::NAN)))
            .collect();
        Ok(Evaluator { terms })
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c * x.powi(i) * y.powi(j)).sum()
    }
}

type Segment = [(f64, f64); 2];

/// Zero-level segments on a regular grid; saddle cells are resolved by the
/// value at the cell centre.
fn march(e: &Evaluator, b: [f64; 4], n: usize) -> Vec<Segment> {
    let (dx, dy) = ((b[1] - b[0]) / n as f64, (b[3] - b[2]) / n as f64);
    let grid: Vec<Vec<f64>> =
        (0..=n).map(|i| (0..=n).map(|j| e.eval(b[0] + i as f64 * dx, b[2] + j as f64 * dy)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x0, y0) = (b[0] + i as f64 * dx, b[2] + j as f64 * dy);
            // corners counter-clockwise from bottom left
            let c = [
                (x0, y0, grid[i][j]),
                (x0 + dx, y0, grid[i + 1][j]),
                (x0 + dx, y0 + dy, grid[i + 1][j + 1]),
                (x0, y0 + dy, grid[i][j + 1]),
            ];
            let mut hits = Vec::with_capacity(4);
            for k in 0..4 {
                let (p, q) = (c[k], c[(k + 1) % 4]);
                if (p.2 < 0.0) != (q.2 < 0.0) {
                    let t = p.2 / (p.2 - q.2);
                    hits.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
                }
            }
            match hits.len() {
                2 => out.push([hits[0], hits[1]]),
                4 => {
                    let centre = e.eval(x0 + dx / 2.0, y0 + dy / 2.0);
                    if (centre < 0.0) == (c[0].2 < 0.0) {
                        out.push([hits[0], hits[1]]);
                        out.push([hits[2], hits[3]]);
                    } else {
                        out.push([hits[3], hits[0]]);
                        out.push([hits[1], hits[2]]);
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn sign_label(s: i32) -> &'static str {
    match s {
        1 => "+1",
        -1 => "-1",
        _ => "0",
    }
}

/// SVG 1.1 document for the two curves and their labelled real crossings.
pub fn render(
    curves: [&HomogeneousPoly<Rationals>; 2],
    crossings: &[RealCrossing],
    spec: &PlotSpec,
) -> Result<String, PlotError> {
    let b = spec.bounds();
    let scale = (SIZE - 2.0 * MARGIN) / (b[1] - b[0]).max(b[3] - b[2]);
    let (w, h) = ((b[1] - b[0]) * scale + 2.0 * MARGIN, (b[3] - b[2]) * scale + 2.0 * MARGIN);
    let px = |x: f64| fmt6(MARGIN + (x - b[0]) * scale);
    let py = |y: f64| fmt6(h - MARGIN - (y - b[2]) * scale);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt6(w),
        fmt6(h),
        fmt6(w),
        fmt6(h)
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#999999" stroke-width="1">"##);
    if b[0] <= 0.0 && 0.0 <= b[1] {
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(0.0), py(b[2]), px(0.0), py(b[3]));
    }
    if b[2] <= 0.0 && 0.0 <= b[3] {
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(b[0]), py(0.0), px(b[1]), py(0.0));
    }
    let _ = writeln!(s, "</g>");
    for (curve, color) in curves.iter().zip(&spec.colors) {
        let e = Evaluator::new(curve)?;
        let mut d = String::new();
        for [p, q] in march(&e, b, spec.samples) {
            let _ = write!(d, "M{} {}L{} {}", px(p.0), py(p.1), px(q.0), py(q.1));
        }
        let _ = writeln!(s, r#"<path fill="none" stroke="{color}" stroke-width="2" d="{d}"/>"#);
    }
    for c in crossings {
        let (x, y) = (c.approx[0], c.approx[1]);
        if c.chart != 0 || x < b[0] || x > b[1] || y < b[2] || y > b[3] {
            continue;
        }
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="black"/>"#, px(x), py(y));
        if spec.labels {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
                fmt6(MARGIN + (x - b[0]) * scale + 6.0),
                fmt6(h - MARGIN - (y - b[2]) * scale - 6.0),
                sign_label(c.sign)
            );
        }
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(fmt6(1.0), "1");
        assert_eq!(fmt6(-0.5), "-0.5");
        assert_eq!(fmt6(123.456789), "123.457");
        assert_eq!(fmt6(1.0 / 3.0), "0.333333");
        assert_eq!(fmt6(-1e-9), "-0.000000001");
    }

    #[test]
    fn window_checks() {
        let q = |n: i64| Rational::from_integer(n.into());
        assert_eq!(PlotSpec::new([q(1), q(1), q(0), q(1)], 32).unwrap_err(), PlotError::EmptyWindow);
        assert_eq!(PlotSpec::new([q(0), q(1), q(0), q(1)], 8).unwrap_err(), PlotError::TooFewSamples(8));
    }
}

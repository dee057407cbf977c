//! CSV and SVG emitters for sweep results.
//!
//! Accuracy CSV, long form (one row per trial and order):
//!
//! ```text
//! trial,log10_eps,jsd_oracle,jsd_naive,jsd_exact,k,jsd_series,rel_diff
//! ```
//!
//! Floats are written in shortest round-trip scientific notation; a missing
//! `rel_diff` is an empty field. Negativity CSV:
//!
//! ```text
//! log10_eps,trials,negative_naive,fraction_negative_naive,negative_series,fraction_negative_series
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{JsdError, Result};
use crate::experiments::accuracy::{points_for_order, SweepRecord};
use crate::experiments::fit::FitResult;
use crate::experiments::negativity::BucketResult;

pub const ACCURACY_HEADER: &str =
    "trial,log10_eps,jsd_oracle,jsd_naive,jsd_exact,k,jsd_series,rel_diff";
pub const NEGATIVITY_HEADER: &str =
    "log10_eps,trials,negative_naive,fraction_negative_naive,negative_series,fraction_negative_series";

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| JsdError::io(path, e))
}

pub fn accuracy_csv(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(JsdError::NoRecords);
    }
    let mut rows: Vec<(usize, usize, String)> = Vec::new();
    for r in records {
        for (&(k, value), diff) in r.jsd_series.iter().zip(&r.rel_diff_naive_vs_k) {
            let diff = diff.map(|d| format!("{d:e}")).unwrap_or_default();
            let line = format!(
                "{},{:e},{:e},{:e},{:e},{},{:e},{}",
                r.trial,
                r.log10_eps_norm,
                r.jsd_oracle,
                r.jsd_naive,
                r.jsd_exact_reduced,
                k,
                value,
                diff
            );
            rows.push((r.trial, k, line));
        }
    }
    rows.sort_by_key(|(t, k, _)| (*t, *k));
    let mut out = String::with_capacity(rows.len() * 120);
    out.push_str(ACCURACY_HEADER);
    out.push('\n');
    for (_, _, line) in rows {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// Writes the long-form accuracy CSV. Nothing is created for an empty list.
pub fn emit_csv(records: &[SweepRecord], path: impl AsRef<Path>) -> Result<()> {
    let text = accuracy_csv(records)?;
    write_file(path.as_ref(), &text)
}

pub fn negativity_csv(buckets: &[BucketResult]) -> Result<String> {
    if buckets.is_empty() {
        return Err(JsdError::NoRecords);
    }
    let mut out = String::from(NEGATIVITY_HEADER);
    out.push('\n');
    for b in buckets {
        writeln!(
            out,
            "{:e},{},{},{:e},{},{:e}",
            b.log10_eps,
            b.trials,
            b.negative_naive,
            b.fraction_negative_naive(),
            b.negative_series,
            b.fraction_negative_series()
        )
        .unwrap();
    }
    Ok(out)
}

pub fn emit_negativity_csv(buckets: &[BucketResult], path: impl AsRef<Path>) -> Result<()> {
    let text = negativity_csv(buckets)?;
    write_file(path.as_ref(), &text)
}

/// Linear map from data coordinates to a fixed plot area.
struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

impl Frame {
    fn new(x: (f64, f64), y: (f64, f64)) -> Self {
        let pad = |(lo, hi): (f64, f64)| {
            if hi > lo {
                (lo, hi)
            } else {
                (lo - 0.5, hi + 0.5)
            }
        };
        Frame {
            x: pad(x),
            y: pad(y),
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }

    fn axes(&self, out: &mut String, x_label: &str, y_label: &str) {
        let (x0, x1) = (self.px(self.x.0), self.px(self.x.1));
        let (y0, y1) = (self.py(self.y.0), self.py(self.y.1));
        writeln!(
            out,
            r#"<g class="axes" stroke="black" fill="none"><rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/></g>"#,
            x1 - x0,
            y0 - y1
        )
        .unwrap();
        out.push_str(r#"<g class="ticks" font-family="sans-serif" font-size="11">"#);
        out.push('\n');
        for t in integer_ticks(self.x) {
            let x = self.px(t as f64);
            writeln!(
                out,
                r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{t}</text>"#,
                y0 + 5.0,
                y0 + 18.0
            )
            .unwrap();
        }
        for t in integer_ticks(self.y) {
            let y = self.py(t as f64);
            writeln!(
                out,
                r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{t}</text>"#,
                x0 - 5.0,
                x0 - 8.0,
                y + 4.0
            )
            .unwrap();
        }
        out.push_str("</g>\n");
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13">{x_label}</text>"#,
            0.5 * (x0 + x1),
            HEIGHT - 15.0
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="18" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 {:.2})">{y_label}</text>"#,
            0.5 * (y0 + y1),
            0.5 * (y0 + y1)
        )
        .unwrap();
    }
}

fn integer_ticks((lo, hi): (f64, f64)) -> Vec<i64> {
    let span = (hi - lo).max(1.0);
    let step = (span / 10.0).ceil().max(1.0) as i64;
    let first = lo.ceil() as i64;
    let last = hi.floor() as i64;
    (first..=last).filter(|t| t.rem_euclid(step) == 0).collect()
}

fn svg_open(out: &mut String) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    out.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    out.push('\n');
}

/// Scatter of `log10 ||eps||` against `log10 rel_diff`, one series per
/// order, each with its fitted line and a legend entry.
pub fn accuracy_svg(records: &[SweepRecord], fits: &[(usize, FitResult)]) -> Result<String> {
    if records.is_empty() {
        return Err(JsdError::NoRecords);
    }
    let orders: Vec<usize> = records[0].jsd_series.iter().map(|&(k, _)| k).collect();
    let series: Vec<(usize, Vec<(f64, f64)>)> = orders
        .iter()
        .map(|&k| {
            let pts = points_for_order(records, k)
                .into_iter()
                .filter(|&(_, d)| d > 0.0)
                .map(|(x, d)| (x, d.log10()))
                .collect();
            (k, pts)
        })
        .collect();

    let all = series.iter().flat_map(|(_, p)| p.iter());
    let (mut xr, mut yr) = (
        (f64::INFINITY, f64::NEG_INFINITY),
        (f64::INFINITY, f64::NEG_INFINITY),
    );
    for &(x, y) in all {
        xr = (xr.0.min(x), xr.1.max(x));
        yr = (yr.0.min(y), yr.1.max(y));
    }
    if !xr.0.is_finite() {
        xr = (-4.0, 0.0);
        yr = (-16.0, 0.0);
    }
    let frame = Frame::new((xr.0.floor(), xr.1.ceil()), (yr.0.floor(), yr.1.ceil()));

    let mut out = String::new();
    svg_open(&mut out);
    frame.axes(&mut out, "log10 ||eps||", "log10 |series - naive| / naive");

    for (i, (k, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        writeln!(
            out,
            r#"<g class="series" data-order="{k}" fill="{color}" fill-opacity="0.5">"#
        )
        .unwrap();
        for &(x, y) in pts {
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="1.8"/>"#,
                frame.px(x),
                frame.py(y)
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    for (i, (k, fit)) in fits.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let (a, b) = fit.fit_window;
        let (ya, yb) = (fit.intercept + fit.slope * a, fit.intercept + fit.slope * b);
        writeln!(
            out,
            r#"<line class="fit" data-order="{k}" data-slope="{:.4}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
            fit.slope,
            frame.px(a),
            frame.py(ya),
            frame.px(b),
            frame.py(yb)
        )
        .unwrap();
    }

    out.push_str(r#"<g class="legend" font-family="sans-serif" font-size="12">"#);
    out.push('\n');
    for (i, k) in orders.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = TOP + 20.0 * i as f64 + 10.0;
        let x = WIDTH - RIGHT + 15.0;
        let label = match fits.iter().find(|(fk, _)| fk == k) {
            Some((_, f)) => format!("k={k} slope {:.2}", f.slope),
            None => format!("k={k}"),
        };
        writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"/><text x="{:.2}" y="{:.2}">{label}</text>"#,
            x + 10.0,
            y + 4.0
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn render_svg_scatter(
    records: &[SweepRecord],
    fits: &[(usize, FitResult)],
    path: impl AsRef<Path>,
) -> Result<()> {
    let text = accuracy_svg(records, fits)?;
    write_file(path.as_ref(), &text)
}

/// Fraction of negative results per bucket for both evaluators.
pub fn negativity_svg(buckets: &[BucketResult]) -> Result<String> {
    if buckets.is_empty() {
        return Err(JsdError::NoRecords);
    }
    let lo = buckets
        .iter()
        .map(|b| b.log10_eps)
        .fold(f64::INFINITY, f64::min);
    let hi = buckets
        .iter()
        .map(|b| b.log10_eps)
        .fold(f64::NEG_INFINITY, f64::max);
    let frame = Frame::new((lo.floor(), hi.ceil()), (0.0, 1.0));
    let mut out = String::new();
    svg_open(&mut out);
    frame.axes(&mut out, "log10 ||eps||", "fraction negative");

    type Fraction = fn(&BucketResult) -> f64;
    let curves: [(&str, Fraction); 2] = [
        ("naive", BucketResult::fraction_negative_naive),
        ("series", BucketResult::fraction_negative_series),
    ];
    for (i, (name, frac)) in curves.iter().enumerate() {
        let color = PALETTE[i];
        let points: Vec<String> = buckets
            .iter()
            .map(|b| format!("{:.2},{:.2}", frame.px(b.log10_eps), frame.py(frac(b))))
            .collect();
        writeln!(
            out,
            r#"<g class="series" data-method="{name}" stroke="{color}" fill="{color}"><polyline fill="none" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        )
        .unwrap();
        for b in buckets {
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#,
                frame.px(b.log10_eps),
                frame.py(frac(b))
            )
            .unwrap();
        }
        out.push_str("</g>\n");
        let y = TOP + 20.0 * i as f64 + 10.0;
        let x = WIDTH - RIGHT + 15.0;
        writeln!(
            out,
            r#"<g class="legend" font-family="sans-serif" font-size="12"><circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"/><text x="{:.2}" y="{:.2}">{name}</text></g>"#,
            x + 10.0,
            y + 4.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_negativity_svg(buckets: &[BucketResult], path: impl AsRef<Path>) -> Result<()> {
    let text = negativity_svg(buckets)?;
    write_file(path.as_ref(), &text)
}

//! Minimal standalone SVG line plots.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YScale {
    Log,
    Linear,
}

/// Values at or below zero are drawn at this level on a log axis.
pub const LOG_FLOOR: f64 = 1e-16;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Render `(name, points)` series as an SVG document.
pub fn render_svg_plot(series: &[(String, Vec<(f64, f64)>)], scale: YScale) -> Result<String> {
    if series.is_empty() || series.iter().any(|(_, pts)| pts.is_empty()) {
        return Err(HarnessError::Config("every plotted series needs at least one point".into()));
    }
    let mut clamped = false;
    let transformed: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|(_, pts)| {
            pts.iter()
                .map(|&(x, y)| match scale {
                    YScale::Linear => (x, y),
                    YScale::Log => {
                        let v = if y > 0.0 {
                            y
                        } else {
                            clamped = true;
                            LOG_FLOOR
                        };
                        (x, v.log10())
                    }
                })
                .collect()
        })
        .collect();

    let all = transformed.iter().flatten().filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return Err(HarnessError::Config("no finite points to plot".into()));
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<g class="axes" stroke="black" fill="none"><line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/></g>"#,
        b = TOP + ph,
        r = LEFT + pw
    );
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let ylabel = match scale {
            YScale::Log => format!("1e{yv:.1}"),
            YScale::Linear => format!("{yv:.3e}"),
        };
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{:.0}</text><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            sx(xv),
            TOP + ph + 18.0,
            xv,
            LEFT - 6.0,
            sy(yv) + 4.0,
            ylabel
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">iteration</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 22.0
    );

    for (k, pts) in transformed.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = pts
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
    }
    let _ = writeln!(out, r#"<g class="legend">"#);
    for (k, (name, _)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let y = TOP + 10.0 + 18.0 * k as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            y + 4.0,
            escape(name)
        );
    }
    let _ = writeln!(out, "</g>");
    if clamped {
        let _ = writeln!(
            out,
            r#"<text class="note" x="{LEFT}" y="{}" font-size="10">values &lt;= 0 drawn at {LOG_FLOOR:e}</text>"#,
            HEIGHT - 6.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_svg_plot(series: &[(String, Vec<(f64, f64)>)], scale: YScale, path: &Path) -> Result<()> {
    let svg = render_svg_plot(series, scale)?;
    std::fs::write(path, svg).map_err(|e| HarnessError::io(path, e))
}

//! Static SVG scatter plots of two CSV columns.

use std::fmt::Write as _;
use std::path::Path;

pub const WIDTH: f64 = 960.0;
pub const HEIGHT: f64 = 540.0;
const LEFT: f64 = 100.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 70.0;

#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    #[error("cannot read {0}: {1}")]
    Input(String, String),
    #[error("column {0:?} not found; available: {1}")]
    MissingColumn(String, String),
    #[error("row {row}: {column} value {value:?} is not a number")]
    NotNumeric { row: usize, column: String, value: String },
    #[error("no rows to plot")]
    Empty,
    #[error("cannot write {0}: {1}")]
    Output(String, std::io::Error),
}

/// Reads the (x, y) pairs of two named columns.
pub fn read_columns(path: &Path, x: &str, y: &str) -> Result<Vec<(f64, f64)>, PlotError> {
    let input_err = |e: &dyn std::fmt::Display| PlotError::Input(path.display().to_string(), e.to_string());
    let mut rdr = csv::Reader::from_path(path).map_err(|e| input_err(&e))?;
    let headers = rdr.headers().map_err(|e| input_err(&e))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| PlotError::MissingColumn(name.to_string(), headers.iter().collect::<Vec<_>>().join(", ")))
    };
    let (ix, iy) = (col(x)?, col(y)?);
    let mut out = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| input_err(&e))?;
        let get = |i: usize, name: &str| -> Result<f64, PlotError> {
            let v = rec.get(i).unwrap_or("");
            v.trim().parse::<f64>().ok().filter(|f| f.is_finite()).ok_or_else(|| PlotError::NotNumeric {
                row: row + 1,
                column: name.to_string(),
                value: v.to_string(),
            })
        };
        out.push((get(ix, x)?, get(iy, y)?));
    }
    Ok(out)
}

/// Tick positions at a 1-2-5 step covering [lo, hi] with about `target` intervals.
pub fn ticks(lo: f64, hi: f64, target: usize) -> (Vec<f64>, f64) {
    let raw = (hi - lo) / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    ((first..=last).map(|i| i as f64 * step).collect(), step)
}

/// Label for a tick value with as many decimals as the step needs.
pub fn tick_label(v: f64, step: f64) -> String {
    let a = step.abs();
    if !(1e-4..1e6).contains(&a) {
        return format!("{v:.1e}");
    }
    let decimals = if a >= 1.0 { 0 } else { (-a.log10().floor()) as usize };
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Data range padded by 5%, or by one unit around a single value.
fn padded((lo, hi): (f64, f64)) -> (f64, f64) {
    if hi > lo {
        let p = 0.05 * (hi - lo);
        (lo - p, hi + p)
    } else {
        let p = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - p, hi + p)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders the scatter plot; the output depends only on the inputs.
pub fn render_svg(points: &[(f64, f64)], x_label: &str, y_label: &str) -> Result<String, PlotError> {
    if points.is_empty() {
        return Err(PlotError::Empty);
    }
    let fold = |f: fn(&(f64, f64)) -> f64| points.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (x0, x1) = padded(fold(|p| p.0));
    let (y0, y1) = padded(fold(|p| p.1));
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 960 540" width="960" height="540" font-family="sans-serif" font-size="13">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="960" height="540" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="480" y="24" text-anchor="middle" font-size="16">{} against {}</text>"#, escape(y_label), escape(x_label));

    let (xt, xs) = ticks(x0, x1, 8);
    for t in xt {
        let x = sx(t);
        let _ = writeln!(s, r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#e5e5e5"/>"##, TOP, TOP + ph);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 18.0, tick_label(t, xs));
    }
    let (yt, ys) = ticks(y0, y1, 6);
    for t in yt {
        let y = sy(t);
        let _ = writeln!(s, r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e5e5e5"/>"##, LEFT, LEFT + pw);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 6.0, y + 4.0, tick_label(t, ys));
    }
    if y0 < 0.0 && 0.0 < y1 {
        let y = sy(0.0);
        let _ = writeln!(s, r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#888888" stroke-dasharray="4 3"/>"##, LEFT, LEFT + pw);
    }
    let _ = writeln!(s, r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#);
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, HEIGHT - 20.0, escape(x_label));
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(y_label)
    );
    let _ = writeln!(s, r##"<g fill="#1f5fa8">"##);
    for &(x, y) in points {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3"/>"#, sx(x), sy(y));
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    Ok(s)
}

/// `report plot`: reads the CSV, renders, writes the SVG.
pub fn plot_scatter(input: &Path, x: &str, y: &str, output: &Path) -> Result<usize, PlotError> {
    let points = read_columns(input, x, y)?;
    let svg = render_svg(&points, x, y)?;
    std::fs::write(output, svg).map_err(|e| PlotError::Output(output.display().to_string(), e))?;
    Ok(points.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tick_steps() {
        let (t, s) = ticks(0.0, 10.0, 5);
        assert_eq!(s, 2.0);
        assert_eq!(t, vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        let (_, s) = ticks(-0.013, 0.0021, 6);
        assert_eq!(s, 0.005);
        assert_eq!(tick_label(-0.0, 0.005), "0.000");
        assert_eq!(tick_label(0.015, 0.005), "0.015");
        assert_eq!(tick_label(2.0e-7, 1.0e-7), "2.0e-7");
    }

    #[test]
    fn single_point_renders() {
        let s = render_svg(&[(3.0, 0.5)], "n", "c_n").unwrap();
        assert_eq!(s.matches("<circle").count(), 1);
        assert!(s.contains(r#"viewBox="0 0 960 540""#));
        assert!(!s.contains("<script"));
    }

    #[test]
    fn deterministic_and_escaped() {
        let pts = [(1.0, -2.0), (2.0, -1.0), (3.0, 1.5)];
        let a = render_svg(&pts, "n", "g<0").unwrap();
        assert_eq!(a, render_svg(&pts, "n", "g<0").unwrap());
        assert!(a.contains("g&lt;0"));
        assert!(a.contains("stroke-dasharray"));
    }
}

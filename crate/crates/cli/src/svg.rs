//! Deterministic SVG line plots: fixed 800×600 viewport, computed axis
//! ticks, a legend naming each series. No styling randomness, no
//! timestamps; identical input produces byte-identical output.

use std::fmt::Write;

use crate::CliError;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 76.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 52.0;

pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Fixed color per known scheme label, palette order otherwise.
pub fn color_for(label: &str, index: usize) -> &'static str {
    match label {
        "efds" => PALETTE[0],
        "abm" => PALETTE[1],
        "exact" => PALETTE[2],
        _ => PALETTE[index % PALETTE.len()],
    }
}

struct Range {
    min: f64,
    max: f64,
}

fn data_range(series: &[Series], pick: impl Fn(&(f64, f64)) -> f64) -> Option<Range> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for s in series {
        for p in &s.points {
            let v = pick(p);
            if v.is_finite() {
                min = min.min(v);
                max = max.max(v);
            }
        }
    }
    if min > max {
        return None;
    }
    if min == max {
        let pad = if min == 0.0 { 1.0 } else { min.abs() * 0.1 };
        return Some(Range {
            min: min - pad,
            max: max + pad,
        });
    }
    let pad = (max - min) * 0.05;
    Some(Range {
        min: min - pad,
        max: max + pad,
    })
}

/// 1-2-5 tick spacing aiming for about `target` intervals.
fn tick_step(range: f64, target: usize) -> f64 {
    let raw = range / target as f64;
    let magnitude = 10f64.powf(raw.log10().floor());
    let normalized = raw / magnitude;
    let nice = if normalized <= 1.0 {
        1.0
    } else if normalized <= 2.0 {
        2.0
    } else if normalized <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * magnitude
}

fn ticks(range: &Range) -> Vec<f64> {
    let step = tick_step(range.max - range.min, 6);
    let first = (range.min / step).ceil();
    let last = (range.max / step).floor();
    let mut out = Vec::new();
    let mut i = first;
    while i <= last {
        out.push(i * step);
        i += 1.0;
    }
    out
}

fn tick_label(v: f64, step: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let abs = v.abs();
    if !(1e-4..1e5).contains(&abs) {
        return format!("{v:.1e}");
    }
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    format!("{v:.*}", decimals.min(10))
}

/// Renders series into a complete SVG document.
pub fn render(series: &[Series], x_label: &str, y_label: &str) -> Result<String, CliError> {
    let xr = data_range(series, |p| p.0)
        .ok_or_else(|| CliError::Config("nothing to plot: no finite data points".into()))?;
    let yr = data_range(series, |p| p.1)
        .ok_or_else(|| CliError::Config("nothing to plot: no finite data points".into()))?;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - xr.min) / (xr.max - xr.min) * plot_w;
    let py = |y: f64| MARGIN_TOP + (1.0 - (y - yr.min) / (yr.max - yr.min)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    svg.push_str("<rect width=\"800\" height=\"600\" fill=\"white\"/>\n");

    // grid + ticks + labels
    let x_step = tick_step(xr.max - xr.min, 6);
    let y_step = tick_step(yr.max - yr.min, 6);
    for &tx in &ticks(&xr) {
        let x = px(tx);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{0:.2}\" x2=\"{x:.2}\" y2=\"{1:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"1\"/>",
            MARGIN_TOP,
            MARGIN_TOP + plot_h
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x:.2}\" y=\"{0:.2}\" font-family=\"monospace\" font-size=\"12\" \
             fill=\"#333333\" text-anchor=\"middle\">{1}</text>",
            MARGIN_TOP + plot_h + 18.0,
            tick_label(tx, x_step)
        );
    }
    for &ty in &ticks(&yr) {
        let y = py(ty);
        let _ = writeln!(
            svg,
            "<line x1=\"{0:.2}\" y1=\"{y:.2}\" x2=\"{1:.2}\" y2=\"{y:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"1\"/>",
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            "<text x=\"{0:.2}\" y=\"{1:.2}\" font-family=\"monospace\" font-size=\"12\" \
             fill=\"#333333\" text-anchor=\"end\">{2}</text>",
            MARGIN_LEFT - 6.0,
            y + 4.0,
            tick_label(ty, y_step)
        );
    }

    // frame
    let _ = writeln!(
        svg,
        "<rect x=\"{MARGIN_LEFT:.2}\" y=\"{MARGIN_TOP:.2}\" width=\"{plot_w:.2}\" \
         height=\"{plot_h:.2}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>"
    );

    // axis titles
    let _ = writeln!(
        svg,
        "<text x=\"{0:.2}\" y=\"{1:.2}\" font-family=\"monospace\" font-size=\"14\" \
         fill=\"#000000\" text-anchor=\"middle\">{x_label}</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"16\" y=\"{0:.2}\" font-family=\"monospace\" font-size=\"14\" \
         fill=\"#000000\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0:.2})\">{y_label}</text>",
        MARGIN_TOP + plot_h / 2.0
    );

    // series
    for s in series {
        let mut points = String::new();
        for &(x, y) in &s.points {
            if x.is_finite() && y.is_finite() {
                let _ = write!(points, "{:.2},{:.2} ", px(x), py(y));
            }
        }
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>",
            s.color,
            points.trim_end()
        );
    }

    // legend, top-right
    let legend_x = MARGIN_LEFT + plot_w - 150.0;
    let mut legend_y = MARGIN_TOP + 16.0;
    for s in series {
        let _ = writeln!(
            svg,
            "<line x1=\"{legend_x:.2}\" y1=\"{0:.2}\" x2=\"{1:.2}\" y2=\"{0:.2}\" \
             stroke=\"{2}\" stroke-width=\"2\"/>",
            legend_y - 4.0,
            legend_x + 28.0,
            s.color
        );
        let _ = writeln!(
            svg,
            "<text x=\"{0:.2}\" y=\"{legend_y:.2}\" font-family=\"monospace\" font-size=\"13\" \
             fill=\"#000000\">{1}</text>",
            legend_x + 34.0,
            s.label
        );
        legend_y += 18.0;
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(label: &str, pts: Vec<(f64, f64)>) -> Series {
        Series {
            color: color_for(label, 0),
            label: label.to_string(),
            points: pts,
        }
    }

    #[test]
    fn fixed_viewport_and_legend() {
        let s = line("efds", vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)]);
        let svg = render(&[s], "t", "x").unwrap();
        assert!(svg.contains("viewBox=\"0 0 800 600\""));
        assert!(svg.contains("version=\"1.1\""));
        assert!(svg.contains(">efds</text>"));
        assert!(svg.contains("polyline"));
    }

    #[test]
    fn deterministic_output() {
        let make = || line("abm", (0..50).map(|i| (i as f64, (i as f64).sin())).collect());
        let a = render(&[make()], "t", "x").unwrap();
        let b = render(&[make()], "t", "x").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_empty_or_non_finite_data() {
        assert!(render(&[line("efds", vec![])], "t", "x").is_err());
        assert!(render(&[line("efds", vec![(f64::NAN, 1.0)])], "t", "x").is_err());
    }

    #[test]
    fn degenerate_range_is_padded() {
        let s = line("efds", vec![(0.0, 3.0), (1.0, 3.0)]);
        let svg = render(&[s], "t", "x").unwrap();
        assert!(svg.contains("polyline"));
    }

    #[test]
    fn tick_steps_are_nice() {
        assert_eq!(tick_step(10.0, 6), 2.0);
        assert_eq!(tick_step(1.0, 6), 0.2);
        assert_eq!(tick_step(0.55, 6), 0.1);
    }
}

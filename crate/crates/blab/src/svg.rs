//! Minimal SVG emission for reports: line plots with automatic log scaling
//! and disk scatter plots. Output is plain deterministic text so runs diff
//! cleanly.

use crate::{Error, Point, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f6feb", "#d1242f", "#1a7f37", "#8250df", "#9a6700", "#0c7d8f"];

#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Series {
        Series { label: label.into(), points }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

fn tick_label(v: f64) -> String {
    if v == 0.0 || (1e-3..1e4).contains(&v.abs()) {
        format!("{v:.4}")
    } else {
        format!("{v:.2e}")
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, force_log: Option<bool>) -> Result<Axis> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut positive = true;
        for v in values {
            if !v.is_finite() {
                return Err(Error::NonFinite { re: v, im: 0.0 });
            }
            lo = lo.min(v);
            hi = hi.max(v);
            positive &= v > 0.0;
        }
        if lo > hi {
            return Err(Error::EmptyRegion);
        }
        // a flat axis still needs breadth to draw on
        if lo == hi {
            lo -= 0.5;
            hi += 0.5;
        }
        let log = force_log.unwrap_or(positive && hi / lo > 100.0);
        Ok(Axis { lo, hi, log })
    }

    fn map(&self, v: f64, out_lo: f64, out_hi: f64) -> f64 {
        let (a, b, x) = if self.log {
            (self.lo.ln(), self.hi.ln(), v.ln())
        } else {
            (self.lo, self.hi, v)
        };
        out_lo + (x - a) / (b - a) * (out_hi - out_lo)
    }

    fn ticks(&self) -> Vec<f64> {
        (0..=4)
            .map(|k| {
                let t = k as f64 / 4.0;
                if self.log {
                    (self.lo.ln() + t * (self.hi.ln() - self.lo.ln())).exp()
                } else {
                    self.lo + t * (self.hi - self.lo)
                }
            })
            .collect()
    }
}

/// Line plot over the given series; the y axis switches to log scale when all
/// values are positive and spread over more than two decades (or when forced
/// through `log_y`).
pub fn line_plot(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
    log_y: Option<bool>,
) -> Result<String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::EmptyRegion);
    }
    let xs = Axis::fit(series.iter().flat_map(|s| s.points.iter().map(|p| p.0)), Some(false))?;
    let ys = Axis::fit(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)), log_y)?;
    let mut out = header(title);
    let x0 = MARGIN;
    let x1 = WIDTH - MARGIN * 0.5;
    let y0 = HEIGHT - MARGIN;
    let y1 = MARGIN * 0.75;
    out.push_str(&format!(
        "<line x1='{}' y1='{}' x2='{}' y2='{}' stroke='#444'/>\n",
        fmt(x0),
        fmt(y0),
        fmt(x1),
        fmt(y0)
    ));
    out.push_str(&format!(
        "<line x1='{}' y1='{}' x2='{}' y2='{}' stroke='#444'/>\n",
        fmt(x0),
        fmt(y0),
        fmt(x0),
        fmt(y1)
    ));
    for t in xs.ticks() {
        let px = xs.map(t, x0, x1);
        out.push_str(&format!(
            "<line x1='{0}' y1='{1}' x2='{0}' y2='{2}' stroke='#444'/>\n<text x='{0}' y='{3}' font-size='11' text-anchor='middle'>{4}</text>\n",
            fmt(px),
            fmt(y0),
            fmt(y0 + 5.0),
            fmt(y0 + 18.0),
            tick_label(t)
        ));
    }
    for t in ys.ticks() {
        let py = ys.map(t, y0, y1);
        out.push_str(&format!(
            "<line x1='{1}' y1='{0}' x2='{2}' y2='{0}' stroke='#444'/>\n<text x='{3}' y='{0}' font-size='11' text-anchor='end'>{4}</text>\n",
            fmt(py),
            fmt(x0 - 5.0),
            fmt(x0),
            fmt(x0 - 8.0),
            tick_label(t)
        ));
    }
    out.push_str(&format!(
        "<text x='{}' y='{}' font-size='12' text-anchor='middle'>{}</text>\n",
        fmt((x0 + x1) / 2.0),
        fmt(HEIGHT - 12.0),
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x='14' y='{}' font-size='12' transform='rotate(-90 14 {})' text-anchor='middle'>{}</text>\n",
        fmt((y0 + y1) / 2.0),
        fmt((y0 + y1) / 2.0),
        escape(y_label)
    ));
    if ys.log {
        out.push_str(&format!(
            "<text x='{}' y='{}' font-size='10' fill='#666'>log scale</text>\n",
            fmt(x0 + 4.0),
            fmt(y1 - 6.0)
        ));
    }
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt(xs.map(x, x0, x1)), fmt(ys.map(y, y0, y1))))
            .collect();
        out.push_str(&format!(
            "<polyline points='{}' fill='none' stroke='{color}' stroke-width='1.5'/>\n",
            pts.join(" ")
        ));
        out.push_str(&format!(
            "<text x='{}' y='{}' font-size='11' fill='{color}'>{}</text>\n",
            fmt(x1 - 150.0),
            fmt(y1 + 14.0 * i as f64),
            escape(&s.label)
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Scatter of points inside the unit disk, with the disk outline and an
/// optional truncation-radius circle for reference.
pub fn scatter_disk(title: &str, pts: &[Point], r_max: Option<f64>) -> Result<String> {
    if pts.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let cx = WIDTH / 2.0;
    let cy = HEIGHT / 2.0;
    let scale = (HEIGHT - 2.0 * MARGIN) / 2.0;
    let mut out = header(title);
    out.push_str(&format!(
        "<circle cx='{}' cy='{}' r='{}' fill='none' stroke='#444'/>\n",
        fmt(cx),
        fmt(cy),
        fmt(scale)
    ));
    if let Some(r) = r_max {
        out.push_str(&format!(
            "<circle cx='{}' cy='{}' r='{}' fill='none' stroke='#999' stroke-dasharray='4 3'/>\n",
            fmt(cx),
            fmt(cy),
            fmt(scale * r)
        ));
    }
    for p in pts {
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(Error::NonFinite { re: p.re, im: p.im });
        }
        out.push_str(&format!(
            "<circle cx='{}' cy='{}' r='1.4' fill='{}'/>\n",
            fmt(cx + p.re * scale),
            fmt(cy - p.im * scale),
            PALETTE[0]
        ));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 {} {}' font-family='sans-serif'>\n<rect width='{}' height='{}' fill='white'/>\n<text x='{}' y='24' font-size='15' text-anchor='middle'>{}</text>\n",
        WIDTH as u32, HEIGHT as u32, WIDTH as u32, HEIGHT as u32, WIDTH / 2.0, escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_plot_is_deterministic_and_well_formed() {
        let series = vec![
            Series::new("first", vec![(0.0, 1.0), (1.0, 2.0), (2.0, 1.5)]),
            Series::new("second", vec![(0.0, 0.5), (2.0, 0.8)]),
        ];
        let a = line_plot("demo", "x", "value", &series, None).expect("svg");
        let b = line_plot("demo", "x", "value", &series, None).expect("svg");
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<polyline").count(), 2);
        assert!(!a.contains("NaN"));
        assert!(!a.contains("log scale"));
    }

    #[test]
    fn wide_positive_spread_switches_to_log_axis() {
        let series = vec![Series::new("decay", vec![(0.0, 1.0), (1.0, 1e-4), (2.0, 1e-6)])];
        let svg = line_plot("decay", "n", "error", &series, None).expect("svg");
        assert!(svg.contains("log scale"));
        let forced = line_plot("decay", "n", "error", &series, Some(false)).expect("svg");
        assert!(!forced.contains("log scale"));
    }

    #[test]
    fn scatter_draws_every_point() {
        let pts = vec![Point::new(0.1, 0.2), Point::new(-0.4, 0.0), Point::new(0.0, -0.7)];
        let svg = scatter_disk("centers", &pts, Some(0.9)).expect("svg");
        // one disk outline, one truncation circle, three dots
        assert_eq!(svg.matches("<circle").count(), 5);
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn empty_and_non_finite_inputs_are_rejected() {
        assert!(line_plot("t", "x", "y", &[], None).is_err());
        let bad = vec![Series::new("nan", vec![(0.0, f64::NAN)])];
        assert!(line_plot("t", "x", "y", &bad, None).is_err());
        assert!(scatter_disk("t", &[], None).is_err());
        assert!(scatter_disk("t", &[Point::new(f64::INFINITY, 0.0)], None).is_err());
    }

    #[test]
    fn titles_are_escaped() {
        let series = vec![Series::new("s", vec![(0.0, 1.0), (1.0, 2.0)])];
        let svg = line_plot("a < b & c", "x", "y", &series, None).expect("svg");
        assert!(svg.contains("a &lt; b &amp; c"));
    }
}

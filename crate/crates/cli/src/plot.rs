//! Static SVG scatter plots of roots with boundary rays.

use std::fmt::Write as _;

use num_complex::Complex64;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 40.0;

pub struct Ray {
    pub theta: f64,
    pub label: String,
}

pub struct Plot {
    pub title: String,
    pub roots: Vec<Complex64>,
    pub rays: Vec<Ray>,
    pub witnesses: Vec<Complex64>,
}

/// Half-width of the square view: a round number above every point.
fn extent(points: &[Complex64]) -> f64 {
    let far = points.iter().map(|z| z.re.abs().max(z.im.abs())).fold(0.0, f64::max);
    let target = (far * 1.1).max(1.5);
    [1.5, 2.0, 3.0, 4.0, 5.0, 8.0, 10.0, 20.0, 50.0, 100.0]
        .into_iter()
        .find(|&r| r >= target)
        .unwrap_or_else(|| target.ceil())
}

impl Plot {
    pub fn render(&self) -> String {
        let all: Vec<Complex64> = self.roots.iter().chain(&self.witnesses).copied().collect();
        let r = extent(&all);
        let span = SIZE - 2.0 * MARGIN;
        let x = |v: f64| MARGIN + (v + r) / (2.0 * r) * span;
        let y = |v: f64| MARGIN + (r - v) / (2.0 * r) * span;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            SIZE / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r##"<rect x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" fill="none" stroke="#999"/>"##
        );
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444"/>"##,
            x(-r),
            y(0.0),
            x(r),
            y(0.0)
        );
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#444"/>"##,
            x(0.0),
            y(-r),
            x(0.0),
            y(r)
        );
        for tick in [-r, -r / 2.0, r / 2.0, r] {
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{}</text>"#,
                x(tick),
                y(0.0) + 14.0,
                tick
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{}i</text>"#,
                x(0.0) - 4.0,
                y(tick) + 4.0,
                tick
            );
        }
        for ray in &self.rays {
            // Longest segment from the origin that stays in the view.
            let (c, sn) = (ray.theta.cos(), ray.theta.sin().abs());
            let t = r / c.abs().max(sn).max(f64::MIN_POSITIVE);
            for sign in [1.0, -1.0] {
                let _ = writeln!(
                    s,
                    r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#d62728" stroke-dasharray="6 4"/>"##,
                    x(0.0),
                    y(0.0),
                    x(t * c),
                    y(sign * t * sn)
                );
            }
            let _ = writeln!(
                s,
                r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="#d62728">{}</text>"##,
                x(0.6 * t * c),
                y(0.6 * t * sn) - 6.0,
                escape(&ray.label)
            );
        }
        for z in &self.roots {
            let _ = writeln!(s, r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#1f77b4"/>"##, x(z.re), y(z.im));
        }
        for z in &self.witnesses {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="none" stroke="#d62728" stroke-width="2"/>"##,
                x(z.re),
                y(z.im)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

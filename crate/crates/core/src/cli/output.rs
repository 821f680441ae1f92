//! CSV and SVG writers.

use std::fmt::Write as _;

use num_complex::Complex64;

/// Float at 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Csv {
    first: String,
    notes: String,
    header: String,
    body: String,
}

impl Csv {
    /// Starts a document with the `# bargmann <version> <invocation>` line and a header.
    pub fn new(invocation: &str, header: &[&str]) -> Self {
        Self {
            first: format!("# bargmann {} {invocation}\n", env!("CARGO_PKG_VERSION")),
            notes: String::new(),
            header: format!("{}\n", header.join(",")),
            body: String::new(),
        }
    }

    /// Comment lines; placed right after the header until the first row is written.
    pub fn comment(&mut self, text: &str) {
        let target = if self.body.is_empty() { &mut self.notes } else { &mut self.body };
        for line in text.lines() {
            let _ = writeln!(target, "# {line}");
        }
    }

    pub fn row(&mut self, fields: &[f64]) {
        let cells: Vec<String> = fields.iter().map(|&x| num(x)).collect();
        let _ = writeln!(self.body, "{}", cells.join(","));
    }

    pub fn raw(&mut self, cells: &[String]) {
        let _ = writeln!(self.body, "{}", cells.join(","));
    }

    pub fn finish(self) -> String {
        [self.first, self.header, self.notes, self.body].concat()
    }
}

/// A curve or point set to render.
pub enum Layer {
    Polyline { points: Vec<Complex64>, closed: bool, stroke: &'static str },
    Dots { points: Vec<Complex64>, fill: &'static str },
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

pub fn color(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

/// Static SVG of the layers in the square `[−1.1, 1.1]²` with an axis cross.
pub fn svg(invocation: &str, layers: &[Layer]) -> String {
    const SIZE: f64 = 600.0;
    const HALF: f64 = 1.1;
    let map = |z: Complex64| ((z.re + HALF) / (2.0 * HALF) * SIZE, (HALF - z.im) / (2.0 * HALF) * SIZE);
    let mut s = String::new();
    let _ = writeln!(s, "<!-- bargmann {} {} -->", env!("CARGO_PKG_VERSION"), invocation.replace("--", "- -"));
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (cx, cy) = map(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        s,
        r##"<path d="M0 {cy:.3} H{SIZE} M{cx:.3} 0 V{SIZE}" stroke="#888" stroke-width="1" fill="none"/>"##
    );
    for layer in layers {
        match layer {
            Layer::Polyline { points, closed, stroke } => {
                let coords: Vec<String> = points
                    .iter()
                    .map(|&z| {
                        let (x, y) = map(z);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let tag = if *closed { "polygon" } else { "polyline" };
                let _ = writeln!(
                    s,
                    r#"<{tag} points="{}" stroke="{stroke}" stroke-width="1.5" fill="none"/>"#,
                    coords.join(" ")
                );
            }
            Layer::Dots { points, fill } => {
                let _ = writeln!(s, r#"<g fill="{fill}">"#);
                for &z in points {
                    let (x, y) = map(z);
                    let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="0.8"/>"#);
                }
                let _ = writeln!(s, "</g>");
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

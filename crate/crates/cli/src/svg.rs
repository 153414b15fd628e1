//! SVG drawing of the triangulation a fan cuts on the junior simplex.

use std::collections::BTreeSet;
use std::fmt::Write;

use toricres::{Fan, LatticePoint};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    None,
    Coords,
    Ages,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    size_px: u32,
    label_mode: LabelMode,
    highlight: Option<BTreeSet<LatticePoint>>,
}

impl RenderSpec {
    pub const MIN_SIZE: u32 = 64;

    pub fn new(
        size_px: u32,
        label_mode: LabelMode,
        highlight: Option<BTreeSet<LatticePoint>>,
    ) -> CliResult<RenderSpec> {
        if size_px < Self::MIN_SIZE {
            return Err(CliError::input(format!(
                "image size must be at least {} px, got {size_px}",
                Self::MIN_SIZE
            )));
        }
        Ok(RenderSpec {
            size_px,
            label_mode,
            highlight,
        })
    }

    pub fn size_px(&self) -> u32 {
        self.size_px
    }

    pub fn label_mode(&self) -> LabelMode {
        self.label_mode
    }

    pub fn highlight(&self) -> Option<&BTreeSet<LatticePoint>> {
        self.highlight.as_ref()
    }
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size_px: 480,
            label_mode: LabelMode::None,
            highlight: None,
        }
    }
}

struct Frame {
    corners: [(f64, f64); 3],
}

impl Frame {
    fn new(size: f64) -> Frame {
        let pad = size * 0.08;
        let side = size - 2.0 * pad;
        let height = side * 3f64.sqrt() / 2.0;
        let top = pad + (size - 2.0 * pad - height) / 2.0;
        Frame {
            corners: [
                (size / 2.0, top),
                (pad, top + height),
                (size - pad, top + height),
            ],
        }
    }

    /// Central projection onto the junior simplex, then barycentric placement.
    fn place(&self, p: &LatticePoint) -> (f64, f64) {
        let n = p.num().map(|x| x as f64);
        let total: f64 = n.iter().sum();
        let (mut x, mut y) = (0.0, 0.0);
        for (c, (cx, cy)) in n.iter().zip(self.corners) {
            x += c / total * cx;
            y += c / total * cy;
        }
        (x, y)
    }
}

fn label(p: &LatticePoint, mode: LabelMode) -> Option<String> {
    match mode {
        LabelMode::None => None,
        LabelMode::Coords => Some(p.to_string()),
        LabelMode::Ages => Some(p.age().to_string()),
    }
}

/// One `circle` per ray and one `polygon` per maximal cone. Output depends
/// only on the fan and the spec.
pub fn render_svg(fan: &Fan, spec: &RenderSpec) -> String {
    let size = spec.size_px as f64;
    let frame = Frame::new(size);
    let pts: Vec<(f64, f64)> = fan.rays().iter().map(|p| frame.place(p)).collect();
    let radius = (size / 120.0).max(2.0);
    let font = (size / 48.0).max(6.0);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        spec.size_px
    );
    let g = fan.lattice().group();
    let _ = writeln!(s, "<title>{g}</title>");
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<g fill="#eef3fb" stroke="#33415c" stroke-width="1" stroke-linejoin="round">"##
    );
    for cone in fan.cones() {
        let coords: Vec<String> = cone
            .iter()
            .map(|&i| format!("{:.3},{:.3}", pts[i].0, pts[i].1))
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon class="face" points="{}"/>"#,
            coords.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="#33415c">"##);
    for (p, (x, y)) in fan.rays().iter().zip(&pts) {
        let hit = spec.highlight().is_some_and(|h| h.contains(p));
        if hit {
            let _ = writeln!(
                s,
                r##"<circle class="vertex highlight" cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="#d1495b"/>"##,
                radius * 1.5
            );
        } else {
            let _ = writeln!(
                s,
                r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="{radius:.3}"/>"#
            );
        }
    }
    let _ = writeln!(s, "</g>");
    if spec.label_mode() != LabelMode::None {
        let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="{font:.3}">"#);
        for (p, (x, y)) in fan.rays().iter().zip(&pts) {
            if let Some(text) = label(p, spec.label_mode()) {
                let _ = writeln!(
                    s,
                    r#"<text x="{:.3}" y="{:.3}">{text}</text>"#,
                    x + radius * 1.5,
                    y - radius * 1.5
                );
            }
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

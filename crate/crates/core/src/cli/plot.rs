//! Deterministic SVG drawings of instances with tour overlays.
//!
//! Fractional edges of weight 1 are solid, lighter weights dashed. Points in
//! three dimensions are drawn in a fixed oblique projection.

use std::fmt::Write as _;

use crate::geometry::Instance;
use crate::tour::{EdgeWeightVector, Tour};

const CANVAS: f64 = 640.0;
const MARGIN: f64 = 32.0;
/// Screen offset of one unit along the third axis.
const DEPTH: (f64, f64) = (0.45, 0.3);

#[derive(Debug, Clone, Default)]
pub struct PlotOptions {
    pub tour: Option<Tour>,
    pub fractional: Option<EdgeWeightVector>,
    pub labels: bool,
}

fn project(p: &[f64]) -> (f64, f64) {
    let x = p.first().copied().unwrap_or(0.0);
    let y = p.get(1).copied().unwrap_or(0.0);
    let z = p.get(2).copied().unwrap_or(0.0);
    (x + DEPTH.0 * z, y + DEPTH.1 * z)
}

pub fn render_svg(inst: &Instance, opts: &PlotOptions) -> String {
    let raw: Vec<(f64, f64)> = inst.points().iter().map(|p| project(p)).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &raw {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    let width = (x1 - x0) * scale + 2.0 * MARGIN;
    let height = (y1 - y0) * scale + 2.0 * MARGIN;
    // SVG's y axis points down.
    let pos: Vec<(f64, f64)> =
        raw.iter().map(|&(x, y)| (MARGIN + (x - x0) * scale, MARGIN + (y1 - y) * scale)).collect();

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    let line = |out: &mut String, a: usize, b: usize, style: &str| {
        let ((ax, ay), (bx, by)) = (pos[a], pos[b]);
        writeln!(out, r#"<line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" {style}/>"#).unwrap();
    };
    if let Some(x) = &opts.fractional {
        writeln!(out, r#"<g id="fractional" stroke="black" stroke-width="2">"#).unwrap();
        for (e, w) in x.iter() {
            if w >= 1.0 - 1e-9 {
                line(&mut out, e.u(), e.v(), "");
            } else {
                line(&mut out, e.u(), e.v(), r#"stroke-dasharray="6 4""#);
            }
        }
        writeln!(out, "</g>").unwrap();
    }
    if let Some(t) = &opts.tour {
        writeln!(out, r#"<g id="tour" stroke="crimson" stroke-width="1.5" fill="none">"#).unwrap();
        for e in t.edges() {
            line(&mut out, e.u(), e.v(), "");
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(out, r#"<g id="points" fill="black">"#).unwrap();
    for &(x, y) in &pos {
        writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if opts.labels {
        writeln!(out, r#"<g id="labels" font-family="sans-serif" font-size="11" fill="dimgray">"#).unwrap();
        for (v, &(x, y)) in pos.iter().enumerate() {
            writeln!(out, r#"<text x="{:.3}" y="{:.3}">{}</text>"#, x + 5.0, y - 5.0, inst.label(v)).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fractional_xijk, gen_i2, Ijk};

    #[test]
    fn points_only_without_overlays() {
        let svg = render_svg(&gen_i2(Ijk::new(0, 0, 0)), &PlotOptions::default());
        assert_eq!(svg.matches("<circle").count(), 6);
        assert!(!svg.contains("<line"));
    }

    #[test]
    fn half_edges_are_dashed() {
        let p = Ijk::new(2, 2, 1);
        let opts = PlotOptions { fractional: Some(fractional_xijk(p)), ..Default::default() };
        let svg = render_svg(&gen_i2(p), &opts);
        assert_eq!(svg.matches("stroke-dasharray").count(), 6);
        assert_eq!(svg.matches("<line").count(), 6 + (p.n() - 3));
        assert_eq!(svg, render_svg(&gen_i2(p), &opts));
    }
}

//! Presentation-only SVG 1.1 rendering of planar instances. Coordinates are
//! fixed to four decimals so a given (instance, overlay) pair always produces
//! byte-identical output; nothing here feeds back into any algorithm.

use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::geometry::PointSet;

/// Fills for color classes 1..=12; class c uses `PALETTE[(c - 1) % 12]`.
const PALETTE: [&str; 12] = [
    "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#e07b39", "#1c9e77",
    "#7570b3", "#d95f02", "#666666", "#117744",
];

const UNCOLORED: &str = "#b0b0b0";
const HIGHLIGHT: &str = "#cc3311";

#[derive(Debug, Clone, Copy)]
pub enum Overlay<'a> {
    /// Plain scatter.
    None,
    /// Members drawn larger in the highlight color.
    Hitting(&'a [u32]),
    /// Fill by color class.
    Coloring(&'a Coloring),
}

#[derive(Debug, Clone, Copy)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub point_radius: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 640.0, height: 480.0, margin: 24.0, point_radius: 3.0 }
    }
}

/// Renders the first two axes (a 1-D instance gets a constant vertical
/// midline). Points are emitted in id order.
pub fn render(ps: &PointSet, overlay: Overlay<'_>, opts: &SvgOptions) -> String {
    let (w, h, m) = (opts.width, opts.height, opts.margin);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.4}" height="{h:.4}" viewBox="0 0 {w:.4} {h:.4}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}" fill="none" stroke="#333333" stroke-width="1"/>"##,
        m,
        m,
        w - 2.0 * m,
        h - 2.0 * m
    );

    let (xs, ys): (Vec<f64>, Vec<f64>) = ps
        .ids()
        .map(|id| {
            let x = ps.coord(id, 0);
            let y = if ps.dim() >= 2 { ps.coord(id, 1) } else { 0.5 };
            (x, y)
        })
        .unzip();
    let span = |vals: &[f64]| -> (f64, f64) {
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() && hi > lo {
            (lo, hi - lo)
        } else if lo.is_finite() {
            (lo - 0.5, 1.0)
        } else {
            (0.0, 1.0)
        }
    };
    let (x0, xs_span) = span(&xs);
    let (y0, ys_span) = span(&ys);
    let sx = |x: f64| m + (x - x0) / xs_span * (w - 2.0 * m);
    let sy = |y: f64| h - m - (y - y0) / ys_span * (h - 2.0 * m);

    let mut in_set = vec![false; ps.len()];
    if let Overlay::Hitting(members) = overlay {
        for &v in members {
            if (v as usize) < in_set.len() {
                in_set[v as usize] = true;
            }
        }
    }
    for id in ps.ids() {
        let (cx, cy) = (sx(xs[id as usize]), sy(ys[id as usize]));
        let (fill, r) = match overlay {
            Overlay::None => (UNCOLORED, opts.point_radius),
            Overlay::Hitting(_) => {
                if in_set[id as usize] {
                    (HIGHLIGHT, opts.point_radius * 1.8)
                } else {
                    (UNCOLORED, opts.point_radius)
                }
            }
            Overlay::Coloring(c) => {
                let color = c.assignment.get(id as usize).copied().unwrap_or(0);
                if color == 0 {
                    (UNCOLORED, opts.point_radius)
                } else {
                    (PALETTE[(color as usize - 1) % PALETTE.len()], opts.point_radius * 1.3)
                }
            }
        };
        let _ = writeln!(svg, r#"<circle cx="{cx:.4}" cy="{cy:.4}" r="{r:.4}" fill="{fill}"/>"#);
    }
    svg.push_str("</svg>\n");
    svg
}

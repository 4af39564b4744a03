//! SVG 1.1 rendering of planar packings: one circle per disk, one segment
//! per contact edge, optional separating-line overlays. Output bytes are
//! deterministic for identical inputs and options.

use crate::geometry::{ContactGraph, Packing};
use crate::separability::SeparationCertificate;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("rendering requires a planar packing, got dimension {0}")]
    UnsupportedDimension(usize),
}

/// Rendering options. Defaults: 100 SVG units per coordinate unit, 0.6
/// coordinate units of margin, light blue disks (`#dbe7f5` filled,
/// `#27496d` outline), firebrick contact segments, sea-green separator
/// overlays, 2px outlines and 3px segments.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub scale: f64,
    pub margin: f64,
    pub disk_fill: String,
    pub disk_stroke: String,
    pub disk_stroke_width: f64,
    pub contact_stroke: String,
    pub contact_stroke_width: f64,
    pub separator_stroke: String,
    pub separator_stroke_width: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 100.0,
            margin: 0.6,
            disk_fill: "#dbe7f5".into(),
            disk_stroke: "#27496d".into(),
            disk_stroke_width: 2.0,
            contact_stroke: "#b23a48".into(),
            contact_stroke_width: 3.0,
            separator_stroke: "#2e8b57".into(),
            separator_stroke_width: 1.5,
        }
    }
}

/// Renders a planar packing with its contact segments and, if given,
/// separating-line overlays clipped to the viewport.
pub fn render_svg(
    p: &Packing,
    g: &ContactGraph,
    options: &RenderOptions,
    separators: Option<&[SeparationCertificate]>,
) -> Result<String, RenderError> {
    if p.dimension() != 2 {
        return Err(RenderError::UnsupportedDimension(p.dimension()));
    }
    let r = p.radius();
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for c in p.centers() {
        min_x = min_x.min(c[0]);
        min_y = min_y.min(c[1]);
        max_x = max_x.max(c[0]);
        max_y = max_y.max(c[1]);
    }
    let pad = r + options.margin;
    let origin_x = min_x - pad;
    let top_y = max_y + pad;
    let width = (max_x - min_x + 2.0 * pad) * options.scale;
    let height = (max_y - min_y + 2.0 * pad) * options.scale;
    // SVG y grows downward; flip so the figure matches the coordinates.
    let px = |x: f64| (x - origin_x) * options.scale;
    let py = |y: f64| (top_y - y) * options.scale;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {} {}\">",
        width, height
    );

    let _ = writeln!(
        out,
        "  <g class=\"contacts\" stroke=\"{}\" stroke-width=\"{}\">",
        options.contact_stroke, options.contact_stroke_width
    );
    for &(i, j) in g.edges() {
        let a = p.center(i);
        let b = p.center(j);
        let _ = writeln!(
            out,
            "    <line class=\"contact\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            px(a[0]),
            py(a[1]),
            px(b[0]),
            py(b[1])
        );
    }
    out.push_str("  </g>\n");

    let _ = writeln!(
        out,
        "  <g class=\"disks\" fill=\"{}\" fill-opacity=\"0.85\" stroke=\"{}\" stroke-width=\"{}\">",
        options.disk_fill, options.disk_stroke, options.disk_stroke_width
    );
    for c in p.centers() {
        let _ = writeln!(
            out,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            px(c[0]),
            py(c[1]),
            r * options.scale
        );
    }
    out.push_str("  </g>\n");

    if let Some(certs) = separators {
        let _ = writeln!(
            out,
            "  <g class=\"separators\" stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"6 4\">",
            options.separator_stroke, options.separator_stroke_width
        );
        for cert in certs {
            if let Some(((x1, y1), (x2, y2))) = clip_line(
                cert.line.direction,
                cert.line.offset,
                origin_x,
                top_y - (max_y - min_y + 2.0 * pad),
                max_x + pad,
                top_y,
            ) {
                let _ = writeln!(
                    out,
                    "    <line class=\"separator\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    px(x1),
                    py(y1),
                    px(x2),
                    py(y2)
                );
            }
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Intersects the line {x : <x, u> = t} with an axis-aligned box, returning
/// a drawable segment if any.
fn clip_line(
    u: [f64; 2],
    t: f64,
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
) -> Option<((f64, f64), (f64, f64))> {
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let mut push = |x: f64, y: f64| {
        if hits
            .iter()
            .all(|&(hx, hy)| (hx - x).abs() > 1e-9 || (hy - y).abs() > 1e-9)
        {
            hits.push((x, y));
        }
    };
    // <(x, y), u> = t against each box side.
    if u[1].abs() > 1e-12 {
        for x in [min_x, max_x] {
            let y = (t - u[0] * x) / u[1];
            if (min_y..=max_y).contains(&y) {
                push(x, y);
            }
        }
    }
    if u[0].abs() > 1e-12 {
        for y in [min_y, max_y] {
            let x = (t - u[1] * y) / u[0];
            if (min_x..=max_x).contains(&x) {
                push(x, y);
            }
        }
    }
    if hits.len() >= 2 {
        Some((hits[0], hits[1]))
    } else {
        None
    }
}

//! Static SVG drawings of packings.

use std::f64::consts::FRAC_PI_3;
use std::fmt::Write as _;

use crate::builder::PackingConfiguration;
use crate::geometry::{fundamental_vertex, rotate, Point2, PolygonSpec, Sides};
use crate::validation::contact_pairs;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SvgOptions {
    /// Draw a segment between every pair of touching disks.
    pub contacts: bool,
    /// Shade the 60 degree sector starting at the fundamental vertex.
    pub fundamental: bool,
}

const PIXELS: f64 = 600.0;

struct Frame {
    scale: f64,
    half: f64,
}

impl Frame {
    fn x(&self, p: Point2) -> f64 {
        self.half + p.x * self.scale
    }

    // SVG's y axis points down
    fn y(&self, p: Point2) -> f64 {
        self.half - p.y * self.scale
    }

    fn pt(&self, p: Point2) -> String {
        format!("{:.6},{:.6}", self.x(p), self.y(p))
    }
}

/// Container outline (offset by the disk radius), disks, and optional
/// overlays. Identical inputs give identical bytes.
pub fn render_svg(config: &PackingConfiguration, options: SvgOptions) -> String {
    let r = 0.5 * config.diameter.max(0.0);
    let r = if r.is_finite() { r } else { 0.0 };
    let container = PolygonSpec::new(config.sides(), r);
    let extent = container.circumradius() * 1.02;
    let frame = Frame { scale: PIXELS / (2.0 * extent), half: PIXELS / 2.0 };
    let stroke = 1.0;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS:.0}" height="{PIXELS:.0}" viewBox="0 0 {PIXELS:.0} {PIXELS:.0}">"#
    )
    .unwrap();
    writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();

    if options.fundamental {
        writeln!(
            out,
            r##"<path class="fundamental" d="{}" fill="#f2d9a0" fill-opacity="0.6" stroke="none"/>"##,
            sector_path(config.sides(), &frame)
        )
        .unwrap();
    }

    match config.sides() {
        Sides::Regular(_) => {
            let pts: Vec<String> = container.vertices().into_iter().map(|p| frame.pt(p)).collect();
            writeln!(
                out,
                r##"<polygon class="container" points="{}" fill="none" stroke="#000000" stroke-width="{stroke:.6}"/>"##,
                pts.join(" ")
            )
            .unwrap();
        }
        Sides::Circle => {
            let rr = container.apothem() * frame.scale;
            writeln!(
                out,
                r##"<ellipse class="container" cx="{:.6}" cy="{:.6}" rx="{rr:.6}" ry="{rr:.6}" fill="none" stroke="#000000" stroke-width="{stroke:.6}"/>"##,
                frame.half, frame.half
            )
            .unwrap();
        }
    }

    writeln!(out, r##"<g class="disks" fill="#9ec5e8" stroke="#1f4e79" stroke-width="{:.6}">"##, 0.5 * stroke)
        .unwrap();
    for p in &config.centers {
        writeln!(
            out,
            r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}"/>"#,
            frame.x(*p),
            frame.y(*p),
            r * frame.scale
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    if options.contacts && config.n_disks() > 1 {
        writeln!(out, r##"<g class="contacts" stroke="#c0392b" stroke-width="{:.6}">"##, stroke).unwrap();
        for (i, j) in contact_pairs(config) {
            let (a, b) = (config.centers[i], config.centers[j]);
            writeln!(
                out,
                r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#,
                frame.x(a),
                frame.y(a),
                frame.x(b),
                frame.y(b)
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

/// Outline of the fundamental sector of the inner polygon.
fn sector_path(sides: Sides, frame: &Frame) -> String {
    let p1 = fundamental_vertex(sides);
    let end = rotate(p1, FRAC_PI_3);
    let mut d = format!("M {} L {}", frame.pt(Point2::ORIGIN), frame.pt(p1));
    match sides {
        Sides::Regular(s) => {
            let spec = PolygonSpec::inner(sides);
            for t in 1..(s / 6) as i64 {
                let v = Point2::polar(1.0, spec.vertex_angle(t));
                write!(d, " L {}", frame.pt(v)).unwrap();
            }
            write!(d, " L {}", frame.pt(end)).unwrap();
        }
        Sides::Circle => {
            // counterclockwise in the model is clockwise on screen, which
            // is SVG's positive sweep
            let rr = frame.scale;
            write!(d, " A {rr:.6} {rr:.6} 0 0 1 {}", frame.pt(end)).unwrap();
        }
    }
    d.push_str(" Z");
    d
}

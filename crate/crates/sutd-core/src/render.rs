//! Deterministic SVG rendering of grid drawings.
//!
//! The output is plain text with one element per line, so identical inputs
//! produce byte-identical documents. Grid point `(x, y)` maps to pixel
//! `(x * unit, (H + 1 - y) * unit)`: row 1 sits at the bottom, as in the
//! drawing model. Invalid drawings render too, with every offending point
//! ringed and every offending edge restroked in red.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::drawing::{verify_drawing, EdgeMode, GridDrawing, Violation};
use crate::error::Error;
use crate::geom::Point;
use crate::tree::{Role, Tree};
use crate::Result;

/// Sizing knobs for [`render_svg`]. All lengths are in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SvgStyle {
    /// Pixels per grid step.
    pub unit: i64,
    /// Vertex circle radius.
    pub radius: i64,
    /// Verify the drawing and overlay any violations in red.
    pub show_violations: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            unit: 24,
            radius: 6,
            show_violations: true,
        }
    }
}

const EDGE_STROKE: &str = "#555555";
const OVERLAY_STROKE: &str = "#d00000";

fn vertex_paint(role: Role) -> (&'static str, bool) {
    match role {
        Role::Root | Role::Spinal(_) | Role::Plain => ("#ffffff", true),
        Role::SupportU(_) | Role::SupportW(_) => ("#8a8a8a", false),
        Role::WallChild(_) => ("#c4c4c4", false),
        Role::BlueChild(_) => ("#3572b0", false),
        Role::RedCenter(_) => ("#c0392b", true),
        Role::RedLeaf(_) => ("#e74c3c", false),
        Role::GreenCenter(_) => ("#1e8449", true),
        Role::GreenLeaf(_) => ("#2ecc71", false),
    }
}

/// Renders `d` as an SVG document. Vertices are circles colored by role,
/// edges are polylines, and when `style.show_violations` is set the drawing
/// is verified in polyline mode and every violation is overlaid in red.
pub fn render_svg(tree: &Tree, d: &GridDrawing, style: &SvgStyle) -> Result<String> {
    if tree.n() != d.n() {
        return Err(Error::InvalidInput(format!(
            "drawing has {} vertices but the tree has {}",
            d.n(),
            tree.n()
        )));
    }
    if style.unit < 1 || style.radius < 1 {
        return Err(Error::InvalidInput(format!(
            "unit and radius must be positive, got {} and {}",
            style.unit, style.radius
        )));
    }

    let unit = style.unit;
    let px = |x: i64| x * unit;
    let py = |y: i64| (d.h() + 1 - y) * unit;

    let mut bad_points: BTreeSet<Point> = BTreeSet::new();
    let mut bad_edges: BTreeSet<usize> = BTreeSet::new();
    if style.show_violations {
        let report = verify_drawing(tree, d, EdgeMode::Poly)?;
        for v in &report.violations {
            match *v {
                Violation::OutOfBounds { point, .. } => {
                    bad_points.insert(point);
                }
                Violation::DuplicatePoint { point, .. } => {
                    bad_points.insert(point);
                }
                Violation::UpwardViolation { edge_child, .. }
                | Violation::NonMonotoneBend { edge_child, .. } => {
                    bad_edges.insert(edge_child);
                }
                Violation::ProperCrossing { a, b } | Violation::OverlapCollinear { a, b } => {
                    bad_edges.insert(a.child);
                    bad_edges.insert(b.child);
                }
                Violation::PointOnSegment { point, edge, .. } => {
                    bad_points.insert(point);
                    bad_edges.insert(edge.child);
                }
            }
        }
    }

    let vb_w = px(d.w() + 1);
    let vb_h = py(0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {vb_w} {vb_h}\" \
         width=\"{vb_w}\" height=\"{vb_h}\">"
    );

    let polyline = |out: &mut String, child: usize, stroke: &str, width: i64| {
        let mut points = String::new();
        for p in d.edge_polyline(tree, child) {
            if !points.is_empty() {
                points.push(' ');
            }
            let _ = write!(points, "{},{}", px(p.x), py(p.y));
        }
        let _ = writeln!(
            out,
            "  <polyline points=\"{points}\" fill=\"none\" stroke=\"{stroke}\" \
             stroke-width=\"{width}\"/>"
        );
    };

    for child in 0..d.n() {
        if tree.parent(child).is_some() {
            polyline(&mut out, child, EDGE_STROKE, 2);
        }
    }

    for (v, p) in d.vertices().iter().enumerate() {
        let (fill, outlined) = vertex_paint(tree.role(v));
        let stroke = if outlined {
            " stroke=\"#000000\" stroke-width=\"2\""
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"{stroke}/>",
            px(p.x),
            py(p.y),
            style.radius
        );
    }

    for &child in &bad_edges {
        polyline(&mut out, child, OVERLAY_STROKE, 3);
    }
    for p in &bad_points {
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" \
             stroke=\"{OVERLAY_STROKE}\" stroke-width=\"2\"/>",
            px(p.x),
            py(p.y),
            style.radius + 3
        );
    }

    out.push_str("</svg>\n");
    Ok(out)
}

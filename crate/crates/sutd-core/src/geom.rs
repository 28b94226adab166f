//! Exact integer geometry for grid segments.
//!
//! All predicates are computed in `i128`, which is overflow-free for the
//! coordinate range enforced by the drawing types (`|x|, |y| <= 2^31`).

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// A grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// How two non-degenerate closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InteractionKind {
    /// No common point.
    Disjoint,
    /// Exactly one common point, an endpoint of both segments.
    SharedEndpointOnly,
    /// Interiors cross at a single point.
    ProperCrossing,
    /// An endpoint of one lies in the interior of the other (no crossing).
    TouchingInterior,
    /// Collinear with more than one common point.
    CollinearOverlap,
}

/// Sign of the cross product `(b - a) x (c - a)`: positive when `c` is to
/// the left of the directed line `a -> b`.
pub fn orientation(a: Point, b: Point, c: Point) -> i128 {
    let abx = (b.x - a.x) as i128;
    let aby = (b.y - a.y) as i128;
    let acx = (c.x - a.x) as i128;
    let acy = (c.y - a.y) as i128;
    abx * acy - aby * acx
}

/// Whether `p` lies on the closed segment `a..b` (which may be degenerate).
pub fn point_on_segment(p: Point, a: Point, b: Point) -> bool {
    orientation(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Classifies how the closed segments `a1..a2` and `b1..b2` meet.
/// Degenerate (zero-length) segments are rejected.
pub fn segments_properly_interact(
    a1: Point,
    a2: Point,
    b1: Point,
    b2: Point,
) -> Result<InteractionKind> {
    if a1 == a2 || b1 == b2 {
        return Err(Error::InvalidInput(format!(
            "degenerate segment: ({},{})..({},{}) / ({},{})..({},{})",
            a1.x, a1.y, a2.x, a2.y, b1.x, b1.y, b2.x, b2.y
        )));
    }

    let d1 = orientation(b1, b2, a1);
    let d2 = orientation(b1, b2, a2);
    let d3 = orientation(a1, a2, b1);
    let d4 = orientation(a1, a2, b2);

    if (d1 > 0) != (d2 > 0) && d1 != 0 && d2 != 0 && (d3 > 0) != (d4 > 0) && d3 != 0 && d4 != 0 {
        return Ok(InteractionKind::ProperCrossing);
    }

    if d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0 {
        // collinear: compare 1-D intervals along the dominant axis
        let by_x = a1.x != a2.x;
        let key = |p: Point| if by_x { p.x } else { p.y };
        let (alo, ahi) = minmax(key(a1), key(a2));
        let (blo, bhi) = minmax(key(b1), key(b2));
        let lo = alo.max(blo);
        let hi = ahi.min(bhi);
        return Ok(if lo > hi {
            InteractionKind::Disjoint
        } else if lo == hi {
            InteractionKind::SharedEndpointOnly
        } else {
            InteractionKind::CollinearOverlap
        });
    }

    // non-collinear, no proper crossing: any contact is an endpoint of one
    // segment lying on the other
    let mut contact: Option<Point> = None;
    for (p, s1, s2) in [(a1, b1, b2), (a2, b1, b2), (b1, a1, a2), (b2, a1, a2)] {
        if point_on_segment(p, s1, s2) {
            contact = Some(p);
            break;
        }
    }
    let Some(p) = contact else {
        return Ok(InteractionKind::Disjoint);
    };
    let shared = (p == a1 || p == a2) && (p == b1 || p == b2);
    Ok(if shared {
        InteractionKind::SharedEndpointOnly
    } else {
        InteractionKind::TouchingInterior
    })
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

//! Grid drawings and their verification.
//!
//! A [`GridDrawing`] assigns every vertex of a tree a grid point, with
//! optional bend points per edge. Verification checks the strictly-upward
//! planar drawing conditions against a target `W x H` grid:
//!
//! - every vertex and bend lies in `[1, W] x [1, H]`;
//! - no two of those points coincide;
//! - every edge descends strictly in `y` from parent to child, segment by
//!   segment;
//! - no two edge segments properly cross or overlap, and no vertex or bend
//!   lies in the interior of a segment.
//!
//! Failures are reported as [`Violation`]s, not errors; errors are reserved
//! for inputs that do not form a drawing of the given tree at all.
//!
//! Two verifiers are provided. [`verify_drawing`] exploits integer
//! endpoints: between consecutive populated rows the set of spanning
//! segments is fixed, so comparing adjacent pairs of the left-to-right
//! order at the band's top and bottom finds every crossing or overlap, and
//! a per-row scan over exact rational crossing abscissas finds every
//! incidence that happens exactly on a grid row. [`verify_drawing_naive`]
//! classifies all segment pairs directly; it is quadratic and exists as an
//! independent check of the first.
//!
//! Edges that violate monotonicity are excluded from the geometric phase in
//! both verifiers, so the two report identical violation kinds.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::{point_on_segment, segments_properly_interact, InteractionKind, Point};
use crate::tree::Tree;
use crate::Result;

/// Largest coordinate magnitude accepted anywhere in a drawing. Keeps every
/// rational comparison inside `i128`.
pub const COORD_LIMIT: i64 = 1 << 31;

/// Whether a drawing may use bend points on edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeMode {
    /// Every edge is a single segment; bends are rejected as input errors.
    Straight,
    /// Edges may bend at grid points.
    Poly,
}

/// A placement of tree vertices (and optional edge bends) on grid points.
///
/// Positions are indexed by vertex id. Bends are keyed by the child
/// endpoint of the edge and ordered from parent to child. Points outside
/// the `W x H` grid are representable (verification reports them); only
/// coordinates beyond [`COORD_LIMIT`] are rejected outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDrawing {
    w: i64,
    h: i64,
    vertices: Vec<Point>,
    bends: BTreeMap<usize, Vec<Point>>,
}

impl GridDrawing {
    pub fn new(w: i64, h: i64, vertices: Vec<Point>) -> Result<Self> {
        Self::with_bends(w, h, vertices, BTreeMap::new())
    }

    pub fn with_bends(
        w: i64,
        h: i64,
        vertices: Vec<Point>,
        bends: BTreeMap<usize, Vec<Point>>,
    ) -> Result<Self> {
        if !(1..=COORD_LIMIT).contains(&w) || !(1..=COORD_LIMIT).contains(&h) {
            return Err(Error::InvalidInput(format!(
                "grid {w} x {h} out of range 1..={COORD_LIMIT}"
            )));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("drawing has no vertices".into()));
        }
        let check = |p: &Point| -> Result<()> {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(Error::InvalidInput(format!(
                    "coordinate ({}, {}) exceeds magnitude limit {COORD_LIMIT}",
                    p.x, p.y
                )));
            }
            Ok(())
        };
        for p in &vertices {
            check(p)?;
        }
        for (&child, pts) in &bends {
            if child >= vertices.len() {
                return Err(Error::InvalidInput(format!(
                    "bend list for vertex {child} out of range (n = {})",
                    vertices.len()
                )));
            }
            for p in pts {
                check(p)?;
            }
        }
        Ok(GridDrawing { w, h, vertices, bends })
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn pos(&self, v: usize) -> Point {
        self.vertices[v]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Bend points of the edge into `child`, parent side first.
    pub fn bends(&self, child: usize) -> &[Point] {
        self.bends.get(&child).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn bend_map(&self) -> &BTreeMap<usize, Vec<Point>> {
        &self.bends
    }

    pub fn has_bends(&self) -> bool {
        self.bends.values().any(|v| !v.is_empty())
    }

    /// The full polyline of the edge into `child`: parent position, bends,
    /// child position.
    pub fn edge_polyline(&self, tree: &Tree, child: usize) -> Vec<Point> {
        let parent = tree.parent(child).expect("root has no incoming edge");
        let mut line = Vec::with_capacity(2 + self.bends(child).len());
        line.push(self.pos(parent));
        line.extend_from_slice(self.bends(child));
        line.push(self.pos(child));
        line
    }
}

/// What occupies a grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointKind {
    Vertex(usize),
    Bend { edge_child: usize, index: usize },
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointKind::Vertex(v) => write!(f, "vertex {v}"),
            PointKind::Bend { edge_child, index } => {
                write!(f, "bend {index} of edge into {edge_child}")
            }
        }
    }
}

/// One segment of an edge polyline, identified by the edge's child endpoint
/// and the segment index from the parent side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub child: usize,
    pub segment: usize,
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge into {} (segment {})", self.child, self.segment)
    }
}

/// A single failed drawing condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Violation {
    /// A vertex or bend outside `[1, W] x [1, H]`.
    OutOfBounds { kind: PointKind, point: Point },
    /// Two vertices/bends on the same grid point.
    DuplicatePoint { point: Point, first: PointKind, second: PointKind },
    /// A child drawn at or above its parent.
    UpwardViolation { edge_child: usize, parent: Point, child: Point },
    /// A bend sequence that fails to descend strictly.
    NonMonotoneBend { edge_child: usize, from: Point, to: Point },
    /// Two edge segments crossing at an interior point.
    ProperCrossing { a: EdgeRef, b: EdgeRef },
    /// A vertex or bend in the interior of some segment.
    PointOnSegment { kind: PointKind, point: Point, edge: EdgeRef },
    /// Two collinear segments sharing more than a point.
    OverlapCollinear { a: EdgeRef, b: EdgeRef },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfBounds { kind, point } => {
                write!(f, "{kind} at ({}, {}) is outside the grid", point.x, point.y)
            }
            Violation::DuplicatePoint { point, first, second } => {
                write!(f, "{first} and {second} both at ({}, {})", point.x, point.y)
            }
            Violation::UpwardViolation { edge_child, parent, child } => write!(
                f,
                "edge into {edge_child} does not descend: parent at ({}, {}), child at ({}, {})",
                parent.x, parent.y, child.x, child.y
            ),
            Violation::NonMonotoneBend { edge_child, from, to } => write!(
                f,
                "edge into {edge_child} has a non-descending segment ({}, {}) -> ({}, {})",
                from.x, from.y, to.x, to.y
            ),
            Violation::ProperCrossing { a, b } => write!(f, "{a} crosses {b}"),
            Violation::PointOnSegment { kind, point, edge } => write!(
                f,
                "{kind} at ({}, {}) lies on the interior of {edge}",
                point.x, point.y
            ),
            Violation::OverlapCollinear { a, b } => write!(f, "{a} overlaps {b}"),
        }
    }
}

/// Size counters for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerifyStats {
    pub vertices: usize,
    pub edges: usize,
    pub segments: usize,
    pub bends: usize,
}

/// Outcome of verifying one drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub stats: VerifyStats,
}

#[derive(Debug, Clone, Copy)]
struct Seg {
    top: Point,
    bot: Point,
    edge: EdgeRef,
}

struct Prepared {
    violations: Vec<Violation>,
    /// first occupant of each point, in vertex-then-bend claim order
    occupied: HashMap<Point, PointKind>,
    segments: Vec<Seg>,
    stats: VerifyStats,
}

/// Shared non-geometric phases: bounds, duplicates, monotonicity. Returns
/// the segments of monotone edges only; both verifiers run their geometric
/// phase on exactly this set.
fn prepare(tree: &Tree, d: &GridDrawing, mode: EdgeMode) -> Result<Prepared> {
    if tree.n() != d.n() {
        return Err(Error::InvalidInput(format!(
            "drawing has {} vertices but the tree has {}",
            d.n(),
            tree.n()
        )));
    }
    if mode == EdgeMode::Straight && d.has_bends() {
        return Err(Error::InvalidInput(
            "drawing has bend points but straight-line mode was requested".into(),
        ));
    }
    if !d.bends(tree.root()).is_empty() {
        return Err(Error::InvalidInput(format!(
            "vertex {} is the root and has no incoming edge to bend",
            tree.root()
        )));
    }

    let mut violations = Vec::new();
    let mut occupied: HashMap<Point, PointKind> = HashMap::with_capacity(d.n() * 2);
    let mut stats = VerifyStats {
        vertices: d.n(),
        ..VerifyStats::default()
    };

    let mut claim = |p: Point, kind: PointKind, violations: &mut Vec<Violation>| {
        match occupied.entry(p) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(kind);
            }
            std::collections::hash_map::Entry::Occupied(e) => {
                violations.push(Violation::DuplicatePoint {
                    point: p,
                    first: *e.get(),
                    second: kind,
                });
            }
        }
        if p.x < 1 || p.x > d.w() || p.y < 1 || p.y > d.h() {
            violations.push(Violation::OutOfBounds { kind, point: p });
        }
    };

    for (v, &p) in d.vertices().iter().enumerate() {
        claim(p, PointKind::Vertex(v), &mut violations);
    }
    for (&child, pts) in d.bend_map() {
        for (index, &p) in pts.iter().enumerate() {
            stats.bends += 1;
            claim(p, PointKind::Bend { edge_child: child, index }, &mut violations);
        }
    }
    drop(claim);

    let mut segments = Vec::with_capacity(d.n().saturating_sub(1));
    for child in 0..tree.n() {
        if child == tree.root() {
            continue;
        }
        stats.edges += 1;
        let line = d.edge_polyline(tree, child);
        let parent_pos = line[0];
        let child_pos = *line.last().unwrap();
        if child_pos.y >= parent_pos.y {
            violations.push(Violation::UpwardViolation {
                edge_child: child,
                parent: parent_pos,
                child: child_pos,
            });
            continue;
        }
        let mut sane = true;
        for pair in line.windows(2) {
            if pair[1].y >= pair[0].y {
                violations.push(Violation::NonMonotoneBend {
                    edge_child: child,
                    from: pair[0],
                    to: pair[1],
                });
                sane = false;
                break;
            }
        }
        if !sane {
            continue;
        }
        for (i, pair) in line.windows(2).enumerate() {
            segments.push(Seg {
                top: pair[0],
                bot: pair[1],
                edge: EdgeRef { child, segment: i },
            });
        }
    }
    stats.segments = segments.len();

    Ok(Prepared {
        violations,
        occupied,
        segments,
        stats,
    })
}

/// x-coordinate of `seg` at height `y`, as an exact fraction with positive
/// denominator. Requires `seg.bot.y <= y <= seg.top.y`.
fn x_at(seg: &Seg, y: i64) -> (i128, i128) {
    let dy = (seg.top.y - seg.bot.y) as i128;
    let num = seg.bot.x as i128 * dy + (seg.top.x - seg.bot.x) as i128 * (y - seg.bot.y) as i128;
    (num, dy)
}

fn cmp_frac(a: (i128, i128), b: (i128, i128)) -> Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

fn ordered_pair(a: EdgeRef, b: EdgeRef) -> (EdgeRef, EdgeRef) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn finish(mut violations: Vec<Violation>, stats: VerifyStats) -> VerificationReport {
    violations.sort_unstable();
    violations.dedup();
    VerificationReport {
        ok: violations.is_empty(),
        violations,
        stats,
    }
}

#[derive(Clone, Copy)]
enum RowEvent {
    Occupied(i64, PointKind),
    Interior(Seg, (i128, i128)),
}

impl RowEvent {
    fn x(&self) -> (i128, i128) {
        match *self {
            RowEvent::Occupied(x, _) => (x as i128, 1),
            RowEvent::Interior(_, f) => f,
        }
    }
}

/// Verifies a drawing against the grid and planarity conditions using the
/// band sweep described in the module docs. Runs in roughly
/// `O(R * m log m)` for `m` segments spanning `R` populated rows.
pub fn verify_drawing(tree: &Tree, d: &GridDrawing, mode: EdgeMode) -> Result<VerificationReport> {
    let Prepared {
        mut violations,
        occupied,
        mut segments,
        stats,
    } = prepare(tree, d, mode)?;

    // rows of interest: every segment endpoint and every occupied point
    let mut boundaries: Vec<i64> = segments
        .iter()
        .flat_map(|s| [s.top.y, s.bot.y])
        .chain(occupied.keys().map(|p| p.y))
        .collect();
    boundaries.sort_unstable();
    boundaries.dedup();

    let mut occupied_by_row: HashMap<i64, Vec<(i64, PointKind)>> = HashMap::new();
    for (&p, &kind) in &occupied {
        occupied_by_row.entry(p.y).or_default().push((p.x, kind));
    }

    segments.sort_unstable_by_key(|s| s.bot.y);
    let mut next_seg = 0usize;
    let mut active: Vec<Seg> = Vec::new();
    let mut events: Vec<RowEvent> = Vec::new();
    let mut spanning: Vec<(Seg, (i128, i128), (i128, i128))> = Vec::new();

    for (bi, &y) in boundaries.iter().enumerate() {
        while next_seg < segments.len() && segments[next_seg].bot.y <= y {
            active.push(segments[next_seg]);
            next_seg += 1;
        }
        active.retain(|s| s.top.y >= y);

        // row scan at y: occupied points and strict segment interiors
        events.clear();
        if let Some(occ) = occupied_by_row.get(&y) {
            events.extend(occ.iter().map(|&(x, k)| RowEvent::Occupied(x, k)));
        }
        for s in &active {
            if s.bot.y < y && s.top.y > y {
                events.push(RowEvent::Interior(*s, x_at(s, y)));
            }
        }
        events.sort_unstable_by(|a, b| cmp_frac(a.x(), b.x()));
        let mut run_start = 0;
        for i in 1..=events.len() {
            if i < events.len() && cmp_frac(events[i].x(), events[run_start].x()) == Ordering::Equal
            {
                continue;
            }
            let run = &events[run_start..i];
            for (ai, a) in run.iter().enumerate() {
                for b in &run[ai + 1..] {
                    match (a, b) {
                        (RowEvent::Occupied(..), RowEvent::Occupied(..)) => {}
                        (RowEvent::Occupied(x, kind), RowEvent::Interior(seg, _))
                        | (RowEvent::Interior(seg, _), RowEvent::Occupied(x, kind)) => {
                            violations.push(Violation::PointOnSegment {
                                kind: *kind,
                                point: Point::new(*x, y),
                                edge: seg.edge,
                            });
                        }
                        (RowEvent::Interior(sa, _), RowEvent::Interior(sb, _)) => {
                            let kind =
                                segments_properly_interact(sa.top, sa.bot, sb.top, sb.bot)?;
                            let (p, q) = ordered_pair(sa.edge, sb.edge);
                            match kind {
                                InteractionKind::CollinearOverlap => {
                                    violations.push(Violation::OverlapCollinear { a: p, b: q })
                                }
                                _ => violations.push(Violation::ProperCrossing { a: p, b: q }),
                            }
                        }
                    }
                }
            }
            run_start = i;
        }

        // band between this row and the next: order at top vs bottom
        let Some(&hi) = boundaries.get(bi + 1) else {
            continue;
        };
        let lo = y;
        spanning.clear();
        for s in &active {
            if s.bot.y <= lo && s.top.y >= hi {
                spanning.push((*s, x_at(s, hi), x_at(s, lo)));
            }
        }
        spanning.sort_unstable_by(|a, b| cmp_frac(a.1, b.1).then_with(|| cmp_frac(a.2, b.2)));
        for pair in spanning.windows(2) {
            let (sa, top_a, bot_a) = &pair[0];
            let (sb, top_b, bot_b) = &pair[1];
            let top_cmp = cmp_frac(*top_a, *top_b);
            let bot_cmp = cmp_frac(*bot_a, *bot_b);
            let (p, q) = ordered_pair(sa.edge, sb.edge);
            if top_cmp == Ordering::Equal && bot_cmp == Ordering::Equal {
                violations.push(Violation::OverlapCollinear { a: p, b: q });
            } else if top_cmp == Ordering::Less && bot_cmp == Ordering::Greater {
                violations.push(Violation::ProperCrossing { a: p, b: q });
            }
        }
    }

    Ok(finish(violations, stats))
}

/// Quadratic reference verifier: classifies every pair of segments and
/// checks every occupied point against every segment interior. Reports the
/// same violation kinds as [`verify_drawing`].
pub fn verify_drawing_naive(
    tree: &Tree,
    d: &GridDrawing,
    mode: EdgeMode,
) -> Result<VerificationReport> {
    let Prepared {
        mut violations,
        occupied,
        segments,
        stats,
    } = prepare(tree, d, mode)?;

    for (i, a) in segments.iter().enumerate() {
        for b in &segments[i + 1..] {
            if a.edge.child == b.edge.child {
                continue;
            }
            match segments_properly_interact(a.top, a.bot, b.top, b.bot)? {
                InteractionKind::ProperCrossing => {
                    let (p, q) = ordered_pair(a.edge, b.edge);
                    violations.push(Violation::ProperCrossing { a: p, b: q });
                }
                InteractionKind::CollinearOverlap => {
                    let (p, q) = ordered_pair(a.edge, b.edge);
                    violations.push(Violation::OverlapCollinear { a: p, b: q });
                }
                // endpoint contacts are judged through the occupied-point
                // scan below
                InteractionKind::Disjoint
                | InteractionKind::SharedEndpointOnly
                | InteractionKind::TouchingInterior => {}
            }
        }
    }

    for (&p, &kind) in &occupied {
        for s in &segments {
            if p != s.top && p != s.bot && point_on_segment(p, s.top, s.bot) {
                violations.push(Violation::PointOnSegment {
                    kind,
                    point: p,
                    edge: s.edge,
                });
            }
        }
    }

    Ok(finish(violations, stats))
}

/// Checks that a verified drawing fills every grid point below the top row
/// with a vertex: the count of vertices with `y <= H - 1` equals
/// `W * (H - 1)`. Returns an error if the drawing does not verify cleanly.
pub fn full_grid_diagnostic(tree: &Tree, d: &GridDrawing) -> Result<bool> {
    let report = verify_drawing(tree, d, EdgeMode::Poly)?;
    if !report.ok {
        return Err(Error::InvalidInput(format!(
            "full-grid diagnostic requires a valid drawing ({} violations found)",
            report.violations.len()
        )));
    }
    let below_top = d.vertices().iter().filter(|p| p.y <= d.h() - 1).count() as u128;
    Ok(below_top == d.w() as u128 * (d.h() as u128 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;

    fn path_tree(n: usize) -> Tree {
        Tree::plain(0, (0..n).map(|v| if v == 0 { None } else { Some(v - 1) }).collect())
            .unwrap()
    }

    fn star_tree(leaves: usize) -> Tree {
        let mut parents = vec![None];
        parents.extend(std::iter::repeat(Some(0)).take(leaves));
        Tree::plain(0, parents).unwrap()
    }

    fn pts(coords: &[(i64, i64)]) -> Vec<Point> {
        coords.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    /// Runs both verifiers, asserts they agree on verdict and violation
    /// kinds, and returns the band-sweep report.
    fn both(tree: &Tree, d: &GridDrawing, mode: EdgeMode) -> VerificationReport {
        let a = verify_drawing(tree, d, mode).unwrap();
        let b = verify_drawing_naive(tree, d, mode).unwrap();
        assert_eq!(a.ok, b.ok);
        let kinds = |r: &VerificationReport| {
            let mut k: Vec<_> = r.violations.iter().map(std::mem::discriminant).collect();
            k.dedup();
            k
        };
        assert_eq!(
            kinds(&a),
            kinds(&b),
            "band: {:?}\nnaive: {:?}",
            a.violations,
            b.violations
        );
        a
    }

    #[test]
    fn valid_path() {
        let tree = path_tree(3);
        let d = GridDrawing::new(2, 3, pts(&[(1, 3), (1, 2), (2, 1)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert!(r.ok, "{:?}", r.violations);
        assert_eq!(r.stats.segments, 2);
    }

    #[test]
    fn out_of_bounds() {
        let tree = path_tree(2);
        let d = GridDrawing::new(2, 2, pts(&[(1, 2), (3, 1)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert_eq!(
            r.violations,
            vec![Violation::OutOfBounds {
                kind: PointKind::Vertex(1),
                point: Point::new(3, 1),
            }]
        );
    }

    #[test]
    fn duplicate_vertices() {
        let tree = star_tree(2);
        let d = GridDrawing::new(3, 2, pts(&[(2, 2), (1, 1), (1, 1)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert!(!r.ok);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicatePoint { .. })));
        // the two coincident edges also overlap
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OverlapCollinear { .. })));
    }

    #[test]
    fn upward_edge() {
        let tree = path_tree(2);
        let d = GridDrawing::new(2, 2, pts(&[(1, 1), (2, 2)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert_eq!(
            r.violations,
            vec![Violation::UpwardViolation {
                edge_child: 1,
                parent: Point::new(1, 1),
                child: Point::new(2, 2),
            }]
        );
    }

    #[test]
    fn level_edge_is_upward_violation() {
        let tree = path_tree(2);
        let d = GridDrawing::new(3, 2, pts(&[(1, 1), (3, 1)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert!(matches!(r.violations[..], [Violation::UpwardViolation { .. }]));
    }

    #[test]
    fn crossing_edges_at_fractional_row() {
        // root -> v2 runs (2,4)..(1,1); v1 -> v3 runs (1,3)..(3,1); they
        // cross at (3/2, 5/2), strictly inside a band
        let tree = Tree::plain(0, vec![None, Some(0), Some(0), Some(1)]).unwrap();
        let d = GridDrawing::new(3, 4, pts(&[(2, 4), (1, 3), (1, 1), (3, 1)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert!(!r.ok);
        assert_eq!(
            r.violations,
            vec![Violation::ProperCrossing {
                a: EdgeRef { child: 2, segment: 0 },
                b: EdgeRef { child: 3, segment: 0 },
            }]
        );
    }

    #[test]
    fn crossing_at_integer_grid_point() {
        // edges 1->3 and 2->4 cross exactly at (2,2), an unoccupied point
        let tree = Tree::plain(0, vec![None, Some(0), Some(0), Some(1), Some(2)]).unwrap();
        let d = GridDrawing::new(3, 4, pts(&[(2, 4), (1, 3), (3, 3), (3, 1), (1, 1)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert!(!r.ok);
        assert_eq!(
            r.violations,
            vec![Violation::ProperCrossing {
                a: EdgeRef { child: 3, segment: 0 },
                b: EdgeRef { child: 4, segment: 0 },
            }]
        );
    }

    #[test]
    fn vertex_on_edge_interior() {
        let tree = star_tree(2);
        // edge root -> v1 runs straight down through v2's point
        let d = GridDrawing::new(3, 3, pts(&[(2, 3), (2, 1), (2, 2)])).unwrap();
        let r = both(&tree, &d, EdgeMode::Straight);
        assert!(!r.ok);
        assert!(
            r.violations.iter().any(|v| matches!(
                v,
                Violation::PointOnSegment { kind: PointKind::Vertex(2), .. }
            )),
            "{:?}",
            r.violations
        );
    }

    #[test]
    fn collinear_overlapping_edges() {
        // a path drawn down one column is fine: edges meet only at vertices
        let path = path_tree(3);
        let ok_d = GridDrawing::new(2, 4, pts(&[(1, 4), (1, 2), (1, 1)])).unwrap();
        assert!(both(&path, &ok_d, EdgeMode::Straight).ok);
        // a star drawn down one column overlaps
        let star = star_tree(2);
        let d = GridDrawing::new(2, 4, pts(&[(1, 4), (1, 1), (1, 2)])).unwrap();
        let r = both(&star, &d, EdgeMode::Straight);
        assert!(!r.ok);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OverlapCollinear { .. })));
        // v2 also sits on the interior of the root -> v1 edge
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PointOnSegment { .. })));
    }

    #[test]
    fn bends_respected_in_poly_mode() {
        let tree = path_tree(2);
        let mut bends = BTreeMap::new();
        bends.insert(1usize, pts(&[(2, 2)]));
        let d = GridDrawing::with_bends(3, 3, pts(&[(1, 3), (1, 1)]), bends).unwrap();
        assert!(verify_drawing(&tree, &d, EdgeMode::Straight).is_err());
        let r = both(&tree, &d, EdgeMode::Poly);
        assert!(r.ok, "{:?}", r.violations);
        assert_eq!(r.stats.segments, 2);
        assert_eq!(r.stats.bends, 1);
    }

    #[test]
    fn non_monotone_bend() {
        let tree = path_tree(2);
        let mut bends = BTreeMap::new();
        bends.insert(1usize, pts(&[(2, 3)]));
        let d = GridDrawing::with_bends(3, 3, pts(&[(1, 3), (1, 1)]), bends).unwrap();
        let r = both(&tree, &d, EdgeMode::Poly);
        assert!(matches!(
            r.violations[..],
            [Violation::NonMonotoneBend { edge_child: 1, .. }]
        ));
    }

    #[test]
    fn bend_on_other_edge_interior() {
        let star = star_tree(2);
        let mut bends = BTreeMap::new();
        bends.insert(1usize, pts(&[(2, 2)]));
        // edge root -> v2 is vertical through (2,2) where v1's bend sits
        let d = GridDrawing::with_bends(3, 4, pts(&[(2, 4), (3, 1), (2, 1)]), bends).unwrap();
        let r = both(&star, &d, EdgeMode::Poly);
        assert!(!r.ok);
        assert!(
            r.violations.iter().any(|v| matches!(
                v,
                Violation::PointOnSegment {
                    kind: PointKind::Bend { edge_child: 1, index: 0 },
                    ..
                }
            )),
            "{:?}",
            r.violations
        );
    }

    #[test]
    fn size_mismatch_is_error() {
        let tree = path_tree(3);
        let d = GridDrawing::new(2, 2, pts(&[(1, 2), (1, 1)])).unwrap();
        assert!(verify_drawing(&tree, &d, EdgeMode::Straight).is_err());
        assert!(verify_drawing_naive(&tree, &d, EdgeMode::Straight).is_err());
    }

    #[test]
    fn root_bend_is_error() {
        let tree = path_tree(2);
        let mut bends = BTreeMap::new();
        bends.insert(0usize, pts(&[(1, 2)]));
        let d = GridDrawing::with_bends(2, 3, pts(&[(1, 3), (1, 1)]), bends).unwrap();
        assert!(verify_drawing(&tree, &d, EdgeMode::Poly).is_err());
    }

    #[test]
    fn full_grid_diagnostic_on_small_example() {
        // 2x3 grid, 5 vertices: root on the top row, the rest fill rows 1..2
        let tree = Tree::plain(0, vec![None, Some(0), Some(0), Some(1), Some(1)]).unwrap();
        let d =
            GridDrawing::new(2, 3, pts(&[(1, 3), (1, 2), (2, 2), (1, 1), (2, 1)])).unwrap();
        assert!(full_grid_diagnostic(&tree, &d).unwrap());

        // the same tree on a wider grid leaves holes
        let sparse =
            GridDrawing::new(3, 3, pts(&[(1, 3), (1, 2), (2, 2), (1, 1), (2, 1)])).unwrap();
        assert!(!full_grid_diagnostic(&tree, &sparse).unwrap());
    }

    #[test]
    fn full_grid_diagnostic_rejects_invalid_drawing() {
        let tree = path_tree(2);
        let d = GridDrawing::new(1, 2, pts(&[(1, 1), (1, 2)])).unwrap();
        assert!(full_grid_diagnostic(&tree, &d).is_err());
    }

    #[test]
    fn report_is_deterministic() {
        let star = star_tree(3);
        let d = GridDrawing::new(1, 4, pts(&[(1, 4), (1, 3), (1, 2), (1, 1)])).unwrap();
        let a = verify_drawing(&star, &d, EdgeMode::Straight).unwrap();
        let b = verify_drawing(&star, &d, EdgeMode::Straight).unwrap();
        assert_eq!(a, b);
        assert!(!a.ok);
    }
}

//! Exhaustive search for strictly-upward straight-line drawings on a fixed
//! grid.
//!
//! The search places vertices in BFS order from the root, children of each
//! vertex pre-sorted by their subtree signature. Candidate cells are scanned
//! row-major from the top row down, left to right, so the first witness found
//! is canonical and reruns reproduce it exactly. Pruning never changes
//! answers, only speed:
//!
//! * a vertex goes strictly below its parent and no lower than its own
//!   subtree height allows,
//! * after placing a vertex, its unplaced descendants must fit in the free
//!   cells strictly below it,
//! * each placement is checked incrementally against every placed point and
//!   edge, so partial placements are always extendable to valid drawings,
//! * siblings whose subtrees are isomorphic are forced into increasing scan
//!   order (a label swap argument shows this keeps the decision intact, and
//!   [`enumerate_count`] never applies it because it would drop counted
//!   relabelings).
//!
//! Only straight-line drawings are searched; bend placement has no a priori
//! bound. The verifier still accepts polyline drawings produced elsewhere.

use crate::drawing::{verify_drawing, EdgeMode, GridDrawing, VerificationReport};
use crate::error::Error;
use crate::geom::{point_on_segment, segments_properly_interact, InteractionKind, Point};
use crate::tree::{subtree_signatures, tree_height, Tree};
use crate::Result;

/// Vertex cap for [`solve_exact`] and [`min_area`] unless overridden.
pub const SOLVE_VERTEX_LIMIT: usize = 20;
/// Grid-cell cap for [`solve_exact`] and [`min_area`] unless overridden.
pub const SOLVE_CELL_LIMIT: i64 = 36;
/// Hard vertex cap for [`enumerate_count`] and [`enumerate_drawings`].
pub const ENUMERATE_VERTEX_LIMIT: usize = 8;
/// Hard per-side cap for [`enumerate_count`] and [`enumerate_drawings`].
pub const ENUMERATE_SIDE_LIMIT: i64 = 5;
/// Hard vertex cap for [`enumerate_all_placements`].
pub const PLACEMENT_VERTEX_LIMIT: usize = 4;
/// Hard per-side cap for [`enumerate_all_placements`].
pub const PLACEMENT_SIDE_LIMIT: i64 = 3;

/// Knobs for [`solve_exact`] and [`min_area`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Force siblings with isomorphic subtrees into increasing scan order.
    /// Changes runtime, never the yes/no answer.
    pub break_symmetry: bool,
    /// Lift the vertex and cell guards. The search is exponential; overriding
    /// is for patient experiments, not routine use.
    pub guard_override: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            break_symmetry: true,
            guard_override: false,
        }
    }
}

fn check_sides(w: i64, h: i64) -> Result<()> {
    if w < 1 || h < 1 {
        return Err(Error::InvalidInput(format!(
            "grid must be at least 1 x 1, got {w} x {h}"
        )));
    }
    Ok(())
}

fn soft_guard(n: usize, cells: i64, opts: &SolverOptions) -> Result<()> {
    if opts.guard_override {
        return Ok(());
    }
    if n > SOLVE_VERTEX_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "{n} vertices exceeds the solver guard of {SOLVE_VERTEX_LIMIT} \
             (the search is exponential; override to proceed anyway)"
        )));
    }
    if cells > SOLVE_CELL_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "{cells} grid cells exceeds the solver guard of {SOLVE_CELL_LIMIT} \
             (the search is exponential; override to proceed anyway)"
        )));
    }
    Ok(())
}

/// Searches for a strictly-upward straight-line drawing of `tree` on a
/// `w x h` grid. Returns the canonical first witness, or `None` when no
/// drawing exists. `h < tree_height(tree)` is decided without search.
pub fn solve_exact(
    tree: &Tree,
    w: i64,
    h: i64,
    opts: &SolverOptions,
) -> Result<Option<GridDrawing>> {
    check_sides(w, h)?;
    if h < tree_height(tree) as i64 {
        return Ok(None);
    }
    if tree.n() as u128 > (w as u128) * (h as u128) {
        return Ok(None);
    }
    soft_guard(tree.n(), w.saturating_mul(h), opts)?;

    let mut search = Search::new(tree, w, h, opts.break_symmetry);
    let mut witness: Option<Vec<Point>> = None;
    search.run(0, &mut |pos| {
        witness = Some(pos.to_vec());
        true
    });
    match witness {
        Some(pos) => Ok(Some(GridDrawing::new(w, h, pos)?)),
        None => Ok(None),
    }
}

/// Counts the valid strictly-upward straight-line drawings of `tree` on a
/// `w x h` grid, over all injective placements of the labeled vertices.
/// Small inputs only (`n <= 8`, sides `<= 5`); this is the differential
/// oracle for [`solve_exact`], so it never breaks symmetry.
pub fn enumerate_count(tree: &Tree, w: i64, h: i64) -> Result<u64> {
    enumerate_with(tree, w, h, &mut |_| {})
}

/// Like [`enumerate_count`], but hands every valid drawing to `visit` in
/// canonical scan order.
pub fn enumerate_drawings(
    tree: &Tree,
    w: i64,
    h: i64,
    mut visit: impl FnMut(&GridDrawing),
) -> Result<u64> {
    enumerate_with(tree, w, h, &mut |d| visit(d))
}

fn enumerate_with(
    tree: &Tree,
    w: i64,
    h: i64,
    visit: &mut dyn FnMut(&GridDrawing),
) -> Result<u64> {
    check_sides(w, h)?;
    if tree.n() > ENUMERATE_VERTEX_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "{} vertices exceeds the enumeration cap of {ENUMERATE_VERTEX_LIMIT}",
            tree.n()
        )));
    }
    if w > ENUMERATE_SIDE_LIMIT || h > ENUMERATE_SIDE_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "grid {w} x {h} exceeds the enumeration cap of \
             {ENUMERATE_SIDE_LIMIT} x {ENUMERATE_SIDE_LIMIT}"
        )));
    }
    if h < tree_height(tree) as i64 || tree.n() as i64 > w * h {
        return Ok(0);
    }
    let mut count = 0u64;
    let mut search = Search::new(tree, w, h, false);
    search.run(0, &mut |pos| {
        count += 1;
        let d = GridDrawing::new(w, h, pos.to_vec()).expect("in-grid placement");
        visit(&d);
        false
    });
    Ok(count)
}

/// Enumerates every injective placement of the labeled vertices on the grid,
/// valid or not, verifying each one. Returns `(placements, valid)`. This is
/// the unpruned ground truth for the pruned enumeration and for verifier
/// differential tests, so it is capped hard at `n <= 4` on grids up to
/// `3 x 3`.
pub fn enumerate_all_placements(
    tree: &Tree,
    w: i64,
    h: i64,
    mut visit: impl FnMut(&GridDrawing, &VerificationReport),
) -> Result<(u64, u64)> {
    check_sides(w, h)?;
    if tree.n() > PLACEMENT_VERTEX_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "{} vertices exceeds the raw-placement cap of {PLACEMENT_VERTEX_LIMIT}",
            tree.n()
        )));
    }
    if w > PLACEMENT_SIDE_LIMIT || h > PLACEMENT_SIDE_LIMIT {
        return Err(Error::CapacityExceeded(format!(
            "grid {w} x {h} exceeds the raw-placement cap of \
             {PLACEMENT_SIDE_LIMIT} x {PLACEMENT_SIDE_LIMIT}"
        )));
    }
    let n = tree.n();
    if n as i64 > w * h {
        return Ok((0, 0));
    }
    let mut cells = Vec::with_capacity((w * h) as usize);
    for y in (1..=h).rev() {
        for x in 1..=w {
            cells.push(Point::new(x, y));
        }
    }
    let mut pos = vec![Point::new(0, 0); n];
    let mut used = vec![false; cells.len()];
    let mut placements = 0u64;
    let mut valid = 0u64;
    assign(
        tree,
        w,
        h,
        &cells,
        &mut used,
        &mut pos,
        0,
        &mut placements,
        &mut valid,
        &mut visit,
    )?;
    Ok((placements, valid))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    tree: &Tree,
    w: i64,
    h: i64,
    cells: &[Point],
    used: &mut [bool],
    pos: &mut [Point],
    v: usize,
    placements: &mut u64,
    valid: &mut u64,
    visit: &mut impl FnMut(&GridDrawing, &VerificationReport),
) -> Result<()> {
    if v == pos.len() {
        *placements += 1;
        let d = GridDrawing::new(w, h, pos.to_vec())?;
        let report = verify_drawing(tree, &d, EdgeMode::Straight)?;
        if report.ok {
            *valid += 1;
        }
        visit(&d, &report);
        return Ok(());
    }
    for c in 0..cells.len() {
        if used[c] {
            continue;
        }
        used[c] = true;
        pos[v] = cells[c];
        assign(tree, w, h, cells, used, pos, v + 1, placements, valid, visit)?;
        used[c] = false;
    }
    Ok(())
}

/// Finds a feasible grid of minimum area with `W <= max_w`, `H <= max_h`,
/// ties broken by smaller height then smaller width, together with its
/// canonical drawing. `None` when every grid in range is infeasible.
pub fn min_area(
    tree: &Tree,
    max_w: i64,
    max_h: i64,
    opts: &SolverOptions,
) -> Result<Option<(i64, i64, GridDrawing)>> {
    check_sides(max_w, max_h)?;
    soft_guard(tree.n(), max_w.saturating_mul(max_h), opts)?;
    let mut grids = Vec::with_capacity((max_w * max_h) as usize);
    for w in 1..=max_w {
        for h in 1..=max_h {
            grids.push((w, h));
        }
    }
    grids.sort_by_key(|&(w, h)| (w * h, h, w));
    for (w, h) in grids {
        if let Some(d) = solve_exact(tree, w, h, opts)? {
            return Ok(Some((w, h, d)));
        }
    }
    Ok(None)
}

struct Search<'a> {
    tree: &'a Tree,
    w: i64,
    h: i64,
    break_symmetry: bool,
    /// BFS placement order; parents precede children
    order: Vec<usize>,
    /// rows a vertex needs for itself and its deepest descendant chain
    sub_height: Vec<i64>,
    /// vertices in the subtree, the vertex itself included
    sub_size: Vec<i64>,
    /// previous sibling with an isomorphic subtree, if any
    twin: Vec<Option<usize>>,
    pos: Vec<Point>,
    /// vertex ids placed so far, in placement order
    placed: Vec<usize>,
    /// segments of placed edges as (parent point, child point)
    segments: Vec<(Point, Point)>,
    /// occupied cells per row, indexed 1..=h
    row_used: Vec<i64>,
}

impl<'a> Search<'a> {
    fn new(tree: &'a Tree, w: i64, h: i64, break_symmetry: bool) -> Self {
        let n = tree.n();
        let mut children = tree.children_lists();
        let sig = subtree_signatures(tree, &children);
        for list in &mut children {
            list.sort_by(|&a, &b| sig[a].cmp(&sig[b]).then(a.cmp(&b)));
        }

        let mut twin = vec![None; n];
        for list in &children {
            for pair in list.windows(2) {
                if sig[pair[0]] == sig[pair[1]] {
                    twin[pair[1]] = Some(pair[0]);
                }
            }
        }

        let mut order = Vec::with_capacity(n);
        order.push(tree.root());
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            order.extend_from_slice(&children[v]);
        }

        let mut sub_height = vec![1i64; n];
        let mut sub_size = vec![1i64; n];
        for &v in order.iter().rev() {
            for &c in &children[v] {
                sub_height[v] = sub_height[v].max(sub_height[c] + 1);
                sub_size[v] += sub_size[c];
            }
        }

        Search {
            tree,
            w,
            h,
            break_symmetry,
            order,
            sub_height,
            sub_size,
            twin,
            pos: vec![Point::new(0, 0); n],
            placed: Vec::with_capacity(n),
            segments: Vec::with_capacity(n.saturating_sub(1)),
            row_used: vec![0; h as usize + 1],
        }
    }

    /// Scan-order rank of a cell: top row first, left to right.
    fn cell_rank(&self, p: Point) -> i64 {
        (self.h - p.y) * self.w + (p.x - 1)
    }

    fn free_strictly_below(&self, y: i64) -> i64 {
        let mut free = 0;
        for row in 1..y {
            free += self.w - self.row_used[row as usize];
        }
        free
    }

    /// Recursive placement of `order[slot..]`. `visit` sees each complete
    /// placement and returns true to stop the search.
    fn run(&mut self, slot: usize, visit: &mut dyn FnMut(&[Point]) -> bool) -> bool {
        if slot == self.order.len() {
            return visit(&self.pos);
        }
        let v = self.order[slot];
        let parent_pos = self.tree.parent(v).map(|p| self.pos[p]);
        let y_hi = parent_pos.map_or(self.h, |pp| pp.y - 1);
        let y_lo = self.sub_height[v];
        let min_rank = match self.twin[v] {
            Some(t) if self.break_symmetry => self.cell_rank(self.pos[t]) + 1,
            _ => 0,
        };
        for y in (y_lo..=y_hi).rev() {
            // rows below shrink as y drops, so the first failure is final
            if self.free_strictly_below(y) < self.sub_size[v] - 1 {
                break;
            }
            for x in 1..=self.w {
                let p = Point::new(x, y);
                if self.cell_rank(p) < min_rank || !self.can_place(p, parent_pos) {
                    continue;
                }
                self.pos[v] = p;
                self.placed.push(v);
                self.row_used[y as usize] += 1;
                if let Some(pp) = parent_pos {
                    self.segments.push((pp, p));
                }
                let stop = self.run(slot + 1, visit);
                if parent_pos.is_some() {
                    self.segments.pop();
                }
                self.row_used[y as usize] -= 1;
                self.placed.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }

    fn can_place(&self, p: Point, parent_pos: Option<Point>) -> bool {
        for &u in &self.placed {
            let q = self.pos[u];
            if q == p {
                return false;
            }
            // placed vertices must stay off the new edge's interior
            if let Some(pp) = parent_pos {
                if q != pp && point_on_segment(q, pp, p) {
                    return false;
                }
            }
        }
        for &(a, b) in &self.segments {
            // the new vertex must stay off every placed edge's interior
            if p != a && p != b && point_on_segment(p, a, b) {
                return false;
            }
            if let Some(pp) = parent_pos {
                let kind = segments_properly_interact(pp, p, a, b)
                    .expect("strict upwardness rules out degenerate segments");
                match kind {
                    InteractionKind::Disjoint | InteractionKind::SharedEndpointOnly => {}
                    InteractionKind::ProperCrossing
                    | InteractionKind::TouchingInterior
                    | InteractionKind::CollinearOverlap => return false,
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_rooted_trees;

    fn star(leaves: usize) -> Tree {
        let mut parent = vec![None];
        parent.extend(std::iter::repeat_n(Some(0), leaves));
        Tree::plain(0, parent).unwrap()
    }

    fn path(n: usize) -> Tree {
        let parent = (0..n).map(|v| v.checked_sub(1)).collect();
        Tree::plain(0, parent).unwrap()
    }

    fn pts(coords: &[(i64, i64)]) -> Vec<Point> {
        coords.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn star3_on_3x2_has_canonical_witness() {
        let d = solve_exact(&star(3), 3, 2, &SolverOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(d.vertices(), pts(&[(1, 2), (1, 1), (2, 1), (3, 1)]));
        assert!(verify_drawing(&star(3), &d, EdgeMode::Straight)
            .unwrap()
            .ok);
    }

    #[test]
    fn star3_on_2x2_is_infeasible() {
        assert!(solve_exact(&star(3), 2, 2, &SolverOptions::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn path4_on_1x4_is_forced_vertical() {
        let d = solve_exact(&path(4), 1, 4, &SolverOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(d.vertices(), pts(&[(1, 4), (1, 3), (1, 2), (1, 1)]));
    }

    #[test]
    fn short_grids_are_rejected_without_search() {
        // width 1000 would trip the cell guard if the height check did not
        // come first
        assert!(solve_exact(&path(3), 1000, 2, &SolverOptions::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn too_few_cells_is_a_plain_no() {
        assert!(solve_exact(&star(3), 1, 3, &SolverOptions::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn guards_are_soft() {
        let wide = solve_exact(&path(1), 37, 1, &SolverOptions::default());
        assert!(matches!(wide, Err(Error::CapacityExceeded(_))));
        let big = solve_exact(&star(20), 6, 6, &SolverOptions::default());
        assert!(matches!(big, Err(Error::CapacityExceeded(_))));

        let override_opts = SolverOptions {
            guard_override: true,
            ..SolverOptions::default()
        };
        let d = solve_exact(&path(1), 37, 1, &override_opts).unwrap().unwrap();
        assert_eq!(d.vertices(), pts(&[(1, 1)]));
    }

    #[test]
    fn enumeration_matches_frozen_counts() {
        assert_eq!(enumerate_count(&path(1), 2, 1).unwrap(), 2);
        assert_eq!(enumerate_count(&path(2), 1, 2).unwrap(), 1);
        assert_eq!(enumerate_count(&star(2), 2, 2).unwrap(), 4);
    }

    #[test]
    fn enumeration_caps_are_hard() {
        assert!(matches!(
            enumerate_count(&path(9), 5, 5),
            Err(Error::CapacityExceeded(_))
        ));
        assert!(matches!(
            enumerate_count(&path(2), 6, 5),
            Err(Error::CapacityExceeded(_))
        ));
    }

    #[test]
    fn pruned_enumeration_matches_raw_placements() {
        for n in 1..=4 {
            for tree in enumerate_rooted_trees(n) {
                for w in 1..=3 {
                    for h in 1..=3 {
                        let (_, valid) =
                            enumerate_all_placements(&tree, w, h, |_, _| {}).unwrap();
                        let pruned = enumerate_count(&tree, w, h).unwrap();
                        assert_eq!(pruned, valid, "n={n} w={w} h={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumerated_drawings_verify_and_arrive_in_order() {
        // every visited drawing is valid, and root ranks never decrease
        let mut ranks = Vec::new();
        let count = enumerate_drawings(&star(2), 2, 2, |d| {
            assert!(verify_drawing(&star(2), d, EdgeMode::Straight).unwrap().ok);
            let root = d.pos(0);
            ranks.push((2 - root.y) * 2 + (root.x - 1));
        })
        .unwrap();
        assert_eq!(count, 4);
        assert!(ranks.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn min_area_frozen_examples() {
        let opts = SolverOptions::default();
        let (w, h, d) = min_area(&path(3), 3, 3, &opts).unwrap().unwrap();
        assert_eq!((w, h), (1, 3));
        assert!(verify_drawing(&path(3), &d, EdgeMode::Straight).unwrap().ok);

        let (w, h, _) = min_area(&star(2), 4, 4, &opts).unwrap().unwrap();
        assert_eq!((w, h), (2, 2));

        let (w, h, _) = min_area(&path(1), 2, 2, &opts).unwrap().unwrap();
        assert_eq!((w, h), (1, 1));
    }

    #[test]
    fn min_area_reports_infeasible_ranges() {
        assert!(min_area(&star(3), 2, 2, &SolverOptions::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn symmetry_breaking_preserves_decisions() {
        let on = SolverOptions::default();
        let off = SolverOptions {
            break_symmetry: false,
            ..on
        };
        for n in 1..=5 {
            for tree in enumerate_rooted_trees(n) {
                for w in 1..=4 {
                    for h in 1..=4 {
                        let a = solve_exact(&tree, w, h, &on).unwrap();
                        let b = solve_exact(&tree, w, h, &off).unwrap();
                        assert_eq!(a.is_some(), b.is_some(), "n={n} w={w} h={h}");
                        for d in a.iter().chain(b.iter()) {
                            assert!(verify_drawing(&tree, d, EdgeMode::Straight)
                                .unwrap()
                                .ok);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn solver_decision_matches_enumeration_on_small_grids() {
        for n in 1..=5 {
            for tree in enumerate_rooted_trees(n) {
                for w in 1..=4 {
                    for h in 1..=4 {
                        let found = solve_exact(&tree, w, h, &SolverOptions::default())
                            .unwrap()
                            .is_some();
                        let count = enumerate_count(&tree, w, h).unwrap();
                        assert_eq!(found, count > 0, "n={n} w={w} h={h}");
                    }
                }
            }
        }
    }

    #[test]
    fn search_is_deterministic() {
        let opts = SolverOptions::default();
        let a = solve_exact(&star(3), 3, 3, &opts).unwrap().unwrap();
        let b = solve_exact(&star(3), 3, 3, &opts).unwrap().unwrap();
        assert_eq!(a, b);
    }
}

//! Construction of a strictly-upward drawing from a matching.
//!
//! Given the reduction tree of an instance and a perfect matching
//! `(pi, pi_prime)`, this module places every vertex on the `(B+4) x (2k+3)`
//! grid. Writing `L_m` for the grid row `y = H - m + 1`, the layout is:
//!
//! - `L_1`: the root alone, at column `ceil(W / 2)`;
//! - `L_2`: `u_2` at column 1, the wall-0 children filling columns
//!   `2..=B+3`, `w_2` at column `W`;
//! - `L_{2i+1}` (`i = 1..=k`): `u` at 1, the red star center of triple
//!   `pi(i)` at 2, `B` of wall `i`'s children at `3..=B+2` (among them
//!   `v_{2i+1}`), the green star center of `pi_prime(i)` at `B+3`, `w` at
//!   `W`;
//! - `L_{2i+2}`: `u` at 1, the `r` red leaves at `2..=r+1`, wall leaf `z`
//!   at `r+2`, the `b` blue children at `r+3..=r+b+2`, wall leaf `z'` at
//!   `r+b+3`, the `g` green leaves at `r+b+4..=B+3`, `w` at `W` (the row is
//!   full exactly because `r + b + g = B` for a matched triple);
//! - `L_{2k+3}`: `u` at 1, wall `k+1`'s children at `2..=B+3`, `w` at `W`.
//!
//! Two of each middle wall's leaves (`z`, `z'`, the two lowest ids)
//! drop to the layer below the rest; their long edges pass the full
//! intermediate row between columns. That requires the drop targets to
//! differ from the wall root's column by an odd amount on both sides,
//! which is possible exactly when `b_i` is odd.
//!
//! The wall root `v_{2i}` and its continuation `v_{2i+1}` share a column
//! `z''` that must lie both in `v_{2i}`'s own group interval and strictly
//! between `z` and `z'`; [`choose_spinal_descent`] computes those
//! intervals and picks the least feasible column of correct parity.
//! Within a group, unpinned members occupy free columns in ascending id
//! order.

use serde::{Deserialize, Serialize};

use crate::drawing::GridDrawing;
use crate::error::Error;
use crate::geom::Point;
use crate::n3dm::{check_solution, N3dmSolution};
use crate::reduction::ReductionArtifacts;
use crate::Result;

/// The column picked for one wall root / continuation pair, with the
/// intervals that constrained it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentChoice {
    /// 1-based index `i` of the spinal pair `(v_{2i}, v_{2i+1})`.
    pub index: usize,
    /// columns of the group `v_{2i}` belongs to on its own row
    pub upper: (i64, i64),
    /// columns of the blue block under `v_{2i+1}`
    pub lower: (i64, i64),
    /// intersection of the two
    pub overlap: (i64, i64),
    /// chosen shared column for `v_{2i}` and `v_{2i+1}`
    pub column: i64,
}

fn blue_interval(art: &ReductionArtifacts, sol: &N3dmSolution, i: usize) -> (i64, i64) {
    let r = art.r_val(sol.pi[i - 1]) as i64;
    let b = art.b_val(i) as i64;
    (r + 3, r + b + 2)
}

/// Picks the shared column for every `(v_{2i}, v_{2i+1})` pair,
/// `i = 1..=k`. The column must lie in the intersection of the group
/// interval of `v_{2i}` and the blue interval of triple `i`, at odd
/// distance from the left drop column `r + 2`; intersections of fewer
/// than two columns are rejected so that both parities are available.
pub fn choose_spinal_descent(
    art: &ReductionArtifacts,
    sol: &N3dmSolution,
) -> Result<Vec<DescentChoice>> {
    if !check_solution(art.instance(), sol)? {
        return Err(Error::InvalidInput(
            "the given assignment is not a perfect matching of the instance".into(),
        ));
    }
    for i in 1..=art.k() {
        if art.b_val(i) % 2 == 0 {
            return Err(Error::InvalidInput(format!(
                "b_{i} = {} is even; the drop columns around the blue block \
                 cannot both sit at odd offsets",
                art.b_val(i)
            )));
        }
    }

    let big_b = art.target() as i64;
    let mut choices = Vec::with_capacity(art.k());
    for i in 1..=art.k() {
        let upper = if i == 1 {
            (2, big_b + 3)
        } else {
            blue_interval(art, sol, i - 1)
        };
        let lower = blue_interval(art, sol, i);
        let overlap = (upper.0.max(lower.0), upper.1.min(lower.1));
        if overlap.1 - overlap.0 < 1 {
            return Err(Error::SynthesisInfeasible {
                index: i,
                reason: format!(
                    "group columns {}..={} and blue columns {}..={} share fewer than two columns",
                    upper.0, upper.1, lower.0, lower.1
                ),
            });
        }
        // left drop column is r + 2, one left of the blue block
        let z_col = lower.0 - 1;
        let column = if (overlap.0 - z_col) % 2 != 0 {
            overlap.0
        } else {
            overlap.0 + 1
        };
        choices.push(DescentChoice {
            index: i,
            upper,
            lower,
            overlap,
            column,
        });
    }
    Ok(choices)
}

/// Places a group's vertices on `row`, filling the columns `cols.0..=cols.1`
/// left to right in ascending id order, except that `pinned` (if any) gets
/// its fixed column.
fn place_group(
    pos: &mut [Point],
    ids: &[usize],
    cols: (i64, i64),
    row: i64,
    pinned: Option<(usize, i64)>,
) {
    debug_assert_eq!((cols.1 - cols.0 + 1) as usize, ids.len());
    let mut sorted: Vec<usize> = ids.to_vec();
    sorted.sort_unstable();
    let mut col = cols.0;
    for v in sorted {
        if let Some((pv, pc)) = pinned {
            if v == pv {
                pos[v] = Point::new(pc, row);
                continue;
            }
            if col == pc {
                col += 1;
            }
        }
        pos[v] = Point::new(col, row);
        col += 1;
    }
}

/// Builds the canonical strictly-upward straight-line drawing of the
/// reduction tree witnessing the matching `sol`.
pub fn synthesize_drawing(art: &ReductionArtifacts, sol: &N3dmSolution) -> Result<GridDrawing> {
    let choices = choose_spinal_descent(art, sol)?;
    let k = art.k();
    let w = art.width();
    let h = art.height();
    let big_b = art.target() as i64;
    let row = |layer: usize| h - layer as i64 + 1;

    let mut pos = vec![Point::new(0, 0); art.tree().n()];

    // root and the two supporting paths
    pos[art.spinal_id(1)] = Point::new((w + 1) / 2, h);
    for m in 2..=2 * k + 3 {
        pos[art.support_u_id(m)] = Point::new(1, row(m));
        pos[art.support_w_id(m)] = Point::new(w, row(m));
    }

    // wall 0 on L_2, with v_2 pinned at the first chosen column
    let mut wall0 = art.wall_leaf_ids(0).to_vec();
    wall0.push(art.spinal_id(2));
    place_group(
        &mut pos,
        &wall0,
        (2, big_b + 3),
        row(2),
        Some((art.spinal_id(2), choices[0].column)),
    );

    for i in 1..=k {
        let r = art.r_val(sol.pi[i - 1]) as i64;
        let b = art.b_val(i) as i64;
        let col = choices[i - 1].column;
        let upper_row = row(2 * i + 1);
        let lower_row = row(2 * i + 2);

        // stars of the matched triple flank the wall row
        pos[art.red_center_id(sol.pi[i - 1])] = Point::new(2, upper_row);
        pos[art.green_center_id(sol.pi_prime[i - 1])] = Point::new(big_b + 3, upper_row);
        place_group(
            &mut pos,
            art.red_leaf_ids(sol.pi[i - 1]),
            (2, r + 1),
            lower_row,
            None,
        );
        place_group(
            &mut pos,
            art.green_leaf_ids(sol.pi_prime[i - 1]),
            (r + b + 4, big_b + 3),
            lower_row,
            None,
        );

        // wall i: the two lowest-id leaves drop to the lower row as z, z';
        // the rest share the upper row with v_{2i+1}
        let mut leaves = art.wall_leaf_ids(i).to_vec();
        leaves.sort_unstable();
        let (z, z_prime) = (leaves[0], leaves[1]);
        pos[z] = Point::new(r + 2, lower_row);
        pos[z_prime] = Point::new(r + b + 3, lower_row);
        let mut upper: Vec<usize> = leaves[2..].to_vec();
        upper.push(art.spinal_id(2 * i + 1));
        place_group(
            &mut pos,
            &upper,
            (3, big_b + 2),
            upper_row,
            Some((art.spinal_id(2 * i + 1), col)),
        );

        // blue block: v_{2i+2} is pinned to the next chosen column except in
        // the last group, where the ascending-id rule puts it leftmost
        let blue = art.blue_children(i);
        let pin = choices.get(i).map(|c| (art.spinal_id(2 * i + 2), c.column));
        place_group(&mut pos, &blue, (r + 3, r + b + 2), lower_row, pin);
    }

    // wall k+1 fills the bottom row; v_{2k+3} has the lowest id and lands
    // on column 2
    let mut last = art.wall_leaf_ids(k + 1).to_vec();
    last.push(art.spinal_id(2 * k + 3));
    place_group(&mut pos, &last, (2, big_b + 3), row(2 * k + 3), None);

    GridDrawing::new(w, h, pos)
}

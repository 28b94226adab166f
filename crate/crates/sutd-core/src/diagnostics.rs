//! Structural diagnostics on drawings of the reduction tree.
//!
//! The packing argument behind the reduction rests on a property of the
//! walls: in any drawing on the target grid, each wall root must place all
//! but at most two of its `B+2` children on the row directly below itself,
//! in consecutive columns, with the stragglers exactly one row further
//! down. [`wall_lemma_diagnostic`] measures that property on a concrete
//! drawing.

use serde::{Deserialize, Serialize};

use crate::drawing::GridDrawing;
use crate::error::Error;
use crate::reduction::ReductionArtifacts;
use crate::Result;

/// Placement summary for one wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCheck {
    /// wall index `j` (0 hangs off the root, `j` off `v_{2j}` otherwise)
    pub wall: usize,
    /// whether every child sits one or two rows below the wall root
    pub applicable: bool,
    /// children on the row directly below the root
    pub upper_count: usize,
    /// children two rows below
    pub lower_count: usize,
    /// whether the upper-row children occupy consecutive columns
    pub upper_columns_consecutive: bool,
    /// `applicable && lower_count <= 2 && upper_columns_consecutive`
    pub pass: bool,
}

/// Per-wall placement summary of a drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallLemmaReport {
    pub walls: Vec<WallCheck>,
    pub all_pass: bool,
}

/// Measures each wall of the reduction tree in `drawing`: how its children
/// distribute over the two rows below the wall root and whether the
/// upper-row block is contiguous.
pub fn wall_lemma_diagnostic(
    art: &ReductionArtifacts,
    drawing: &GridDrawing,
) -> Result<WallLemmaReport> {
    if drawing.n() != art.tree().n() {
        return Err(Error::InvalidInput(format!(
            "drawing has {} vertices but the reduction tree has {}",
            drawing.n(),
            art.tree().n()
        )));
    }

    let mut walls = Vec::with_capacity(art.k() + 2);
    for j in 0..=art.k() + 1 {
        let root_y = drawing.pos(art.wall_root(j)).y;
        let children = art.wall_children(j);
        let mut upper_cols = Vec::new();
        let mut lower_count = 0usize;
        let mut applicable = true;
        for &c in &children {
            let p = drawing.pos(c);
            if p.y == root_y - 1 {
                upper_cols.push(p.x);
            } else if p.y == root_y - 2 {
                lower_count += 1;
            } else {
                applicable = false;
            }
        }
        upper_cols.sort_unstable();
        let upper_columns_consecutive = upper_cols
            .windows(2)
            .all(|w| w[1] == w[0] + 1);
        let pass = applicable && lower_count <= 2 && upper_columns_consecutive;
        walls.push(WallCheck {
            wall: j,
            applicable,
            upper_count: upper_cols.len(),
            lower_count,
            upper_columns_consecutive,
            pass,
        });
    }
    let all_pass = walls.iter().all(|w| w.pass);
    Ok(WallLemmaReport { walls, all_pass })
}

//! Construction of the reduction tree for an N3DM instance.
//!
//! For an instance with `k` triples and target `B`, the tree `T` consists
//! of:
//!
//! - a spinal path `v_1 .. v_{2k+3}` rooted at `v_1`;
//! - two supporting paths `u_2 .. u_{2k+3}` and `w_2 .. w_{2k+3}` whose tops
//!   are children of `v_1`;
//! - a wall at `v_1` and at every `v_{2j}` (`j = 1..=k+1`): `B+1` extra
//!   leaves, so together with the spinal continuation each wall root has
//!   `B+2` wall children;
//! - `b_i - 1` blue leaves under each `v_{2i+1}` (with `v_{2i+2}` the
//!   remaining blue child);
//! - a red star per triple (center under `u_2`, `r_s` leaves) and a green
//!   star per triple (center under `w_2`, `g_s` leaves).
//!
//! The total vertex count is `(B+4)(2k+2) + 1 = W * (H-1) + 1` for the
//! target grid `W = B+4`, `H = 2k+3`: any strictly-upward drawing in that
//! grid must fill every row below the top completely.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::n3dm::{validate_instance, N3dmInstance};
use crate::tree::{Role, Tree};
use crate::Result;

/// Largest tree this module will materialize.
pub const MAX_TREE_VERTICES: u128 = 1 << 31;

/// The reduction tree plus grid dimensions, the originating instance, and
/// id lookup tables for every gadget.
#[derive(Debug, Clone)]
pub struct ReductionArtifacts {
    tree: Tree,
    instance: N3dmInstance,
    k: usize,
    target: usize,
    r: Vec<usize>,
    b: Vec<usize>,
    g: Vec<usize>,
    spinal: Vec<usize>,
    support_u: Vec<usize>,
    support_w: Vec<usize>,
    wall_leaves: Vec<Vec<usize>>,
    blue_leaves: Vec<Vec<usize>>,
    red_centers: Vec<usize>,
    red_leaves: Vec<Vec<usize>>,
    green_centers: Vec<usize>,
    green_leaves: Vec<Vec<usize>>,
}

fn to_usize(v: &BigUint, what: &str) -> Result<usize> {
    v.to_usize()
        .ok_or_else(|| Error::CapacityExceeded(format!("{what} = {v} does not fit in memory")))
}

/// Builds the reduction tree for `inst`. Vertex ids are assigned in a fixed
/// documented order: spinal path, supporting paths (`u` then `w`), wall
/// leaves by wall index, blue leaves by triple index, red stars by star
/// index (center first), then green stars.
pub fn build_tree(inst: &N3dmInstance) -> Result<ReductionArtifacts> {
    validate_instance(inst)?;
    let k = inst.k();
    let target = to_usize(&inst.target, "B")?;
    let r: Vec<usize> = inst.r.iter().map(|v| to_usize(v, "r")).collect::<Result<_>>()?;
    let b: Vec<usize> = inst.b.iter().map(|v| to_usize(v, "b")).collect::<Result<_>>()?;
    let g: Vec<usize> = inst.g.iter().map(|v| to_usize(v, "g")).collect::<Result<_>>()?;

    let n128 = (target as u128 + 4) * (2 * k as u128 + 2) + 1;
    if n128 > MAX_TREE_VERTICES {
        return Err(Error::CapacityExceeded(format!(
            "reduction tree would have {n128} vertices (limit {MAX_TREE_VERTICES})"
        )));
    }
    let n = n128 as usize;

    // a tree this size takes several live copies of n-element tables; fail
    // cleanly rather than aborting when the address space cannot take it
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut roles: Vec<Role> = Vec::new();
    if parent.try_reserve_exact(n).is_err() || roles.try_reserve_exact(n).is_err() {
        return Err(Error::CapacityExceeded(format!(
            "cannot allocate tables for a reduction tree of {n} vertices"
        )));
    }

    // spinal path: v_i has id i-1
    let spinal_id = |i: usize| i - 1; // i in 1..=2k+3
    for i in 1..=2 * k + 3 {
        parent.push(if i == 1 { None } else { Some(spinal_id(i - 1)) });
        roles.push(if i == 1 { Role::Root } else { Role::Spinal(i) });
    }

    // supporting paths
    let u_base = parent.len();
    let u_id = |i: usize| u_base + (i - 2); // i in 2..=2k+3
    for i in 2..=2 * k + 3 {
        parent.push(Some(if i == 2 { spinal_id(1) } else { u_id(i - 1) }));
        roles.push(Role::SupportU(i));
    }
    let w_base = parent.len();
    let w_id = |i: usize| w_base + (i - 2);
    for i in 2..=2 * k + 3 {
        parent.push(Some(if i == 2 { spinal_id(1) } else { w_id(i - 1) }));
        roles.push(Role::SupportW(i));
    }

    // wall leaves: B+1 per wall; wall 0 hangs off v_1, wall j off v_{2j}
    for j in 0..=k + 1 {
        let wall_root = if j == 0 { spinal_id(1) } else { spinal_id(2 * j) };
        for _ in 0..target + 1 {
            parent.push(Some(wall_root));
            roles.push(Role::WallChild(j));
        }
    }

    // blue leaves: b_i - 1 under v_{2i+1}
    for (idx, &bi) in b.iter().enumerate() {
        let i = idx + 1;
        for _ in 0..bi - 1 {
            parent.push(Some(spinal_id(2 * i + 1)));
            roles.push(Role::BlueChild(i));
        }
    }

    // stars
    for (s, &rs) in r.iter().enumerate() {
        let center = parent.len();
        parent.push(Some(u_id(2)));
        roles.push(Role::RedCenter(s));
        for _ in 0..rs {
            parent.push(Some(center));
            roles.push(Role::RedLeaf(s));
        }
    }
    for (s, &gs) in g.iter().enumerate() {
        let center = parent.len();
        parent.push(Some(w_id(2)));
        roles.push(Role::GreenCenter(s));
        for _ in 0..gs {
            parent.push(Some(center));
            roles.push(Role::GreenLeaf(s));
        }
    }

    debug_assert_eq!(parent.len(), n);
    let tree = Tree::new(0, parent, roles)?;
    ReductionArtifacts::from_labeled_tree(tree)
}

impl ReductionArtifacts {
    /// Reconstructs artifacts from any role-labeled tree, recovering the
    /// instance from the labels and validating the full gadget structure
    /// (path wiring, wall sizes, star sizes, the vertex-count identity).
    pub fn from_labeled_tree(tree: Tree) -> Result<Self> {
        let n = tree.n();
        let fail = |msg: String| Error::InvalidInput(format!("not a reduction tree: {msg}"));

        // pass 1: sizes
        let mut max_spinal = 0usize;
        for v in 0..n {
            if let Role::Spinal(i) = tree.role(v) {
                max_spinal = max_spinal.max(i);
            }
        }
        if max_spinal < 5 || max_spinal % 2 == 0 {
            return Err(fail(format!(
                "spinal path must end at v_{{2k+3}} with k >= 1, found max index {max_spinal}"
            )));
        }
        let k = (max_spinal - 3) / 2;

        let mut spinal = vec![usize::MAX; 2 * k + 3];
        let mut support_u = vec![usize::MAX; 2 * k + 2];
        let mut support_w = vec![usize::MAX; 2 * k + 2];
        let mut wall_leaves: Vec<Vec<usize>> = vec![Vec::new(); k + 2];
        let mut blue_leaves: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut red_centers = vec![usize::MAX; k];
        let mut red_leaves: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut green_centers = vec![usize::MAX; k];
        let mut green_leaves: Vec<Vec<usize>> = vec![Vec::new(); k];

        let place = |slot: &mut usize, v: usize, what: &str| -> Result<()> {
            if *slot != usize::MAX {
                return Err(fail(format!("duplicate {what}")));
            }
            *slot = v;
            Ok(())
        };

        for v in 0..n {
            match tree.role(v) {
                Role::Root => {
                    if v != tree.root() {
                        return Err(fail(format!("vertex {v} has Root role but is not the root")));
                    }
                    place(&mut spinal[0], v, "root")?;
                }
                Role::Spinal(i) => {
                    if !(2..=2 * k + 3).contains(&i) {
                        return Err(fail(format!("spinal index {i} out of range")));
                    }
                    place(&mut spinal[i - 1], v, &format!("v_{i}"))?;
                }
                Role::SupportU(i) => {
                    if !(2..=2 * k + 3).contains(&i) {
                        return Err(fail(format!("support index {i} out of range")));
                    }
                    place(&mut support_u[i - 2], v, &format!("u_{i}"))?;
                }
                Role::SupportW(i) => {
                    if !(2..=2 * k + 3).contains(&i) {
                        return Err(fail(format!("support index {i} out of range")));
                    }
                    place(&mut support_w[i - 2], v, &format!("w_{i}"))?;
                }
                Role::WallChild(j) => {
                    if j > k + 1 {
                        return Err(fail(format!("wall index {j} out of range")));
                    }
                    wall_leaves[j].push(v);
                }
                Role::BlueChild(i) => {
                    if !(1..=k).contains(&i) {
                        return Err(fail(format!("blue index {i} out of range")));
                    }
                    blue_leaves[i - 1].push(v);
                }
                Role::RedCenter(s) => {
                    if s >= k {
                        return Err(fail(format!("red star index {s} out of range")));
                    }
                    place(&mut red_centers[s], v, &format!("red center {s}"))?;
                }
                Role::RedLeaf(s) => {
                    if s >= k {
                        return Err(fail(format!("red star index {s} out of range")));
                    }
                    red_leaves[s].push(v);
                }
                Role::GreenCenter(s) => {
                    if s >= k {
                        return Err(fail(format!("green star index {s} out of range")));
                    }
                    place(&mut green_centers[s], v, &format!("green center {s}"))?;
                }
                Role::GreenLeaf(s) => {
                    if s >= k {
                        return Err(fail(format!("green star index {s} out of range")));
                    }
                    green_leaves[s].push(v);
                }
                Role::Plain => {
                    return Err(fail(format!("vertex {v} has no reduction role")));
                }
            }
        }

        for (what, ids) in [("spinal", &spinal), ("support u", &support_u), ("support w", &support_w)]
        {
            if let Some(i) = ids.iter().position(|&v| v == usize::MAX) {
                return Err(fail(format!("missing {what} vertex at position {i}")));
            }
        }
        for (what, ids) in [("red", &red_centers), ("green", &green_centers)] {
            if let Some(s) = ids.iter().position(|&v| v == usize::MAX) {
                return Err(fail(format!("missing {what} star center {s}")));
            }
        }

        // wall sizes determine B
        let target = wall_leaves[0].len().checked_sub(1).ok_or_else(|| {
            fail("wall 0 has no leaves".into())
        })?;
        if target == 0 {
            return Err(fail("B must be >= 1".into()));
        }
        for (j, leaves) in wall_leaves.iter().enumerate() {
            if leaves.len() != target + 1 {
                return Err(fail(format!(
                    "wall {j} has {} leaves, expected B+1 = {}",
                    leaves.len(),
                    target + 1
                )));
            }
        }

        let r: Vec<usize> = red_leaves.iter().map(|l| l.len()).collect();
        let g: Vec<usize> = green_leaves.iter().map(|l| l.len()).collect();
        let b: Vec<usize> = blue_leaves.iter().map(|l| l.len() + 1).collect();

        // parent wiring
        let check_parent = |child: usize, want: usize, what: &str| -> Result<()> {
            if tree.parent(child) != Some(want) {
                return Err(fail(format!("{what}: vertex {child} must hang off vertex {want}")));
            }
            Ok(())
        };
        for i in 2..=2 * k + 3 {
            check_parent(spinal[i - 1], spinal[i - 2], "spinal path")?;
            let up = if i == 2 { spinal[0] } else { support_u[i - 3] };
            check_parent(support_u[i - 2], up, "left support path")?;
            let wp = if i == 2 { spinal[0] } else { support_w[i - 3] };
            check_parent(support_w[i - 2], wp, "right support path")?;
        }
        for (j, leaves) in wall_leaves.iter().enumerate() {
            let root = if j == 0 { spinal[0] } else { spinal[2 * j - 1] };
            for &leaf in leaves {
                check_parent(leaf, root, "wall")?;
            }
        }
        for (idx, leaves) in blue_leaves.iter().enumerate() {
            let i = idx + 1;
            for &leaf in leaves {
                check_parent(leaf, spinal[2 * i], "blue group")?;
            }
        }
        for s in 0..k {
            check_parent(red_centers[s], support_u[0], "red star")?;
            for &leaf in &red_leaves[s] {
                check_parent(leaf, red_centers[s], "red star")?;
            }
            check_parent(green_centers[s], support_w[0], "green star")?;
            for &leaf in &green_leaves[s] {
                check_parent(leaf, green_centers[s], "green star")?;
            }
        }

        let instance = N3dmInstance::from_u64(
            &r.iter().map(|&v| v as u64).collect::<Vec<_>>(),
            &b.iter().map(|&v| v as u64).collect::<Vec<_>>(),
            &g.iter().map(|&v| v as u64).collect::<Vec<_>>(),
            target as u64,
        )
        .map_err(|e| fail(format!("recovered values are not a valid instance: {e}")))?;

        let art = ReductionArtifacts {
            tree,
            instance,
            k,
            target,
            r,
            b,
            g,
            spinal,
            support_u,
            support_w,
            wall_leaves,
            blue_leaves,
            red_centers,
            red_leaves,
            green_centers,
            green_leaves,
        };
        if !count_identity(&art) {
            return Err(fail(format!(
                "vertex count {} != (B+4)(2k+2)+1 = {}",
                art.tree.n(),
                (art.target + 4) * (2 * art.k + 2) + 1
            )));
        }
        Ok(art)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn instance(&self) -> &N3dmInstance {
        &self.instance
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The target `B` as a machine integer.
    pub fn target(&self) -> usize {
        self.target
    }

    /// Grid width `B + 4`.
    pub fn width(&self) -> i64 {
        (self.target + 4) as i64
    }

    /// Grid height `2k + 3`.
    pub fn height(&self) -> i64 {
        (2 * self.k + 3) as i64
    }

    pub fn r_val(&self, s: usize) -> usize {
        self.r[s]
    }

    pub fn b_val(&self, i: usize) -> usize {
        self.b[i - 1]
    }

    pub fn g_val(&self, s: usize) -> usize {
        self.g[s]
    }

    /// Id of `v_i`, `i` in `1..=2k+3`.
    pub fn spinal_id(&self, i: usize) -> usize {
        self.spinal[i - 1]
    }

    /// Id of `u_i`, `i` in `2..=2k+3`.
    pub fn support_u_id(&self, i: usize) -> usize {
        self.support_u[i - 2]
    }

    /// Id of `w_i`, `i` in `2..=2k+3`.
    pub fn support_w_id(&self, i: usize) -> usize {
        self.support_w[i - 2]
    }

    /// The added leaves of wall `j` (excludes the spinal continuation).
    pub fn wall_leaf_ids(&self, j: usize) -> &[usize] {
        &self.wall_leaves[j]
    }

    /// All wall children of wall `j`'s root: the `B+1` leaves plus the
    /// spinal continuation (`v_2` for wall 0, `v_{2j+1}` for wall `j`).
    pub fn wall_children(&self, j: usize) -> Vec<usize> {
        let mut out = self.wall_leaves[j].clone();
        out.push(self.wall_continuation(j));
        out.sort_unstable();
        out
    }

    /// The spinal vertex among wall `j`'s children.
    pub fn wall_continuation(&self, j: usize) -> usize {
        if j == 0 {
            self.spinal_id(2)
        } else {
            self.spinal_id(2 * j + 1)
        }
    }

    /// The wall root vertex of wall `j` (`v_1` for wall 0, else `v_{2j}`).
    pub fn wall_root(&self, j: usize) -> usize {
        if j == 0 {
            self.spinal_id(1)
        } else {
            self.spinal_id(2 * j)
        }
    }

    /// The blue leaves under `v_{2i+1}` (excludes `v_{2i+2}`).
    pub fn blue_leaf_ids(&self, i: usize) -> &[usize] {
        &self.blue_leaves[i - 1]
    }

    /// All `b_i` blue children of `v_{2i+1}`: leaves plus `v_{2i+2}`.
    pub fn blue_children(&self, i: usize) -> Vec<usize> {
        let mut out = self.blue_leaves[i - 1].clone();
        out.push(self.spinal_id(2 * i + 2));
        out.sort_unstable();
        out
    }

    pub fn red_center_id(&self, s: usize) -> usize {
        self.red_centers[s]
    }

    pub fn red_leaf_ids(&self, s: usize) -> &[usize] {
        &self.red_leaves[s]
    }

    pub fn green_center_id(&self, s: usize) -> usize {
        self.green_centers[s]
    }

    pub fn green_leaf_ids(&self, s: usize) -> &[usize] {
        &self.green_leaves[s]
    }
}

/// The vertex-count identity `n = (B+4)(2k+2) + 1 = W(H-1) + 1`: the tree
/// exactly fills every row of the target grid except the top one.
pub fn count_identity(art: &ReductionArtifacts) -> bool {
    let expected = (art.target() + 4) * (2 * art.k() + 2) + 1;
    let w = art.width() as usize;
    let h = art.height() as usize;
    art.tree().n() == expected && expected == w * (h - 1) + 1
}

//! Rooted unordered trees with role labels.
//!
//! Roles record which gadget of the reduction a vertex belongs to. Trees
//! outside the reduction use [`Role::Plain`]. Indices inside roles follow
//! the construction's numbering: spinal/support vertices carry their 1-based
//! path position (`v_i`, `u_i`, `w_i`), walls are numbered `0..=k+1` (wall 0
//! hangs off the root), blue groups carry the 1-based triple index of their
//! parent `v_{2i+1}`, and star roles carry the 0-based index into the
//! instance's `r`/`g` arrays.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Root,
    /// `v_i` for `i >= 2` (`v_1` is `Root`).
    Spinal(usize),
    /// `u_i`, left supporting path.
    SupportU(usize),
    /// `w_i`, right supporting path.
    SupportW(usize),
    /// Leaf child of wall `j` (wall 0 is the root's wall, wall `j >= 1`
    /// hangs off `v_{2j}`).
    WallChild(usize),
    /// Leaf child of blue parent `v_{2i+1}`, `i` in `1..=k`.
    BlueChild(usize),
    /// Center of red star `s` (value `r[s]`), child of `u_2`.
    RedCenter(usize),
    /// Leaf of red star `s`.
    RedLeaf(usize),
    /// Center of green star `s` (value `g[s]`), child of `w_2`.
    GreenCenter(usize),
    /// Leaf of green star `s`.
    GreenLeaf(usize),
    /// A vertex of a tree that does not come from the reduction.
    Plain,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Root => write!(f, "Root"),
            Role::Plain => write!(f, "Plain"),
            Role::Spinal(i) => write!(f, "Spinal:{i}"),
            Role::SupportU(i) => write!(f, "SupportU:{i}"),
            Role::SupportW(i) => write!(f, "SupportW:{i}"),
            Role::WallChild(j) => write!(f, "WallChild:{j}"),
            Role::BlueChild(i) => write!(f, "BlueChild:{i}"),
            Role::RedCenter(s) => write!(f, "RedCenter:{s}"),
            Role::RedLeaf(s) => write!(f, "RedLeaf:{s}"),
            Role::GreenCenter(s) => write!(f, "GreenCenter:{s}"),
            Role::GreenLeaf(s) => write!(f, "GreenLeaf:{s}"),
        }
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Root" => return Ok(Role::Root),
            "Plain" => return Ok(Role::Plain),
            _ => {}
        }
        let (name, idx) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("unknown role `{s}`")))?;
        let i: usize = idx
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad role index in `{s}`")))?;
        Ok(match name {
            "Spinal" => Role::Spinal(i),
            "SupportU" => Role::SupportU(i),
            "SupportW" => Role::SupportW(i),
            "WallChild" => Role::WallChild(i),
            "BlueChild" => Role::BlueChild(i),
            "RedCenter" => Role::RedCenter(i),
            "RedLeaf" => Role::RedLeaf(i),
            "GreenCenter" => Role::GreenCenter(i),
            "GreenLeaf" => Role::GreenLeaf(i),
            _ => return Err(Error::InvalidInput(format!("unknown role `{s}`"))),
        })
    }
}

/// A rooted tree over vertex ids `0..n`. `parent[root]` is `None`; every
/// other vertex has exactly one parent, and all vertices reach the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    root: usize,
    parent: Vec<Option<usize>>,
    roles: Vec<Role>,
}

impl Tree {
    /// Builds and validates a tree. Checks: exactly one root (at `root`),
    /// parent indices in range, no cycles, everything connected to the root.
    pub fn new(root: usize, parent: Vec<Option<usize>>, roles: Vec<Role>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidInput("tree must have at least one vertex".into()));
        }
        if roles.len() != n {
            return Err(Error::InvalidInput(format!(
                "roles length {} != vertex count {n}",
                roles.len()
            )));
        }
        if root >= n {
            return Err(Error::InvalidInput(format!("root {root} out of range 0..{n}")));
        }
        for (v, p) in parent.iter().enumerate() {
            match p {
                None if v != root => {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} has no parent but is not the root"
                    )))
                }
                Some(p) if *p >= n => {
                    return Err(Error::InvalidInput(format!(
                        "parent of {v} is {p}, out of range 0..{n}"
                    )))
                }
                Some(p) if v == root => {
                    return Err(Error::InvalidInput(format!(
                        "root {root} must not have a parent (has {p})"
                    )))
                }
                _ => {}
            }
        }
        let tree = Tree { root, parent, roles };
        // depth computation doubles as cycle/connectivity detection
        tree.depths()?;
        Ok(tree)
    }

    /// Builds a tree of [`Role::Plain`] vertices from a parent array.
    pub fn plain(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let roles = vec![Role::Plain; parent.len()];
        Tree::new(root, parent, roles)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    /// Children lists indexed by vertex, each sorted by id.
    pub fn children_lists(&self) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); self.n()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                lists[*p].push(v);
            }
        }
        lists
    }

    /// Depth of each vertex (root = 0). Errors on cycles or vertices that
    /// never reach the root.
    fn depths(&self) -> Result<Vec<usize>> {
        let n = self.n();
        let mut depth = vec![usize::MAX; n];
        depth[self.root] = 0;
        for start in 0..n {
            if depth[start] != usize::MAX {
                continue;
            }
            // walk up until a known depth, then unwind
            let mut path = vec![start];
            let mut v = start;
            loop {
                let p = self.parent[v].ok_or_else(|| {
                    Error::InvalidInput(format!("vertex {start} does not reach the root"))
                })?;
                if path.len() > n {
                    return Err(Error::InvalidInput("parent pointers contain a cycle".into()));
                }
                if depth[p] != usize::MAX {
                    break;
                }
                path.push(p);
                v = p;
            }
            let mut d = depth[self.parent[v].unwrap()];
            for &u in path.iter().rev() {
                d += 1;
                depth[u] = d;
            }
        }
        Ok(depth)
    }
}

/// Number of vertices on the longest root-to-leaf path (a single vertex has
/// height 1).
pub fn tree_height(tree: &Tree) -> usize {
    let depth = tree.depths().expect("validated tree");
    depth.into_iter().max().unwrap_or(0) + 1
}

/// Canonical string encoding of the rooted tree up to unordered isomorphism:
/// a leaf is `()`, an inner vertex concatenates its children's encodings in
/// sorted order inside a pair of parentheses. Two trees are isomorphic as
/// rooted unordered trees iff their signatures are equal. Roles are ignored.
pub fn canonical_signature(tree: &Tree) -> String {
    let children = tree.children_lists();
    let mut sig = subtree_signatures(tree, &children);
    std::mem::take(&mut sig[tree.root()])
}

/// Per-vertex subtree signatures (same encoding as [`canonical_signature`]).
pub(crate) fn subtree_signatures(tree: &Tree, children: &[Vec<usize>]) -> Vec<String> {
    // post-order so children are encoded before their parent
    let order = post_order(tree, children);
    let mut sig: Vec<String> = vec![String::new(); tree.n()];
    for v in order {
        let mut parts: Vec<&str> = children[v].iter().map(|&c| sig[c].as_str()).collect();
        parts.sort_unstable();
        let mut s = String::with_capacity(2 + parts.iter().map(|p| p.len()).sum::<usize>());
        s.push('(');
        for p in parts {
            s.push_str(p);
        }
        s.push(')');
        sig[v] = s;
    }
    sig
}

fn post_order(tree: &Tree, children: &[Vec<usize>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(tree.n());
    let mut stack = vec![(tree.root(), false)];
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            order.push(v);
        } else {
            stack.push((v, true));
            for &c in children[v].iter().rev() {
                stack.push((c, false));
            }
        }
    }
    order
}

/// All rooted unordered trees with exactly `n` vertices, one representative
/// per isomorphism class, as [`Role::Plain`] trees with vertices numbered in
/// depth-first order. Counts by `n`: 1, 1, 2, 4, 9, 20, 48, ...
pub fn enumerate_rooted_trees(n: usize) -> Vec<Tree> {
    // A rooted tree is a root plus a multiset of rooted subtrees. Build
    // lists per size; multisets are chosen as non-increasing index
    // sequences over trees sorted (size, index), which yields each class
    // exactly once.
    #[derive(Clone)]
    struct Shape {
        // parent pointers with vertex 0 as root, children appended DFS
        parent: Vec<Option<usize>>,
    }

    fn attach(base: &mut Vec<Option<usize>>, sub: &Shape, at: usize) {
        let offset = base.len();
        base.push(Some(at));
        for p in &sub.parent[1..] {
            base.push(Some(p.unwrap() + offset));
        }
    }

    let mut by_size: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape { parent: vec![None] }]];
    for size in 2..=n {
        let mut shapes = Vec::new();
        // choose child subtrees: multiset over all shapes of sizes < size,
        // totalling size - 1, as non-increasing (size, index) sequences
        fn rec(
            by_size: &[Vec<Shape>],
            remaining: usize,
            max_size: usize,
            max_index: usize,
            chosen: &mut Vec<(usize, usize)>,
            out: &mut Vec<Shape>,
        ) {
            if remaining == 0 {
                let mut parent = vec![None];
                for &(s, i) in chosen.iter() {
                    let sub = by_size[s][i].clone();
                    attach(&mut parent, &sub, 0);
                }
                out.push(Shape { parent });
                return;
            }
            let mut s = max_size.min(remaining);
            loop {
                let start = if s == max_size { max_index } else { by_size[s].len() };
                for i in (0..start).rev() {
                    chosen.push((s, i));
                    rec(by_size, remaining - s, s, i + 1, chosen, out);
                    chosen.pop();
                }
                if s == 1 {
                    break;
                }
                s -= 1;
            }
        }
        let max = size - 1;
        rec(
            &by_size,
            size - 1,
            max,
            by_size.get(max).map_or(0, |v| v.len()),
            &mut Vec::new(),
            &mut shapes,
        );
        by_size.push(shapes);
    }

    by_size
        .get(n)
        .map(|shapes| {
            shapes
                .iter()
                .map(|s| Tree::plain(0, s.parent.clone()).expect("generated shape is a tree"))
                .collect()
        })
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn path(n: usize) -> Tree {
        let parent = (0..n).map(|v| if v == 0 { None } else { Some(v - 1) }).collect();
        Tree::plain(0, parent).unwrap()
    }

    fn star(leaves: usize) -> Tree {
        let mut parent = vec![None];
        parent.extend(std::iter::repeat(Some(0)).take(leaves));
        Tree::plain(0, parent).unwrap()
    }

    #[test]
    fn tree_validation_rejects_cycles_and_orphans() {
        assert!(Tree::plain(0, vec![None, Some(2), Some(1)]).is_err());
        assert!(Tree::plain(0, vec![None, Some(1)]).is_err());
        assert!(Tree::plain(0, vec![Some(1), Some(0)]).is_err());
        assert!(Tree::plain(3, vec![None, Some(0)]).is_err());
    }

    #[test]
    fn heights() {
        assert_eq!(tree_height(&path(1)), 1);
        assert_eq!(tree_height(&path(4)), 4);
        assert_eq!(tree_height(&star(5)), 2);
    }

    #[test]
    fn signature_basics() {
        assert_eq!(canonical_signature(&path(1)), "()");
        assert_eq!(canonical_signature(&path(3)), "((()))");
        assert_eq!(canonical_signature(&star(2)), "(()())");
        assert_ne!(canonical_signature(&path(3)), canonical_signature(&star(2)));
    }

    #[test]
    fn signature_ignores_child_order() {
        // root with children: a path of 2 and a leaf, in both insert orders
        let t1 = Tree::plain(0, vec![None, Some(0), Some(1), Some(0)]).unwrap();
        let t2 = Tree::plain(0, vec![None, Some(0), Some(0), Some(2)]).unwrap();
        assert_eq!(canonical_signature(&t1), canonical_signature(&t2));
    }

    #[test]
    fn role_strings_round_trip() {
        let roles = [
            Role::Root,
            Role::Plain,
            Role::Spinal(3),
            Role::SupportU(2),
            Role::SupportW(11),
            Role::WallChild(0),
            Role::BlueChild(1),
            Role::RedCenter(0),
            Role::RedLeaf(7),
            Role::GreenCenter(2),
            Role::GreenLeaf(9),
        ];
        for role in roles {
            assert_eq!(role.to_string().parse::<Role>().unwrap(), role);
        }
        assert!("Spinal".parse::<Role>().is_err());
        assert!("Mauve:3".parse::<Role>().is_err());
    }

    #[test]
    fn enumeration_counts_match_oeis() {
        let expected = [1usize, 1, 2, 4, 9, 20, 48];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let trees = enumerate_rooted_trees(n);
            assert_eq!(trees.len(), want, "count for n = {n}");
            let sigs: HashSet<String> = trees.iter().map(canonical_signature).collect();
            assert_eq!(sigs.len(), want, "signatures distinct for n = {n}");
            assert!(trees.iter().all(|t| t.n() == n));
        }
    }
}

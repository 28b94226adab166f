//! Shared input builders for the benches.

use sutd_core::{
    build_tree, generate_yes_instance, strengthen, synthesize_drawing, GridDrawing, Tree,
};

/// The hand-sized single-triple instance: 53 vertices on a 13 x 5 grid.
pub fn toy_drawing() -> (Tree, GridDrawing) {
    let inst = sutd_core::N3dmInstance::from_u64(&[3], &[3], &[3], 9).unwrap();
    let art = build_tree(&inst).unwrap();
    let sol = sutd_core::N3dmSolution {
        pi: vec![0],
        pi_prime: vec![0],
    };
    let d = synthesize_drawing(&art, &sol).unwrap();
    (art.tree().clone(), d)
}

/// A synthesized drawing for a generated instance, unstrengthened.
pub fn generated_drawing(k: usize, bound: u64) -> (Tree, GridDrawing) {
    let (inst, sol) = generate_yes_instance(k, 7, bound).unwrap();
    let art = build_tree(&inst).unwrap();
    let d = synthesize_drawing(&art, &sol).unwrap();
    (art.tree().clone(), d)
}

/// A synthesized drawing for a strengthened generated instance. These grow
/// fast: k = 2 with bound 3 is ~25k vertices, k = 3 is ~53k.
pub fn strengthened_drawing(k: usize, bound: u64) -> (Tree, GridDrawing) {
    let (inst, sol) = generate_yes_instance(k, 7, bound).unwrap();
    let rec = strengthen(&inst).unwrap();
    let art = build_tree(&rec.strengthened).unwrap();
    let d = synthesize_drawing(&art, &sol).unwrap();
    (art.tree().clone(), d)
}

pub fn star(leaves: usize) -> Tree {
    let mut parent = vec![None];
    parent.extend(std::iter::repeat_n(Some(0), leaves));
    Tree::plain(0, parent).unwrap()
}

pub fn path(n: usize) -> Tree {
    let parent = (0..n).map(|v| v.checked_sub(1)).collect();
    Tree::plain(0, parent).unwrap()
}

/// Complete binary tree with `levels` levels (`2^levels - 1` vertices).
pub fn binary(levels: u32) -> Tree {
    let n = (1usize << levels) - 1;
    let parent = (0..n)
        .map(|v| if v == 0 { None } else { Some((v - 1) / 2) })
        .collect();
    Tree::plain(0, parent).unwrap()
}

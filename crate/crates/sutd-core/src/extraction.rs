//! Recovery of a matching from a drawing of the reduction tree.
//!
//! In any drawing that fills the `(B+4) x (2k+3)` grid, the row `y = H - 2i`
//! carries exactly one red star center and one green star center: the stars
//! drawn there are the ones matched with triple `i`. Reading those center
//! labels off rows `i = 1..=k` reproduces the assignment `(pi, pi_prime)`,
//! and summing `r_{pi(i)} + b_i + g_{pi_prime(i)}` against the target checks
//! it.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::drawing::GridDrawing;
use crate::error::Error;
use crate::n3dm::{check_solution, N3dmSolution};
use crate::reduction::ReductionArtifacts;
use crate::tree::Role;
use crate::Result;

/// One recovered triple and its sum against the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCheck {
    /// 1-based triple index `i`
    pub index: usize,
    #[serde(with = "crate::json::biguint_num")]
    pub red: BigUint,
    #[serde(with = "crate::json::biguint_num")]
    pub blue: BigUint,
    #[serde(with = "crate::json::biguint_num")]
    pub green: BigUint,
    #[serde(with = "crate::json::biguint_num")]
    pub sum: BigUint,
    pub matches_target: bool,
}

/// A matching read out of a drawing, with per-triple sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionReport {
    pub solution: N3dmSolution,
    pub triples: Vec<TripleCheck>,
    /// true when every triple sums to the target
    pub all_match: bool,
}

/// Reads the matching out of `drawing` by locating the red and green star
/// centers on each row `y = H - 2i`. Fails with
/// [`Error::StructureMismatch`] if some such row does not carry exactly one
/// center of each color.
pub fn extract_matching(
    art: &ReductionArtifacts,
    drawing: &GridDrawing,
) -> Result<ExtractionReport> {
    let tree = art.tree();
    if drawing.n() != tree.n() {
        return Err(Error::InvalidInput(format!(
            "drawing has {} vertices but the reduction tree has {}",
            drawing.n(),
            tree.n()
        )));
    }
    if drawing.w() != art.width() || drawing.h() != art.height() {
        return Err(Error::InvalidInput(format!(
            "drawing grid {} x {} does not match the reduction grid {} x {}",
            drawing.w(),
            drawing.h(),
            art.width(),
            art.height()
        )));
    }

    let k = art.k();
    let h = art.height();
    let mut red_at_row: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut green_at_row: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..tree.n() {
        let (slot, s) = match tree.role(v) {
            Role::RedCenter(s) => (&mut red_at_row, s),
            Role::GreenCenter(s) => (&mut green_at_row, s),
            _ => continue,
        };
        let y = drawing.pos(v).y;
        // y = H - 2i for triple i
        if (h - y) % 2 == 0 {
            let i = ((h - y) / 2) as usize;
            if (1..=k).contains(&i) {
                slot[i - 1].push(s);
            }
        }
    }

    let mut pi = Vec::with_capacity(k);
    let mut pi_prime = Vec::with_capacity(k);
    for i in 1..=k {
        for (what, found) in [("red", &red_at_row[i - 1]), ("green", &green_at_row[i - 1])] {
            if found.len() != 1 {
                return Err(Error::StructureMismatch {
                    index: i,
                    reason: format!(
                        "expected exactly one {what} star center on row y = {}, found {}",
                        h - 2 * i as i64,
                        found.len()
                    ),
                });
            }
        }
        pi.push(red_at_row[i - 1][0]);
        pi_prime.push(green_at_row[i - 1][0]);
    }

    let solution = N3dmSolution { pi, pi_prime };
    let inst = art.instance();
    let triples: Vec<TripleCheck> = (1..=k)
        .map(|i| {
            let red = inst.r[solution.pi[i - 1]].clone();
            let blue = inst.b[i - 1].clone();
            let green = inst.g[solution.pi_prime[i - 1]].clone();
            let sum = &red + &blue + &green;
            let matches_target = sum == inst.target;
            TripleCheck {
                index: i,
                red,
                blue,
                green,
                sum,
                matches_target,
            }
        })
        .collect();
    let all_match = triples.iter().all(|t| t.matches_target)
        && check_solution(inst, &solution).unwrap_or(false);

    Ok(ExtractionReport {
        solution,
        triples,
        all_match,
    })
}

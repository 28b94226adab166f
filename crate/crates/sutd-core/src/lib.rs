//! Numerical 3-dimensional matching (N3DM), its reduction to
//! strictly-upward grid drawing of trees, and the tooling around both:
//! instance generation and strengthening, tree construction, drawing
//! synthesis and verification, solution extraction, and an exact
//! small-scale drawing solver.
//!
//! The reduction maps an N3DM instance with `k` triples and target `B` to
//! a tree of `(B+4)(2k+2) + 1` vertices that fits a `(B+4) x (2k+3)` grid
//! exactly when the instance has a perfect matching. `reduction` builds
//! the tree, `synthesis` turns a matching into a drawing, `drawing`
//! verifies drawings, and `extraction` reads a matching back out of one.

pub mod diagnostics;
pub mod drawing;
pub mod error;
pub mod extraction;
pub mod geom;
pub mod json;
pub mod n3dm;
pub mod reduction;
pub mod render;
pub mod solver;
pub mod synthesis;
pub mod tree;

pub use drawing::{
    full_grid_diagnostic, verify_drawing, verify_drawing_naive, EdgeMode, GridDrawing,
    VerificationReport, Violation,
};
pub use error::Error;
pub use extraction::{extract_matching, ExtractionReport};
pub use geom::{segments_properly_interact, InteractionKind, Point};
pub use n3dm::{
    brute_force_solve, brute_force_solve_with_limit, check_solution, generate_yes_instance,
    strengthen, validate_instance, N3dmInstance, N3dmSolution, StrengthenRecord,
    BRUTE_FORCE_K_LIMIT,
};
pub use reduction::{build_tree, count_identity, ReductionArtifacts};
pub use render::{render_svg, SvgStyle};
pub use solver::{enumerate_count, min_area, solve_exact, SolverOptions};
pub use synthesis::{choose_spinal_descent, synthesize_drawing, DescentChoice};
pub use tree::{canonical_signature, tree_height, Role, Tree};

pub type Result<T> = std::result::Result<T, Error>;

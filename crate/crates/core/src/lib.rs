//! Deterministic Exact Matching for red/blue edge-colored bipartite graphs.
//!
//! Given a colored bipartite graph `G` and a target `t`, decide whether `G`
//! has a perfect matching with exactly `t` red edges. The decision runs
//! through a tight-cut decomposition into braces, an exact nonvanishing test
//! of the `x^t` coefficient of a Vandermonde-weighted determinant on each
//! brace, and a composition step over the decomposition tree.
//!
//! ```
//! use exactmatch::graph::{gen_family, Coloring, Family, FamilySpec};
//! use exactmatch::solver::{solve, SolveOptions};
//!
//! let spec = FamilySpec::colored(Family::Knn { n: 4 }, Coloring::Diagonal);
//! let g = gen_family(&spec, 0).unwrap();
//! assert!(solve(&g, 2, &SolveOptions::default()).unwrap().is_yes());
//! assert!(!solve(&g, 3, &SolveOptions::default()).unwrap().is_yes());
//! ```

pub mod algebra;
pub mod cli;
pub mod decomposition;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod solver;
pub mod verify;

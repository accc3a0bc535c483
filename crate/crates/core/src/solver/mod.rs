//! The decision engine: grid evaluation of `D_G(x, λ)`, exact-`t`
//! coefficient extraction, per-brace feasible-target tables, composition
//! over tight cuts, and witness extraction.

mod bench;
mod engine;
mod grid;
mod matrix;

pub use bench::{bench, random_brace, BenchRow};
pub use engine::{
    achievable_targets, block_graph, extract_witness, solve, BlockMethod, BlockReport, Decision, SolveOptions,
    SolveReport, Timings, ORACLE_CROSSCHECK_LIMIT, REPORT_SCHEMA,
};
pub use grid::{
    lambda_bound, nonvanishing_targets, pt_nonvanishing, pt_polynomial, pt_polynomials, red_count_range,
    x_coefficients_at, EvaluationGrid,
};
pub use matrix::build_matrix_at;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::graph::GraphError;
use crate::matching::MatchingError;
use crate::oracle::OracleError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no perfect matching with the requested red count")]
    NoSolution,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(&'static str),
}

//! Orthogonal circle patterns from a convex variational principle.

pub mod dilog;
pub mod functional;
pub mod io;
pub mod layout;
pub mod problem;
pub mod solver;

pub use dilog::im_li2_i_exp;
pub use functional::{closure_residual, functional_s, gradient_s, hessian_s};
pub use layout::{layout, layout_with_tolerance, PatternLayout};
pub use problem::{square_grid, NodeData, PatternNode, PatternProblem};
pub use solver::{solve, PatternSolution, SolverOptions};

use crate::mesh::MeshError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PatternError {
    #[error("invalid pattern problem: {0}")]
    InvalidProblem(String),
    #[error("adjacency graph is disconnected")]
    Disconnected,
    #[error("no solution: {0}")]
    Unsolvable(String),
    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("layout mismatch: positions disagree by {0:.3e} (relative)")]
    LayoutMismatch(f64),
    #[error(transparent)]
    Format(#[from] MeshError),
}

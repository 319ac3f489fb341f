//! Discrete Willmore energy, angle defect, bending energy and the
//! smooth-limit harness on model hexagons.

pub mod bending;
pub mod curvature;
pub mod report;
pub mod smooth;
pub mod willmore;

pub use bending::{beta_of_theta, bending_energy, bending_energy_with, BendingCenter};
pub use curvature::angle_defect;
pub use report::EnergyReport;
pub use smooth::{model_hexagon, quotient_q, LatticeAngles, ModelHexagon};
pub use willmore::{edge_beta, pyramid_angle_sums, steinitz_bound, willmore_local, willmore_total};

use crate::geom::GeomError;
use crate::mesh::MeshError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("degenerate face {0}")]
    DegenerateFace(usize),
    #[error("closed surface required: {0}")]
    NotClosed(String),
    #[error("coincident circumcenters at edges {0:?}")]
    SingularEdges(Vec<(usize, usize)>),
    #[error("coloring violates the hypothesis: {0}")]
    InvalidColoring(String),
    #[error("angles outside the lattice moduli space: {0}")]
    OutsideModuli(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

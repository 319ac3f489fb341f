//! From circle patterns to surfaces: lifting planar patterns to the sphere,
//! Koebe polyhedra, S-isothermic surfaces, dualization and the discrete
//! minimal surface builders.

mod dual;
mod enneper;
mod export;
mod isothermic;
mod koebe;
mod lift;
mod minimal;
mod schwarzp;
mod sisothermic;

use thiserror::Error;

use crate::geom::GeomError;
use crate::mesh::MeshError;
use crate::pattern::PatternError;

pub use dual::{dualize, dualize_with_tolerance, DualSurface};
pub use enneper::{build_enneper, EnneperSurface};
pub use export::{kites_to_obj, proxies_to_obj};
pub use isothermic::{
    central_sphere_check, circularity_defect, is_discrete_isothermic, kite_defects, CentralSphere, KiteDefects,
};
pub use koebe::{koebe_polyhedron, pattern_from_tangent_polyhedron, KoebePolyhedron};
pub use lift::{lift_pattern_to_sphere, spherical_orthogonality_defect, SpherePattern};
pub use minimal::{gauss_map_defect, is_discrete_minimal, MinimalityReport};
pub use schwarzp::{build_schwarz_p, build_schwarz_p_with, quarter_problem, Lattice, QuarterProblem, SchwarzPSurface};
pub use sisothermic::{SIsothermicReport, SIsothermicSurface};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no orthogonal sphere for circle at vertex {0}: cap is a hemisphere or larger")]
    NoOrthogonalSphere(usize),
    #[error("circle {0} passes too close to the projection pole; translate or rescale the layout")]
    NearPole(usize),
    #[error("zero-length edge {0}-{1}")]
    ZeroEdge(usize, usize),
    #[error("dual does not close: defect {0:.3e}")]
    NotClosing(f64),
    #[error("non-circular face {face} (defect {defect:.3e})")]
    NonCircular { face: usize, defect: f64 },
    #[error("pipeline check failed: {0}")]
    Pipeline(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

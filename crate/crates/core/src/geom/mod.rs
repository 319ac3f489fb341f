//! Quaternionic and circle/sphere geometry primitives.

pub mod circle;
pub mod fit;
pub mod miquel;
pub mod mobius;
pub mod quaternion;
pub mod stereo;
pub mod sum;
pub mod vec3;

pub use circle::{circumcircle, external_angle, sphere_invert, Circle3, Sphere3};
pub use miquel::{miquel_point, MiquelCube, MiquelPoint};
pub use mobius::{MobiusAtom, MobiusMap};
pub use quaternion::{cross_ratio, quat_mul, Quaternion};
pub use stereo::SphericalCircle;
pub use vec3::{Point2, Point3};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("point at the pole of the map")]
    Pole,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent configuration: {0}")]
    Inconsistent(String),
    #[error("underdetermined: {0}")]
    Underdetermined(&'static str),
}

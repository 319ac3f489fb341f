//! Discrete surface geometry built from circles and spheres.
//!
//! * [`geom`]: quaternions, cross-ratios, circumcircles, Möbius maps,
//!   stereographic projection, Miquel configurations.
//! * [`mesh`]: simplicial surfaces, quad-graphs, refinement, example
//!   generators and the text interchange format.
//! * [`energy`]: discrete Willmore energy, angle defect, bending energy and the
//!   smooth-limit harness.
//! * [`pattern`]: orthogonal circle patterns from a convex variational
//!   principle (functional, Newton solver, planar layout).
//! * [`surfaces`]: Koebe polyhedra, S-isothermic surfaces, dualization and the
//!   discrete Enneper and Schwarz-P builders.

pub mod energy;
pub mod geom;
pub mod mesh;
pub mod pattern;
pub mod surfaces;

//! Miquel's theorem for a combinatorial cube: if the three faces at one
//! vertex are circular, the three circles through the remaining face triples
//! meet in a common eighth point.

use super::circle::{circumcircle, line_line_closest, sphere_invert, Sphere3};
use super::quaternion::cross_ratio;
use super::vec3::Point3;
use super::GeomError;

/// Seven vertices of a combinatorial cube. `v0` is the vertex shared by the
/// three given circular faces `(v0 v1 v12 v2)`, `(v0 v1 v13 v3)` and
/// `(v0 v2 v23 v3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiquelCube {
    pub v0: Point3,
    pub v1: Point3,
    pub v2: Point3,
    pub v3: Point3,
    pub v12: Point3,
    pub v13: Point3,
    pub v23: Point3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiquelPoint {
    pub point: Point3,
    /// Largest distance from `point` to any of the three completing circles.
    pub residual: f64,
}

impl MiquelCube {
    pub fn points(&self) -> [Point3; 7] {
        [self.v0, self.v1, self.v2, self.v3, self.v12, self.v13, self.v23]
    }

    fn scale(&self) -> f64 {
        let pts = self.points();
        let mut d: f64 = 0.0;
        for i in 0..7 {
            for j in i + 1..7 {
                d = d.max(pts[i].distance(pts[j]));
            }
        }
        d
    }

    /// The three completing circles as point triples.
    pub fn completing_triples(&self) -> [[Point3; 3]; 3] {
        [
            [self.v1, self.v12, self.v13],
            [self.v2, self.v12, self.v23],
            [self.v3, self.v13, self.v23],
        ]
    }
}

fn circularity_defect(a: Point3, b: Point3, c: Point3, d: Point3) -> Result<f64, GeomError> {
    let q = cross_ratio(a, b, c, d)?;
    Ok(q.im().norm() / q.norm())
}

/// The second intersection point of two circles through a common point
/// `shared`; the circles are `(shared, a1, a2)` and `(shared, b1, b2)`.
///
/// Inversion centred at `shared` straightens both circles; their image lines
/// are intersected and the result mapped back. The returned residual is the
/// distance (after mapping back) between the two nearest points of the lines.
pub fn second_circle_intersection(
    shared: Point3,
    a1: Point3,
    a2: Point3,
    b1: Point3,
    b2: Point3,
) -> Result<(Point3, f64), GeomError> {
    let r = [a1, a2, b1, b2]
        .iter()
        .map(|p| p.distance(shared))
        .fold(0.0, f64::max);
    let inv = Sphere3::new(shared, r)?;
    let la = (sphere_invert(&inv, a1)?, sphere_invert(&inv, a2)?);
    let lb = (sphere_invert(&inv, b1)?, sphere_invert(&inv, b2)?);
    let (x, gap) = line_line_closest(la.0, la.1, lb.0, lb.1)
        .map_err(|_| GeomError::Inconsistent("circles are tangent at the shared point".into()))?;
    let p = sphere_invert(&inv, x)?;
    // a gap of g at distance |x - shared| maps to roughly g r² / |x - shared|²
    let back = gap * r * r / (x - shared).norm_squared();
    Ok((p, back))
}

/// Computes the Miquel point of a cube with three circular faces at `v0`.
pub fn miquel_point(cube: &MiquelCube) -> Result<MiquelPoint, GeomError> {
    miquel_point_with_tolerance(cube, 1e-8)
}

/// As [`miquel_point`], with an explicit tolerance. Both the circularity test
/// (on `|Im q| / |q|`) and the concurrency test (relative to the size of the
/// configuration) use it.
pub fn miquel_point_with_tolerance(cube: &MiquelCube, tol: f64) -> Result<MiquelPoint, GeomError> {
    let c = cube;
    let faces = [
        (c.v0, c.v1, c.v12, c.v2),
        (c.v0, c.v1, c.v13, c.v3),
        (c.v0, c.v2, c.v23, c.v3),
    ];
    for (i, f) in faces.iter().enumerate() {
        let d = circularity_defect(f.0, f.1, f.2, f.3)?;
        if d > tol {
            return Err(GeomError::Precondition(format!(
                "face {i} at the common vertex is not circular (defect {d:.3e})"
            )));
        }
    }
    let (p, gap) = second_circle_intersection(c.v12, c.v1, c.v13, c.v2, c.v23)?;
    let mut residual = gap;
    for t in cube.completing_triples() {
        let circ = circumcircle(t[0], t[1], t[2])?;
        residual = residual.max(circ.distance_to(p));
    }
    let scale = cube.scale().max(1.0);
    if residual > tol * scale {
        return Err(GeomError::Inconsistent(format!(
            "completing circles are not concurrent (residual {residual:.3e})"
        )));
    }
    Ok(MiquelPoint { point: p, residual })
}

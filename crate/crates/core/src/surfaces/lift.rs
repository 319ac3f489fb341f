use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use super::SurfaceError;
use crate::geom::circle::circle_crossing_angle;
use crate::geom::stereo::{circle_to_sphere, to_sphere};
use crate::geom::{Circle3, Point2, Point3, SphericalCircle};
use crate::mesh::{QuadGraph, VertexColor};
use crate::pattern::PatternLayout;

/// Planar circles this large are treated as passing through the pole.
const MAX_PLANAR_EXTENT: f64 = 1e8;

/// An orthogonal circle pattern on the unit sphere attached to an
/// S-quad-graph: white vertices carry circles and black vertices the common
/// point of their four circles.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePattern {
    pub quad: QuadGraph,
    pub circles: BTreeMap<usize, Circle3>,
    pub points: BTreeMap<usize, Point3>,
}

impl SpherePattern {
    pub fn new(
        quad: QuadGraph,
        circles: BTreeMap<usize, Circle3>,
        points: BTreeMap<usize, Point3>,
    ) -> Result<Self, SurfaceError> {
        quad.check_s_coloring()?;
        let adj = quad.adjacency();
        for (v, &c) in quad.colors().iter().enumerate() {
            if adj[v].is_empty() {
                continue;
            }
            let ok = if c.is_white() { circles.contains_key(&v) } else { points.contains_key(&v) };
            if !ok {
                return Err(SurfaceError::InvalidInput(format!("vertex {v} has no circle or point")));
            }
        }
        Ok(SpherePattern { quad, circles, points })
    }

    /// Lifts planar circles `(centre, radius)` on white vertices and planar
    /// points on black vertices by inverse stereographic projection.
    pub fn from_planar(
        quad: QuadGraph,
        circles: &BTreeMap<usize, (Point2, f64)>,
        points: &BTreeMap<usize, Point2>,
    ) -> Result<Self, SurfaceError> {
        let mut lifted = BTreeMap::new();
        for (&v, &(c, r)) in circles {
            lifted.insert(v, lift_circle(v, c, r)?);
        }
        let pts = points.iter().map(|(&v, &p)| (v, to_sphere(p))).collect();
        SpherePattern::new(quad, lifted, pts)
    }

    /// Largest distance from a black point to the unit sphere or to the
    /// circle of a white neighbour.
    pub fn incidence_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (a, b) in self.quad.edges() {
            let (w, k) = if self.quad.color(a).is_white() { (a, b) } else { (b, a) };
            let p = self.points[&k];
            d = d.max((p.norm() - 1.0).abs()).max(self.circles[&w].distance_to(p));
        }
        d
    }

    /// Largest deviation from a right angle between the circle and sphere
    /// circles of a face, measured at both black points.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for f in self.quad.faces() {
            let (c, s) = white_pair(&self.quad, f);
            for &b in f.iter().filter(|&&v| !self.quad.color(v).is_white()) {
                let a = circle_crossing_angle(&self.circles[&c], &self.circles[&s], self.points[&b]);
                d = d.max((a - FRAC_PI_2).abs());
            }
        }
        d
    }

    /// Largest angle between tangent lines of same-coloured circles meeting
    /// at a black point; touching circles give zero.
    pub fn touching_defect(&self) -> f64 {
        let adj = self.quad.adjacency();
        let mut d: f64 = 0.0;
        for (b, nb) in adj.iter().enumerate() {
            if self.quad.color(b).is_white() {
                continue;
            }
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    if self.quad.color(u) == self.quad.color(w) {
                        let a = circle_crossing_angle(&self.circles[&u], &self.circles[&w], self.points[&b]);
                        d = d.max(a);
                    }
                }
            }
        }
        d
    }
}

/// The circle and sphere vertices of an S-quad-graph face.
pub(crate) fn white_pair(q: &QuadGraph, f: &[usize; 4]) -> (usize, usize) {
    let c = *f.iter().find(|&&v| q.color(v) == VertexColor::WhiteC).expect("S-coloured face");
    let s = *f.iter().find(|&&v| q.color(v) == VertexColor::WhiteS).expect("S-coloured face");
    (c, s)
}

fn lift_circle(index: usize, c: Point2, r: f64) -> Result<Circle3, SurfaceError> {
    if !(r < MAX_PLANAR_EXTENT) || !(c.norm() < MAX_PLANAR_EXTENT) {
        return Err(SurfaceError::NearPole(index));
    }
    Ok(circle_to_sphere(c, r)?)
}

/// Maps every circle of a planar layout to the unit sphere.
pub fn lift_pattern_to_sphere(layout: &PatternLayout) -> Result<Vec<Circle3>, SurfaceError> {
    layout
        .centers
        .iter()
        .zip(&layout.radii)
        .enumerate()
        .map(|(i, (&c, &r))| lift_circle(i, c, r))
        .collect()
}

/// `|cos θ|` for the intersection angle `θ` of two circles on the unit
/// sphere; zero means orthogonal.
pub fn spherical_orthogonality_defect(a: &Circle3, b: &Circle3) -> Result<f64, SurfaceError> {
    let ca = SphericalCircle::from_circle3(a)?;
    let cb = SphericalCircle::from_circle3(b)?;
    let cos_d = ca.axis.dot(cb.axis);
    let num = cos_d - ca.angle.cos() * cb.angle.cos();
    Ok((num / (ca.angle.sin() * cb.angle.sin())).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{layout, square_grid};

    #[test]
    fn grid_lift_keeps_right_angles() {
        let p = square_grid(4, 3, false).unwrap();
        let l = layout(&p, &vec![(0.3f64).ln(); 12]).unwrap();
        let circles = lift_pattern_to_sphere(&l).unwrap();
        for ((j, k), pts) in &l.intersections {
            let d = spherical_orthogonality_defect(&circles[*j], &circles[*k]).unwrap();
            assert!(d < 1e-10, "{d}");
            for &x in pts {
                let q = to_sphere(x);
                assert!(circles[*j].distance_to(q) < 1e-12);
                let a = circle_crossing_angle(&circles[*j], &circles[*k], q);
                assert!((a - FRAC_PI_2).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn huge_circle_rejected() {
        assert!(matches!(lift_circle(3, Point2::new(0.0, 0.0), 1e9), Err(SurfaceError::NearPole(3))));
    }
}

//! Stereographic projection between the plane `z = 0` and the unit sphere,
//! projecting from the north pole `(0, 0, 1)`.
//!
//! The origin of the plane maps to the south pole and the unit circle to the
//! equator.

use super::circle::{circumcircle, Circle3};
use super::vec3::{Point2, Point3};
use super::GeomError;

/// Inverse stereographic projection: plane point to the unit sphere.
pub fn to_sphere(p: Point2) -> Point3 {
    let n2 = p.norm_squared();
    let d = 1.0 + n2;
    Point3::new(2.0 * p.x / d, 2.0 * p.y / d, (n2 - 1.0) / d)
}

/// Stereographic projection from the north pole to the plane `z = 0`.
pub fn to_plane(q: Point3) -> Result<Point2, GeomError> {
    let d = 1.0 - q.z;
    // points within ~1e-12 of the pole have no representable image
    if d.abs() < 1e-15 * (1.0 + q.norm()) {
        return Err(GeomError::Pole);
    }
    Ok(Point2::new(q.x / d, q.y / d))
}

/// A circle on the unit sphere, described by its cap: the unit `axis` points
/// to the spherical centre of the cap and `angle` is the spherical radius in
/// `(0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalCircle {
    pub axis: Point3,
    pub angle: f64,
}

impl SphericalCircle {
    /// The circle as a space curve.
    pub fn to_circle3(&self) -> Circle3 {
        let (s, c) = self.angle.sin_cos();
        Circle3 {
            center: self.axis * c,
            radius: s,
            normal: self.axis,
            orientation: 1,
        }
    }

    /// Spherical circle from a space circle lying on the unit sphere; the cap
    /// chosen is the smaller one (the one on the side of the plane away from
    /// the origin).
    pub fn from_circle3(c: &Circle3) -> Result<Self, GeomError> {
        let h = c.center.dot(c.normal);
        let axis = if h >= 0.0 { c.normal } else { -c.normal };
        let angle = c.radius.atan2(h.abs());
        if !(angle > 0.0) {
            return Err(GeomError::Degenerate("zero spherical circle"));
        }
        Ok(SphericalCircle { axis, angle })
    }

    /// Distance from a point of the sphere to the circle, measured in space.
    pub fn distance_to(&self, p: Point3) -> f64 {
        self.to_circle3().distance_to(p)
    }
}

/// Image on the unit sphere of the planar circle with given centre and radius.
pub fn circle_to_sphere(center: Point2, radius: f64) -> Result<Circle3, GeomError> {
    if !(radius > 0.0) || !radius.is_finite() || !center.x.is_finite() || !center.y.is_finite() {
        return Err(GeomError::Degenerate("planar circle radius must be positive and finite"));
    }
    let pts: Vec<Point3> = (0..3)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / 3.0;
            to_sphere(center + Point2::from_polar(radius, t))
        })
        .collect();
    circumcircle(pts[0], pts[1], pts[2])
}

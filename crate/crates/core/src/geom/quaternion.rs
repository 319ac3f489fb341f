//! Quaternions, with Euclidean 3-space identified with the imaginary
//! quaternions `x i + y j + z k`.
//!
//! For imaginary `v`, `w` the product satisfies `v w = -<v, w> + v × w`,
//! which is what makes the quaternionic cross-ratio a convenient Möbius
//! invariant of four points in space.

use std::ops::{Add, Mul, Neg, Sub};

use super::vec3::Point3;
use super::GeomError;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds a vector of `R^3` as an imaginary quaternion (`w = 0` exactly).
    pub fn imaginary(v: Point3) -> Self {
        Quaternion::new(0.0, v.x, v.y, v.z)
    }

    pub fn re(self) -> f64 {
        self.w
    }

    pub fn im(self) -> Point3 {
        Point3::new(self.x, self.y, self.z)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_squared(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Euclidean norm `sqrt(w² + x² + y² + z²)`.
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn inverse(self) -> Result<Self, GeomError> {
        let n2 = self.norm_squared();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(GeomError::Degenerate("inverse of zero quaternion"));
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Unit quaternion rotating by `angle` about `axis`.
    pub fn from_axis_angle(axis: Point3, angle: f64) -> Self {
        let a = axis.normalized().unwrap_or(Point3::Z);
        let (s, c) = (0.5 * angle).sin_cos();
        Quaternion::new(c, a.x * s, a.y * s, a.z * s)
    }

    /// Rotates `v` by this unit quaternion: `q v q̄`.
    pub fn rotate(self, v: Point3) -> Point3 {
        (self * Quaternion::imaginary(v) * self.conj()).im()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            self.scale(1.0 / n)
        } else {
            Quaternion::ONE
        }
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, b: Quaternion) -> Quaternion {
        Quaternion::new(self.w + b.w, self.x + b.x, self.y + b.y, self.z + b.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, b: Quaternion) -> Quaternion {
        Quaternion::new(self.w - b.w, self.x - b.x, self.y - b.y, self.z - b.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// Quaternion product; free-function form of `a * b`.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

/// The quaternionic cross-ratio
/// `(x1 - x2)(x2 - x3)^-1 (x3 - x4)(x4 - x1)^-1`.
///
/// Real exactly when the four points are concyclic; `|q|` and `|Im q|` are
/// Möbius invariants.
pub fn cross_ratio(x1: Point3, x2: Point3, x3: Point3, x4: Point3) -> Result<Quaternion, GeomError> {
    let d = |a: Point3, b: Point3| Quaternion::imaginary(a - b);
    let scale = [x1, x2, x3, x4]
        .iter()
        .map(|p| p.norm())
        .fold(1.0_f64, f64::max);
    for (a, b) in [(x1, x2), (x2, x3), (x3, x4), (x4, x1)] {
        if (a - b).norm() <= 1e-14 * scale {
            return Err(GeomError::Degenerate("coincident consecutive points in cross-ratio"));
        }
    }
    Ok(d(x1, x2) * d(x2, x3).inverse()? * d(x3, x4) * d(x4, x1).inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_relations() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::I * Quaternion::I, Quaternion::real(-1.0));
        assert_eq!(Quaternion::J * Quaternion::J, Quaternion::real(-1.0));
        assert_eq!(Quaternion::K * Quaternion::K, Quaternion::real(-1.0));
    }

    #[test]
    fn vector_square_is_minus_norm_squared() {
        let v = Quaternion::new(0.0, 3.0, 4.0, 0.0);
        assert_eq!(v * v, Quaternion::real(-25.0));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(Quaternion::default().inverse().is_err());
        let q = Quaternion::new(1.0, -2.0, 0.5, 3.0);
        let e = q.inverse().unwrap() * q - Quaternion::ONE;
        assert!(e.norm() < 1e-15);
    }

    #[test]
    fn unit_square_cross_ratio() {
        let q = cross_ratio(
            Point3::ZERO,
            Point3::X,
            Point3::new(1.0, 1.0, 0.0),
            Point3::Y,
        )
        .unwrap();
        assert!((q.re() + 1.0).abs() < 1e-15);
        assert!(q.im().norm() < 1e-15);
    }

    #[test]
    fn degenerate_cross_ratio() {
        let p = Point3::new(1.0, 2.0, 3.0);
        assert!(cross_ratio(p, p, Point3::X, Point3::Y).is_err());
    }

    #[test]
    fn rotation_quaternion() {
        let q = Quaternion::from_axis_angle(Point3::Z, std::f64::consts::FRAC_PI_2);
        let r = q.rotate(Point3::X);
        assert!((r - Point3::Y).norm() < 1e-15);
    }
}

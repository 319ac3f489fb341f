//! Smooth-limit harness: hexagonal stars sampled from the quadratic graph
//! `z = (k1 x² + k2 y²)/2` and the limiting ratio of discrete to smooth
//! Willmore energy.

use std::f64::consts::{FRAC_PI_2, PI};

use super::EnergyError;
use crate::geom::{Point2, Point3};
use crate::mesh::SimplicialSurface;

/// Shape and orientation of a regular lattice of acute triangles. `phi1` is
/// the angle of the lattice vector `a` to the first curvature line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeAngles {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
}

impl LatticeAngles {
    pub fn new(phi1: f64, phi2: f64, phi3: f64) -> Result<Self, EnergyError> {
        let ok = (0.0..FRAC_PI_2).contains(&phi1)
            && phi2 > 0.0
            && phi2 < FRAC_PI_2
            && phi3 > 0.0
            && phi3 < FRAC_PI_2
            && phi2 + phi3 > FRAC_PI_2;
        if !ok {
            return Err(EnergyError::OutsideModuli(format!("({phi1}, {phi2}, {phi3})")));
        }
        Ok(LatticeAngles { phi1, phi2, phi3 })
    }

    /// Lattice vectors `a` (unit length) and `c` in the parameter plane.
    pub fn vectors(&self) -> (Point2, Point2) {
        let a = Point2::from_polar(1.0, self.phi1);
        let c = Point2::from_polar(self.phi2.sin() / self.phi3.sin(), self.phi1 + self.phi2 + self.phi3);
        (a, c)
    }
}

/// Limit of `W_ε(v) / ((k1 − k2)² S / 4)` as `ε → 0`.
pub fn quotient_q(phi: &LatticeAngles) -> Result<f64, EnergyError> {
    let LatticeAngles { phi1, phi2, phi3 } = LatticeAngles::new(phi.phi1, phi.phi2, phi.phi3)?;
    let t1 = (2.0 * phi1).cos() * phi3.cos() + (2.0 * phi1 + 2.0 * phi2 + phi3).cos();
    let t2 = (2.0 * phi1).sin() * phi3.cos();
    let den = 4.0 * phi2.cos() * phi3.cos() * (phi2 + phi3).cos();
    Ok(1.0 - (t1 * t1 + t2 * t2) / den)
}

#[derive(Debug, Clone)]
pub struct ModelHexagon {
    /// Centre vertex 0 at the origin, ring `εa, εb, εc, −εa, −εb, −εc`.
    pub surface: SimplicialSurface,
    pub a: Point2,
    pub c: Point2,
    /// Angle between `a` and `c`.
    pub gamma: f64,
    /// `ε² |a| |c| sin γ`.
    pub area: f64,
}

impl ModelHexagon {
    /// Smooth Willmore energy density `(k1 − k2)² S / 4` attributed to the
    /// centre vertex.
    pub fn smooth_energy(&self, k1: f64, k2: f64) -> f64 {
        (k1 - k2).powi(2) * self.area / 4.0
    }

    /// Share of the discrete energy carried by the centre vertex:
    /// `W(S) = ½ Σ_v W(v)`, so this is half the local energy at vertex 0.
    pub fn discrete_energy(&self) -> Result<f64, EnergyError> {
        Ok(0.5 * super::willmore_local(&self.surface, 0)?)
    }
}

pub fn model_hexagon(k1: f64, k2: f64, phi: &LatticeAngles, eps: f64) -> Result<ModelHexagon, EnergyError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(EnergyError::InvalidInput("scale must be positive".into()));
    }
    let phi = LatticeAngles::new(phi.phi1, phi.phi2, phi.phi3)?;
    let (a, c) = phi.vectors();
    let b = a + c;
    let lift = |q: Point2| {
        let (x, y) = (eps * q.x, eps * q.y);
        Point3::new(x, y, 0.5 * (k1 * x * x + k2 * y * y))
    };
    let mut pts = vec![Point3::ZERO];
    for q in [a, b, c, -a, -b, -c] {
        pts.push(lift(q));
    }
    let faces = (0..6).map(|i| [0, 1 + i, 1 + (i + 1) % 6]).collect();
    let gamma = a.cross(c).atan2(a.dot(c)).abs();
    let area = eps * eps * a.norm() * c.norm() * gamma.sin();
    let surface = SimplicialSurface::new(pts, faces)?;
    debug_assert!(gamma > 0.0 && gamma < PI);
    Ok(ModelHexagon { surface, a, c, gamma, area })
}

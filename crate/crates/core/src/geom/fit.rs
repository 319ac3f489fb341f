//! Least-squares plane and sphere fits used by the verification checks.

use nalgebra::{DMatrix, DVector, Matrix3};

use super::vec3::Point3;
use super::GeomError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneFit {
    pub point: Point3,
    pub normal: Point3,
    /// Largest absolute distance of an input point from the plane.
    pub max_defect: f64,
}

pub fn centroid(pts: &[Point3]) -> Point3 {
    let mut c = Point3::ZERO;
    for &p in pts {
        c += p;
    }
    c / pts.len().max(1) as f64
}

/// Total-least-squares plane through the points.
pub fn fit_plane(pts: &[Point3]) -> Result<PlaneFit, GeomError> {
    if pts.len() < 3 {
        return Err(GeomError::Underdetermined("plane fit needs at least three points"));
    }
    let c = centroid(pts);
    let mut m = Matrix3::<f64>::zeros();
    for &p in pts {
        let d = p - c;
        let v = nalgebra::Vector3::new(d.x, d.y, d.z);
        m += v * v.transpose();
    }
    let eig = m.symmetric_eigen();
    let mut k = 0;
    for i in 1..3 {
        if eig.eigenvalues[i] < eig.eigenvalues[k] {
            k = i;
        }
    }
    let col = eig.eigenvectors.column(k);
    let normal = Point3::new(col[0], col[1], col[2])
        .normalized()
        .ok_or(GeomError::Degenerate("plane fit failed"))?;
    let max_defect = pts
        .iter()
        .map(|&p| (p - c).dot(normal).abs())
        .fold(0.0, f64::max);
    Ok(PlaneFit { point: c, normal, max_defect })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphereFit {
    Sphere {
        center: Point3,
        radius: f64,
        max_defect: f64,
    },
    /// The points are (nearly) coplanar: the best "sphere" is a plane.
    Plane(PlaneFit),
}

impl SphereFit {
    pub fn max_defect(&self) -> f64 {
        match self {
            SphereFit::Sphere { max_defect, .. } => *max_defect,
            SphereFit::Plane(p) => p.max_defect,
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, SphereFit::Plane(_))
    }
}

/// Algebraic least-squares sphere `|p|² + D·p + E = 0`; planes are treated as
/// spheres of infinite radius.
pub fn fit_sphere(pts: &[Point3]) -> Result<SphereFit, GeomError> {
    if pts.len() < 4 {
        return Err(GeomError::Underdetermined("sphere fit needs at least four points"));
    }
    let c0 = centroid(pts);
    let scale = pts.iter().map(|&p| (p - c0).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(GeomError::Degenerate("all points coincide"));
    }
    let plane = fit_plane(pts)?;
    if plane.max_defect <= 1e-12 * scale {
        return Ok(SphereFit::Plane(plane));
    }
    let n = pts.len();
    let mut a = DMatrix::<f64>::zeros(n, 4);
    let mut b = DVector::<f64>::zeros(n);
    for (i, &p) in pts.iter().enumerate() {
        let q = (p - c0) / scale;
        a[(i, 0)] = q.x;
        a[(i, 1)] = q.y;
        a[(i, 2)] = q.z;
        a[(i, 3)] = 1.0;
        b[i] = -q.norm_squared();
    }
    let svd = a.svd(true, true);
    let sol = svd
        .solve(&b, 1e-14)
        .map_err(|_| GeomError::Degenerate("sphere fit failed"))?;
    let cq = Point3::new(-sol[0] / 2.0, -sol[1] / 2.0, -sol[2] / 2.0);
    let r2 = cq.norm_squared() - sol[3];
    if !(r2 > 0.0) || !r2.is_finite() || r2.sqrt() > 1e8 {
        return Ok(SphereFit::Plane(plane));
    }
    let center = c0 + cq * scale;
    let radius = r2.sqrt() * scale;
    let max_defect = pts
        .iter()
        .map(|&p| ((p - center).norm() - radius).abs())
        .fold(0.0, f64::max);
    if plane.max_defect < max_defect {
        return Ok(SphereFit::Plane(plane));
    }
    Ok(SphereFit::Sphere { center, radius, max_defect })
}

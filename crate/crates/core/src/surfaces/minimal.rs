use std::collections::BTreeMap;

use super::sisothermic::SIsothermicSurface;
use super::SurfaceError;
use crate::geom::fit::fit_plane;
use crate::geom::Point3;

/// Per-sphere coplanarity of the sphere centre with the centres of the
/// neighbouring circles.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MinimalityReport {
    /// Sphere vertex and its out-of-plane defect relative to the radius.
    pub per_vertex: Vec<(usize, f64)>,
    pub max_defect: f64,
    /// Sphere vertices with fewer than two neighbouring circles.
    pub underdetermined: Vec<usize>,
    /// Unit normal of the fitted plane at every tested sphere vertex.
    pub normals: BTreeMap<usize, Point3>,
}

pub fn is_discrete_minimal(s: &SIsothermicSurface) -> Result<MinimalityReport, SurfaceError> {
    let mut rep = MinimalityReport::default();
    for (&v, sphere) in &s.spheres {
        let star = s.quad.vertex_star(v)?;
        let mut pts = vec![sphere.center];
        pts.extend(star.opposite.iter().map(|c| s.circles[c].center));
        if pts.len() < 3 {
            rep.underdetermined.push(v);
            continue;
        }
        let plane = fit_plane(&pts)?;
        let d = plane.max_defect / sphere.radius;
        rep.per_vertex.push((v, d));
        rep.max_defect = rep.max_defect.max(d);
        rep.normals.insert(v, plane.normal);
    }
    Ok(rep)
}

/// Largest angle between the fitted tangent plane normal of a minimal
/// surface and the direction of the matching Koebe polyhedron vertex.
pub fn gauss_map_defect(minimal: &MinimalityReport, koebe: &SIsothermicSurface) -> Result<f64, SurfaceError> {
    let mut worst: f64 = 0.0;
    for (v, n) in &minimal.normals {
        let k = koebe
            .spheres
            .get(v)
            .ok_or_else(|| SurfaceError::InvalidInput(format!("Koebe surface has no sphere at {v}")))?;
        let c = n.dot(k.center) / k.center.norm();
        worst = worst.max(c.abs().min(1.0).acos());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Circle3, Sphere3};
    use crate::mesh::{QuadGraph, VertexColor};

    /// Flat patch: one sphere at the origin with four circles around it in
    /// the plane `z = 0`.
    fn flat_star() -> SIsothermicSurface {
        use VertexColor::*;
        // 0 sphere, 1..=4 circles, 5..=8 contacts
        let mut colors = vec![WhiteS];
        colors.extend([WhiteC; 4]);
        colors.extend([Black; 4]);
        let faces = (0..4).map(|i| [0, 5 + i, 1 + i, 5 + (i + 1) % 4]).collect();
        let q = QuadGraph::new(colors, faces).unwrap();
        let mut spheres = BTreeMap::new();
        spheres.insert(0, Sphere3::new(Point3::ZERO, 1.0).unwrap());
        let mut circles = BTreeMap::new();
        let mut contacts = BTreeMap::new();
        for i in 0..4 {
            let t = std::f64::consts::FRAC_PI_2 * i as f64;
            let u = Point3::new(t.cos(), t.sin(), 0.0);
            let w = Point3::new((t - 0.7).cos(), (t - 0.7).sin(), 0.0);
            circles.insert(1 + i, Circle3::new(u * 2.0, 1.0, Point3::Z).unwrap());
            contacts.insert(5 + i, w);
        }
        SIsothermicSurface { quad: q, spheres, circles, contacts }
    }

    #[test]
    fn flat_patch_is_minimal() {
        let s = flat_star();
        let r = is_discrete_minimal(&s).unwrap();
        assert_eq!(r.per_vertex.len(), 1);
        assert!(r.max_defect < 1e-15);
        assert!((r.normals[&0].z.abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lifted_circle_breaks_minimality() {
        let mut s = flat_star();
        s.circles.get_mut(&2).unwrap().center.z = 0.3;
        assert!(is_discrete_minimal(&s).unwrap().max_defect > 0.05);
    }
}

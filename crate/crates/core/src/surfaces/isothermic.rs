//! Checks for discrete isothermic quad nets: face circularity, the
//! cross-ratio product condition and central spheres.

use super::SurfaceError;
use crate::geom::fit::{fit_sphere, SphereFit};
use crate::geom::{cross_ratio, Point3, Quaternion};
use crate::mesh::QuadGraph;

/// Largest `|Im q| / |q|` over all faces, and the face attaining it.
pub fn circularity_defect(q: &QuadGraph) -> Result<(usize, f64), SurfaceError> {
    let pos = q.require_positions()?;
    let mut worst = (0, 0.0);
    for (fi, f) in q.faces().iter().enumerate() {
        let c = cross_ratio(pos[f[0]], pos[f[1]], pos[f[2]], pos[f[3]])?;
        let d = c.im().norm() / c.norm();
        if d > worst.1 {
            worst = (fi, d);
        }
    }
    Ok(worst)
}

/// Defects of kite faces: `|q + 1|` for the face cross-ratio and `|cos|` of
/// the angle between the diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KiteDefects {
    pub cross_ratio: f64,
    pub diagonal: f64,
}

pub fn kite_defects(q: &QuadGraph) -> Result<KiteDefects, SurfaceError> {
    let pos = q.require_positions()?;
    let mut k = KiteDefects::default();
    for f in q.faces() {
        let p: Vec<Point3> = f.iter().map(|&v| pos[v]).collect();
        let c = cross_ratio(p[0], p[1], p[2], p[3])?;
        k.cross_ratio = k.cross_ratio.max((c + Quaternion::ONE).norm());
        let (d1, d2) = (p[2] - p[0], p[3] - p[1]);
        k.diagonal = k.diagonal.max((d1.dot(d2) / (d1.norm() * d2.norm())).abs());
    }
    Ok(k)
}

/// Residual `|Π q − 1|` of the cross-ratio product around every interior
/// vertex of even degree, with the quaternion product taken in the cyclic
/// order of the star. Faces must be circular within `tol`.
pub fn is_discrete_isothermic(q: &QuadGraph, tol: f64) -> Result<Vec<(usize, f64)>, SurfaceError> {
    let (face, defect) = circularity_defect(q)?;
    if defect > tol {
        return Err(SurfaceError::NonCircular { face, defect });
    }
    let pos = q.require_positions()?;
    let mut out = Vec::new();
    for v in 0..q.vertex_count() {
        let star = q.vertex_star(v)?;
        if !star.closed || star.faces.is_empty() || star.faces.len() % 2 == 1 {
            continue;
        }
        let d = star.faces.len();
        let mut prod = Quaternion::ONE;
        for i in 0..d {
            let c = cross_ratio(pos[v], pos[star.ring[i]], pos[star.opposite[i]], pos[star.ring[(i + 1) % d]])?;
            prod = prod * c;
        }
        out.push((v, (prod - Quaternion::ONE).norm()));
    }
    Ok(out)
}

/// Result of the central sphere test at one vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralSphere {
    pub fit: SphereFit,
    /// Largest distance to the fitted sphere, relative to the star size.
    pub defect: f64,
    /// The test says nothing here: the points are coplanar or the vertex is
    /// already co-spherical with its direct neighbours.
    pub degenerate: bool,
}

/// Fits a sphere through `v` and the vertices diagonally opposite it in its
/// faces.
pub fn central_sphere_check(q: &QuadGraph, v: usize) -> Result<CentralSphere, SurfaceError> {
    let pos = q.require_positions()?;
    let star = q.vertex_star(v)?;
    if star.opposite.len() < 3 {
        return Err(SurfaceError::InvalidInput(format!("vertex {v} has fewer than three faces")));
    }
    let mut pts = vec![pos[v]];
    pts.extend(star.opposite.iter().map(|&o| pos[o]));
    let scale = pts.iter().map(|p| p.distance(pos[v])).fold(0.0, f64::max);
    let fit = fit_sphere(&pts)?;
    let mut own = vec![pos[v]];
    own.extend(star.ring.iter().map(|&a| pos[a]));
    let own_fit = if own.len() >= 5 { Some(fit_sphere(&own)?) } else { None };
    let vacuous = own_fit.is_some_and(|f| f.max_defect() <= 1e-9 * scale);
    Ok(CentralSphere {
        fit,
        defect: fit.max_defect() / scale,
        degenerate: fit.is_planar() || vacuous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::circle::sphere_invert;
    use crate::geom::{circumcircle, Sphere3};
    use crate::mesh::VertexColor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// A 3 × 3 vertex patch (2 × 2 faces) with vertex `(i, j)` at `3j + i`.
    fn patch(pos: Vec<Point3>) -> QuadGraph {
        let colors = (0..9)
            .map(|v| if (v % 3 + v / 3) % 2 == 0 { VertexColor::White } else { VertexColor::Black })
            .collect();
        let faces = vec![[0, 1, 4, 3], [1, 2, 5, 4], [3, 4, 7, 6], [4, 5, 8, 7]];
        QuadGraph::new(colors, faces).unwrap().with_positions(pos).unwrap()
    }

    fn planar_grid() -> Vec<Point3> {
        (0..9).map(|v| Point3::new((v % 3) as f64, (v / 3) as f64, 0.0)).collect()
    }

    #[test]
    fn planar_squares_are_isothermic() {
        let q = patch(planar_grid());
        let r = is_discrete_isothermic(&q, 1e-12).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].1 < 1e-15);
        let c = central_sphere_check(&q, 4).unwrap();
        assert!(c.degenerate);
        assert!(c.defect < 1e-15);
    }

    #[test]
    fn inverted_grid_has_central_sphere() {
        let inv = Sphere3::new(Point3::new(0.3, 0.7, 1.9), 1.3).unwrap();
        let pos = planar_grid().into_iter().map(|p| sphere_invert(&inv, p).unwrap()).collect();
        let q = patch(pos);
        let r = is_discrete_isothermic(&q, 1e-10).unwrap();
        assert!(r[0].1 < 1e-10, "{}", r[0].1);
        let c = central_sphere_check(&q, 4).unwrap();
        assert!(!c.fit.is_planar());
        assert!(c.defect < 1e-10);
    }

    /// Random circular net: boundary row and column free, every further
    /// vertex on the circle through its three predecessors.
    fn random_circular(rng: &mut ChaCha8Rng) -> Vec<Point3> {
        let mut p = vec![Point3::ZERO; 9];
        let mut r = || Point3::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
        for v in 0..9 {
            let (i, j) = (v % 3, v / 3);
            if i == 0 || j == 0 {
                p[v] = Point3::new(i as f64, j as f64, 0.0) + r();
            }
        }
        for j in 1..3 {
            for i in 1..3 {
                let c = circumcircle(p[3 * (j - 1) + i - 1], p[3 * (j - 1) + i], p[3 * j + i - 1]).unwrap();
                // land on the arc opposite the shared corner
                let a = p[3 * (j - 1) + i - 1];
                let far = c.center * 2.0 - a;
                let t = c.normal.cross(far - c.center);
                p[3 * j + i] = c.center + ((far - c.center) + t * 0.3).normalized().unwrap() * c.radius;
            }
        }
        p
    }

    #[test]
    fn generic_circular_net_fails_both_tests() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let q = patch(random_circular(&mut rng));
            let (_, circ) = circularity_defect(&q).unwrap();
            assert!(circ < 1e-10);
            let r = is_discrete_isothermic(&q, 1e-10).unwrap();
            assert!(r[0].1 > 1e-7, "{}", r[0].1);
            let c = central_sphere_check(&q, 4).unwrap();
            assert!(c.defect > 1e-7, "{}", c.defect);
        }
    }

    #[test]
    fn non_circular_face_rejected() {
        let mut pos = planar_grid();
        pos[0].z = 0.2;
        assert!(matches!(is_discrete_isothermic(&patch(pos), 1e-8), Err(SurfaceError::NonCircular { .. })));
    }
}

use super::EnergyError;
use crate::geom::circle::{circumcircle, is_degenerate_triangle};
use crate::geom::sum::compensated_sum;
use crate::geom::Point3;
use crate::mesh::SimplicialSurface;

/// External angle `β(θ)` of the circumcircles of two triangles hinged along a
/// common edge of length `2 l3`, whose circumcentres sit at signed distances
/// `l1`, `l2` from the edge midpoint, when the triangles are bent by the
/// dihedral angle `θ`:
/// `cos β = (l3² cos θ − l1 l2) / (r1 r2)`, `rᵢ = √(lᵢ² + l3²)`.
pub fn beta_of_theta(l1: f64, l2: f64, l3: f64, theta: f64) -> Result<f64, EnergyError> {
    if !(l1 > 0.0 && l2 > 0.0 && l3 > 0.0) {
        return Err(EnergyError::InvalidInput("lengths must be positive".into()));
    }
    let r1 = l1.hypot(l3);
    let r2 = l2.hypot(l3);
    let c = (l3 * l3 * theta.cos() - l1 * l2) / (r1 * r2);
    Ok(c.clamp(-1.0, 1.0).acos())
}

/// Which face centre defines the hinge distance `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BendingCenter {
    #[default]
    Circumcenter,
    Barycenter,
}

/// Bending energy `E = Σ_e (l/L) θ²` over interior edges, with
/// circumcentres.
pub fn bending_energy(s: &SimplicialSurface) -> Result<f64, EnergyError> {
    bending_energy_with(s, BendingCenter::Circumcenter)
}

/// Bending energy with the chosen face centre. `l` is the edge length, `θ`
/// the angle between the normals of the two faces and `L = |l1 + l2|` where
/// `lᵢ` is the signed distance from the edge midpoint to the centre of face
/// `i`, positive towards that face's apex.
pub fn bending_energy_with(s: &SimplicialSurface, center: BendingCenter) -> Result<f64, EnergyError> {
    let p = s.require_positions()?;
    for (f, &[a, b, c]) in s.faces().iter().enumerate() {
        if is_degenerate_triangle(p[a], p[b], p[c]) {
            return Err(EnergyError::DegenerateFace(f));
        }
    }
    let mean_edge = compensated_sum(s.edges().map(|(a, b)| p[a].distance(p[b]))) / s.edge_count().max(1) as f64;
    let face_center = |x: Point3, y: Point3, z: Point3| -> Result<Point3, EnergyError> {
        Ok(match center {
            BendingCenter::Circumcenter => circumcircle(x, y, z)?.center,
            BendingCenter::Barycenter => (x + y + z) / 3.0,
        })
    };
    let mut terms = Vec::new();
    let mut singular = Vec::new();
    for (a, b) in s.edges() {
        let Some((s1, s2, l, r)) = s.edge_quad(a, b) else { continue };
        let (x1, x2, xl, xr) = (p[s1], p[s2], p[l], p[r]);
        let e = x2 - x1;
        let m = x1.lerp(x2, 0.5);
        let nl = e.cross(xl - x1).normalized().expect("nondegenerate");
        let nr = (x1 - x2).cross(xr - x2).normalized().expect("nondegenerate");
        let theta = nl.angle_to(nr);
        let hinge = |n: Point3, apex: Point3, c: Point3| {
            let mut u = n.cross(e).normalized().expect("nondegenerate");
            if u.dot(apex - m) < 0.0 {
                u = -u;
            }
            (c - m).dot(u)
        };
        let l1 = hinge(nl, xl, face_center(x1, x2, xl)?);
        let l2 = hinge(nr, xr, face_center(x1, x2, xr)?);
        let big_l = (l1 + l2).abs();
        if big_l < 1e-12 * mean_edge {
            singular.push((a, b));
            continue;
        }
        terms.push(e.norm() / big_l * theta * theta);
    }
    if !singular.is_empty() {
        return Err(EnergyError::SingularEdges(singular));
    }
    Ok(compensated_sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generators::tetrahedron;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn unit_lengths_give_right_angle() {
        assert!((beta_of_theta(1.0, 1.0, 1.0, 0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn even_in_theta() {
        let a = beta_of_theta(0.3, 0.7, 0.5, 0.2).unwrap();
        assert_eq!(a, beta_of_theta(0.3, 0.7, 0.5, -0.2).unwrap());
    }

    #[test]
    fn regular_tetrahedron_closed_form() {
        let theta = PI - (1.0f64 / 3.0).acos();
        let expected = 6.0 * 3f64.sqrt() * theta * theta;
        let e = bending_energy(&tetrahedron()).unwrap();
        assert!((e - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn concyclic_flat_pair_is_singular() {
        let p = vec![Point3::ZERO, Point3::X, Point3::new(1.0, 1.0, 0.0), Point3::Y];
        let s = SimplicialSurface::new(p, vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        assert_eq!(bending_energy(&s), Err(EnergyError::SingularEdges(vec![(0, 2)])));
        assert!(bending_energy_with(&s, BendingCenter::Barycenter).unwrap().abs() < 1e-15);
    }
}

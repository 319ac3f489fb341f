use std::f64::consts::PI;

use super::{EnergyError, EnergyReport};
use crate::geom::circle::{external_angle, is_degenerate_triangle};
use crate::geom::sum::compensated_sum;
use crate::geom::{GeomError, Point3};
use crate::mesh::SimplicialSurface;

fn check_faces(s: &SimplicialSurface, faces: &[usize], p: &[Point3]) -> Result<(), EnergyError> {
    for &f in faces {
        let [a, b, c] = s.faces()[f];
        if is_degenerate_triangle(p[a], p[b], p[c]) {
            return Err(EnergyError::DegenerateFace(f));
        }
    }
    Ok(())
}

/// External angle between the circumcircles of the two faces at edge `a b`.
pub fn edge_beta(s: &SimplicialSurface, a: usize, b: usize) -> Result<f64, EnergyError> {
    let p = s.require_positions()?;
    let (s1, s2, l, r) = s
        .edge_quad(a, b)
        .ok_or_else(|| EnergyError::NotClosed(format!("edge {a}-{b} does not have two faces")))?;
    check_faces(s, s.edge_faces(a, b), p)?;
    external_angle(p[s1], p[s2], p[l], p[r]).map_err(|e| match e {
        GeomError::DegenerateTriangle => EnergyError::DegenerateFace(s.edge_faces(a, b)[0]),
        e => e.into(),
    })
}

/// Local energy `W(v) = Σ β(e) − 2π` over the edges at `v`. Only the star
/// of `v` needs to be closed.
pub fn willmore_local(s: &SimplicialSurface, v: usize) -> Result<f64, EnergyError> {
    let star = s.vertex_star(v)?;
    if !star.closed {
        return Err(EnergyError::NotClosed(format!("vertex {v} lies on the boundary")));
    }
    let betas = star
        .neighbors
        .iter()
        .map(|&w| edge_beta(s, v, w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(compensated_sum(betas.into_iter().chain([-2.0 * PI])))
}

/// Total energy `W(S) = Σ_e β(e) − π|V|` of a closed surface, with the
/// per-edge and per-vertex tables.
pub fn willmore_total(s: &SimplicialSurface) -> Result<EnergyReport, EnergyError> {
    s.require_closed().map_err(|e| EnergyError::NotClosed(e.to_string()))?;
    let p = s.require_positions()?;
    check_faces(s, &(0..s.face_count()).collect::<Vec<_>>(), p)?;
    let mut per_edge = Vec::with_capacity(s.edge_count());
    let mut incident: Vec<Vec<f64>> = vec![Vec::new(); s.vertex_count()];
    for (a, b) in s.edges() {
        let beta = edge_beta(s, a, b)?;
        per_edge.push(((a, b), beta));
        incident[a].push(beta);
        incident[b].push(beta);
    }
    let per_vertex = incident
        .into_iter()
        .map(|bs| compensated_sum(bs.into_iter().chain([-2.0 * PI])))
        .collect();
    let total = compensated_sum(
        per_edge
            .iter()
            .map(|e| e.1)
            .chain(std::iter::repeat_n(-PI, s.vertex_count())),
    );
    Ok(EnergyReport { total, per_vertex, per_edge })
}

/// Lower bound `π(|V_w| − |V_b|)` for the energy of a black/white colored
/// surface without white–white edges.
pub fn steinitz_bound(s: &SimplicialSurface) -> Result<f64, EnergyError> {
    let c = s
        .colors()
        .ok_or_else(|| EnergyError::InvalidColoring("surface has no vertex colors".into()))?;
    for (a, b) in s.edges() {
        if c[a].is_white() && c[b].is_white() {
            return Err(EnergyError::InvalidColoring(format!("edge {a}-{b} joins two white vertices")));
        }
    }
    let w = c.iter().filter(|c| c.is_white()).count() as f64;
    let b = c.len() as f64 - w;
    Ok(PI * (w - b))
}

/// For a closed polygon and an apex, returns `(Σ βᵢ, Σ αᵢ)` where `βᵢ` are
/// the external (turning) angles of the polygon and `αᵢ` the angles at the
/// apex of the pyramid triangles.
pub fn pyramid_angle_sums(polygon: &[Point3], apex: Point3) -> Result<(f64, f64), EnergyError> {
    let n = polygon.len();
    if n < 3 {
        return Err(EnergyError::InvalidInput("polygon needs at least three vertices".into()));
    }
    let scale = polygon.iter().map(|p| p.distance(apex)).fold(0.0, f64::max);
    let mut betas = Vec::with_capacity(n);
    let mut alphas = Vec::with_capacity(n);
    for i in 0..n {
        let prev = polygon[(i + n - 1) % n];
        let cur = polygon[i];
        let next = polygon[(i + 1) % n];
        let (e0, e1) = (cur - prev, next - cur);
        if e0.norm() <= 1e-14 * scale || e1.norm() <= 1e-14 * scale {
            return Err(EnergyError::InvalidInput(format!("polygon edge at vertex {i} is degenerate")));
        }
        if (cur - apex).norm() <= 1e-14 * scale {
            return Err(EnergyError::InvalidInput(format!("apex coincides with vertex {i}")));
        }
        betas.push(e0.angle_to(e1));
        alphas.push((cur - apex).angle_to(next - apex));
    }
    Ok((compensated_sum(betas), compensated_sum(alphas)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generators::{octahedron, steinitz_example, tetrahedron};

    #[test]
    fn inscribed_solids_have_zero_energy() {
        for s in [tetrahedron(), octahedron()] {
            let r = willmore_total(&s).unwrap();
            assert!(r.total.abs() < 1e-12, "{}", r.total);
            assert!(willmore_local(&s, 0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn pulled_vertex_has_positive_energy() {
        let s = octahedron();
        let mut p = s.positions().unwrap().to_vec();
        p[0] = p[0] * 1.3;
        let s = s.with_positions(p).unwrap();
        assert!(willmore_local(&s, 4).unwrap() > 1e-3);
    }

    #[test]
    fn bound_for_steinitz_example() {
        assert!((steinitz_bound(&steinitz_example()).unwrap() - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn planar_pyramid_equality() {
        let poly: Vec<Point3> = (0..7)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 7.0;
                Point3::new(t.cos(), 0.6 * t.sin(), 0.0)
            })
            .collect();
        let (b, a) = pyramid_angle_sums(&poly, Point3::new(0.1, -0.05, 0.0)).unwrap();
        assert!((b - 2.0 * PI).abs() < 1e-12);
        assert!((a - 2.0 * PI).abs() < 1e-12);
    }
}

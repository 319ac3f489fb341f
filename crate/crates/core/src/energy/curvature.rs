use std::f64::consts::PI;

use super::EnergyError;
use crate::geom::circle::is_degenerate_triangle;
use crate::geom::sum::compensated_sum;
use crate::mesh::SimplicialSurface;

/// Angle defect `G(v) = 2π − Σ αᵢ` over the face angles at `v`.
pub fn angle_defect(s: &SimplicialSurface, v: usize) -> Result<f64, EnergyError> {
    let p = s.require_positions()?;
    let star = s.vertex_star(v)?;
    let mut angles = Vec::with_capacity(star.faces.len() + 1);
    for &f in &star.faces {
        let [a, b, c] = s.faces()[f];
        if is_degenerate_triangle(p[a], p[b], p[c]) {
            return Err(EnergyError::DegenerateFace(f));
        }
        let k = s.faces()[f].iter().position(|&x| x == v).expect("face in star");
        let (u, w) = (s.faces()[f][(k + 1) % 3], s.faces()[f][(k + 2) % 3]);
        angles.push((p[u] - p[v]).angle_to(p[w] - p[v]));
    }
    angles.push(-2.0 * PI);
    Ok(-compensated_sum(angles))
}

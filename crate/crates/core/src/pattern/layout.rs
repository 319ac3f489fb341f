use std::collections::{BTreeSet, VecDeque};

use super::problem::PatternProblem;
use super::PatternError;
use crate::geom::Point2;

#[derive(Debug, Clone, PartialEq)]
pub struct PatternLayout {
    pub centers: Vec<Point2>,
    pub radii: Vec<f64>,
    /// For each adjacency `(j, k)`, `j < k`, the two intersection points.
    pub intersections: Vec<((usize, usize), [Point2; 2])>,
    /// Largest relative violation of `|cⱼ − cₖ|² = rⱼ² + rₖ²`.
    pub orthogonality_residual: f64,
    /// Largest relative violation of tangency between consecutive,
    /// non-adjacent neighbours of a circle.
    pub tangency_residual: f64,
    /// Largest relative mismatch met while propagating positions.
    pub propagation_defect: f64,
}

/// Lays out the pattern with default tolerance `1e-8`.
pub fn layout(p: &PatternProblem, rho: &[f64]) -> Result<PatternLayout, PatternError> {
    layout_with_tolerance(p, rho, 1e-8)
}

/// Angles of all neighbours of `j`, given the angle `theta0` of neighbour
/// number `i0`.
fn neighbor_angles(p: &PatternProblem, r: &[f64], j: usize, i0: usize, theta0: f64) -> Vec<f64> {
    let node = p.node(j);
    let nb = &node.neighbors;
    let d = nb.len();
    let half = |k: usize| (r[k] / r[j]).atan();
    let mut ang = vec![0.0; d];
    ang[i0] = theta0;
    let forward = if node.cycle { d - 1 } else { d - 1 - i0 };
    for s in 0..forward {
        let (a, b) = ((i0 + s) % d, (i0 + s + 1) % d);
        ang[b] = ang[a] + half(nb[a]) + half(nb[b]);
    }
    if !node.cycle {
        for i in (0..i0).rev() {
            ang[i] = ang[i + 1] - half(nb[i + 1]) - half(nb[i]);
        }
    }
    ang
}

/// Places circles by breadth-first propagation from node 0, which sits at
/// the origin with its first neighbour on the positive `x` axis.
pub fn layout_with_tolerance(p: &PatternProblem, rho: &[f64], tol: f64) -> Result<PatternLayout, PatternError> {
    let n = p.node_count();
    if rho.len() != n {
        return Err(PatternError::InvalidProblem(format!("{} log-radii for {n} nodes", rho.len())));
    }
    let r: Vec<f64> = rho.iter().map(|x| x.exp()).collect();
    let mut centers: Vec<Option<Point2>> = vec![None; n];
    let mut anchor: Vec<Option<(usize, f64)>> = vec![None; n];
    let mut defect: f64 = 0.0;
    centers[0] = Some(Point2::new(0.0, 0.0));
    if let Some(&k) = p.node(0).neighbors.first() {
        anchor[0] = Some((k, 0.0));
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        let Some((k0, theta0)) = anchor[j] else { continue };
        let cj = centers[j].expect("queued nodes are placed");
        let nb = &p.node(j).neighbors;
        let i0 = nb.iter().position(|&k| k == k0).expect("anchor is a neighbour");
        let ang = neighbor_angles(p, &r, j, i0, theta0);
        for (i, &k) in nb.iter().enumerate() {
            let pos = cj + Point2::from_polar(r[j].hypot(r[k]), ang[i]);
            match centers[k] {
                None => {
                    centers[k] = Some(pos);
                    anchor[k] = Some((j, ang[i] + std::f64::consts::PI));
                    queue.push_back(k);
                }
                Some(ck) => defect = defect.max(ck.distance(pos) / (r[j] + r[k])),
            }
        }
    }
    let centers: Vec<Point2> = centers.into_iter().map(|c| c.expect("connected")).collect();
    if !(defect <= tol) {
        return Err(PatternError::LayoutMismatch(defect));
    }
    let mut orth: f64 = 0.0;
    let mut intersections = Vec::with_capacity(p.edges().len());
    for &(j, k) in p.edges() {
        let d = centers[k] - centers[j];
        let s = r[j] * r[j] + r[k] * r[k];
        orth = orth.max((d.norm_squared() - s).abs() / s);
        let u = d / d.norm();
        let t = (r[k] / r[j]).atan();
        intersections.push(((j, k), [centers[j] + u.rotated(t) * r[j], centers[j] + u.rotated(-t) * r[j]]));
    }
    let adjacent: BTreeSet<(usize, usize)> = p.edges().iter().copied().collect();
    let mut tang: f64 = 0.0;
    for node in p.nodes() {
        let nb = &node.neighbors;
        let d = nb.len();
        let pairs = if node.cycle { d } else { d.saturating_sub(1) };
        for i in 0..pairs {
            let (a, b) = (nb[i], nb[(i + 1) % d]);
            if a == b || adjacent.contains(&(a.min(b), a.max(b))) {
                continue;
            }
            let gap = centers[a].distance(centers[b]) - (r[a] + r[b]);
            tang = tang.max(gap.abs() / (r[a] + r[b]));
        }
    }
    Ok(PatternLayout {
        centers,
        radii: r,
        intersections,
        orthogonality_residual: orth,
        tangency_residual: tang,
        propagation_defect: defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::problem::{grid_index, square_grid, NodeData, PatternNode};

    #[test]
    fn regular_grid_spacing() {
        let p = square_grid(5, 5, false).unwrap();
        let r = 0.7f64;
        let l = layout(&p, &vec![r.ln(); 25]).unwrap();
        let c = |i, j| l.centers[grid_index(5, i, j)];
        assert!((c(1, 0).distance(c(0, 0)) - r * 2f64.sqrt()).abs() < 1e-14);
        assert!((c(3, 4) - c(0, 0) - Point2::new(3.0, 4.0) * (r * 2f64.sqrt())).norm() < 1e-12);
        assert!(l.orthogonality_residual < 1e-13, "{}", l.orthogonality_residual);
        assert!(l.tangency_residual < 1e-14);
    }

    #[test]
    fn single_adjacency() {
        let nodes = vec![
            PatternNode { data: NodeData::Dirichlet(0.0), neighbors: vec![1], cycle: false },
            PatternNode { data: NodeData::Dirichlet(0.5), neighbors: vec![0], cycle: false },
        ];
        let p = PatternProblem::new(nodes).unwrap();
        let l = layout(&p, &[0.0, 0.5]).unwrap();
        let d2 = l.centers[0].distance(l.centers[1]).powi(2);
        assert!((d2 - (1.0 + 1f64.exp())).abs() < 1e-14);
        for q in l.intersections[0].1 {
            assert!((q.distance(l.centers[0]) - 1.0).abs() < 1e-14);
            assert!((q.distance(l.centers[1]) - 0.5f64.exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn inconsistent_radii_reported() {
        let p = square_grid(4, 4, false).unwrap();
        let mut rho = vec![0.0; 16];
        rho[5] = 0.3;
        assert!(matches!(layout(&p, &rho), Err(PatternError::LayoutMismatch(d)) if d > 1e-3));
    }
}

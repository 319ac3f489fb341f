use std::collections::VecDeque;

use super::SurfaceError;
use crate::geom::Point3;
use crate::mesh::QuadGraph;

/// Dual isothermic net together with the largest relative closing defect
/// found around a face.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSurface {
    pub quad: QuadGraph,
    pub closing_defect: f64,
}

/// [`dualize_with_tolerance`] with a closing tolerance of `1e-8`.
pub fn dualize(q: &QuadGraph) -> Result<DualSurface, SurfaceError> {
    dualize_with_tolerance(q, 1e-8)
}

fn dual_edge(q: &QuadGraph, pos: &[Point3], a: usize, b: usize) -> Result<Point3, SurfaceError> {
    let d = pos[b] - pos[a];
    let n2 = d.norm_squared();
    if !(n2 > 0.0) || !n2.is_finite() {
        return Err(SurfaceError::ZeroEdge(a, b));
    }
    let sign = q.label(a, b).expect("labels checked").sign();
    Ok(d * (sign / n2))
}

/// Christoffel dual: every edge `Δf` becomes `±Δf / |Δf|²` with the sign
/// of its label. Positions are integrated breadth-first from the first
/// vertex, which is placed at the origin; vertices without edges stay at
/// the origin. Fails if some face does not close within `tol` (relative to
/// the length of its dual edges).
pub fn dualize_with_tolerance(q: &QuadGraph, tol: f64) -> Result<DualSurface, SurfaceError> {
    let pos = q.require_positions()?;
    if !q.labels_consistent() {
        return Err(SurfaceError::InvalidInput("edge labels are missing or inconsistent".into()));
    }
    let adj = q.adjacency();
    let n = q.vertex_count();
    let mut dual: Vec<Option<Point3>> = vec![None; n];
    let Some(start) = (0..n).find(|&v| !adj[v].is_empty()) else {
        return Err(SurfaceError::InvalidInput("quad-graph has no edges".into()));
    };
    dual[start] = Some(Point3::ZERO);
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        let pa = dual[a].expect("queued vertices are placed");
        for &b in &adj[a] {
            if dual[b].is_none() {
                dual[b] = Some(pa + dual_edge(q, pos, a, b)?);
                queue.push_back(b);
            }
        }
    }
    if (0..n).any(|v| !adj[v].is_empty() && dual[v].is_none()) {
        return Err(SurfaceError::InvalidInput("quad-graph is not connected".into()));
    }
    let mut closing: f64 = 0.0;
    for f in q.faces() {
        let mut sum = Point3::ZERO;
        let mut len = 0.0;
        for k in 0..4 {
            let e = dual_edge(q, pos, f[k], f[(k + 1) % 4])?;
            sum += e;
            len += e.norm();
        }
        closing = closing.max(sum.norm() / len);
    }
    if !(closing <= tol) {
        return Err(SurfaceError::NotClosing(closing));
    }
    let dual = dual.into_iter().map(|p| p.unwrap_or(Point3::ZERO)).collect();
    Ok(DualSurface { quad: q.clone().with_positions(dual)?, closing_defect: closing })
}

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use super::dual::{dualize, DualSurface};
use super::SurfaceError;
use crate::geom::circle::{circle_crossing_angle, circle_sphere_angle};
use crate::geom::fit::fit_plane;
use crate::geom::{Circle3, Point3, Sphere3};
use crate::mesh::{QuadGraph, VertexColor};

/// An S-isothermic surface: spheres on `WhiteS` vertices, circles on
/// `WhiteC` vertices and contact points on black vertices of an
/// S-quad-graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SIsothermicSurface {
    pub quad: QuadGraph,
    pub spheres: BTreeMap<usize, Sphere3>,
    pub circles: BTreeMap<usize, Circle3>,
    pub contacts: BTreeMap<usize, Point3>,
}

/// Invariant defects of an S-isothermic surface. Distances are relative to
/// the local radius, angles are in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SIsothermicReport {
    pub contact_defect: f64,
    pub orthogonality_defect: f64,
    pub sphere_touch_defect: f64,
    pub circle_touch_defect: f64,
}

impl SIsothermicReport {
    pub fn max(&self) -> f64 {
        self.contact_defect
            .max(self.orthogonality_defect)
            .max(self.sphere_touch_defect)
            .max(self.circle_touch_defect)
    }
}

fn used(q: &QuadGraph) -> Vec<bool> {
    q.adjacency().iter().map(|a| !a.is_empty()).collect()
}

impl SIsothermicSurface {
    pub fn new(
        quad: QuadGraph,
        spheres: BTreeMap<usize, Sphere3>,
        circles: BTreeMap<usize, Circle3>,
        contacts: BTreeMap<usize, Point3>,
    ) -> Result<Self, SurfaceError> {
        quad.check_s_coloring()?;
        for (v, u) in used(&quad).into_iter().enumerate() {
            let ok = !u
                || match quad.color(v) {
                    VertexColor::WhiteS => spheres.contains_key(&v),
                    VertexColor::WhiteC => circles.contains_key(&v),
                    _ => contacts.contains_key(&v),
                };
            if !ok {
                return Err(SurfaceError::InvalidInput(format!("vertex {v} lacks its sphere, circle or contact")));
            }
        }
        Ok(SIsothermicSurface { quad, spheres, circles, contacts })
    }

    /// Kite mesh with sphere centres, circle centres and contact points as
    /// vertex positions. Labels of the quad-graph are kept.
    pub fn central_extension(&self) -> Result<QuadGraph, SurfaceError> {
        let pos = (0..self.quad.vertex_count())
            .map(|v| {
                self.spheres
                    .get(&v)
                    .map(|s| s.center)
                    .or_else(|| self.circles.get(&v).map(|c| c.center))
                    .or_else(|| self.contacts.get(&v).copied())
                    .unwrap_or(Point3::ZERO)
            })
            .collect();
        Ok(self.quad.clone().with_positions(pos)?)
    }

    /// Recovers spheres and circles from a kite mesh: radii are mean
    /// distances to the neighbouring contact points, circle planes are fitted
    /// through the adjacent kites.
    pub fn from_central_extension(q: &QuadGraph) -> Result<Self, SurfaceError> {
        q.check_s_coloring()?;
        let pos = q.require_positions()?;
        let adj = q.adjacency();
        let mut spheres = BTreeMap::new();
        let mut circles = BTreeMap::new();
        let mut contacts = BTreeMap::new();
        for (v, nb) in adj.iter().enumerate() {
            if nb.is_empty() {
                continue;
            }
            let p = pos[v];
            let radius = nb.iter().map(|&b| pos[b].distance(p)).sum::<f64>() / nb.len() as f64;
            match q.color(v) {
                VertexColor::WhiteS => {
                    spheres.insert(v, Sphere3::new(p, radius)?);
                }
                VertexColor::WhiteC => {
                    let mut pts = vec![p];
                    pts.extend(nb.iter().map(|&b| pos[b]));
                    let star = q.vertex_star(v)?;
                    pts.extend(star.opposite.iter().map(|&s| pos[s]));
                    let plane = fit_plane(&pts)?;
                    circles.insert(v, Circle3::new(p, radius, plane.normal)?);
                }
                _ => {
                    contacts.insert(v, p);
                }
            }
        }
        SIsothermicSurface::new(q.clone(), spheres, circles, contacts)
    }

    /// Dual S-isothermic surface: the central extension is labelled (unless
    /// it already carries consistent labels), dualized and read back.
    pub fn dual(&self) -> Result<(DualSurface, SIsothermicSurface), SurfaceError> {
        let mut ext = self.central_extension()?;
        if !ext.labels_consistent() {
            ext.assign_labels()?;
        }
        let d = dualize(&ext)?;
        let s = SIsothermicSurface::from_central_extension(&d.quad)?;
        Ok((d, s))
    }

    pub fn check(&self) -> SIsothermicReport {
        let q = &self.quad;
        let mut r = SIsothermicReport::default();
        for (a, b) in q.edges() {
            let (w, k) = if q.color(a).is_white() { (a, b) } else { (b, a) };
            let p = self.contacts[&k];
            let d = match self.spheres.get(&w) {
                Some(s) => s.defect(p).abs() / s.radius,
                None => {
                    let c = &self.circles[&w];
                    c.distance_to(p) / c.radius
                }
            };
            r.contact_defect = r.contact_defect.max(d);
        }
        for f in q.faces() {
            let (c, s) = super::lift::white_pair(q, f);
            for &b in f.iter().filter(|&&v| !q.color(v).is_white()) {
                let a = circle_sphere_angle(&self.circles[&c], &self.spheres[&s], self.contacts[&b]);
                r.orthogonality_defect = r.orthogonality_defect.max((a - FRAC_PI_2).abs());
            }
        }
        for (b, nb) in q.adjacency().iter().enumerate() {
            if q.color(b).is_white() || nb.is_empty() {
                continue;
            }
            let p = self.contacts[&b];
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    if q.color(u) != q.color(w) {
                        continue;
                    }
                    if let (Some(s1), Some(s2)) = (self.spheres.get(&u), self.spheres.get(&w)) {
                        let d = s1.center.distance(s2.center);
                        let gap = (d - (s1.radius + s2.radius)).abs().min((d - (s1.radius - s2.radius).abs()).abs());
                        r.sphere_touch_defect = r.sphere_touch_defect.max(gap / (s1.radius + s2.radius));
                    } else {
                        let a = circle_crossing_angle(&self.circles[&u], &self.circles[&w], p);
                        r.circle_touch_defect = r.circle_touch_defect.max(a);
                    }
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One orthogonal kite in the plane `z = 0`: circle at the origin with
    /// radius 1, sphere of radius 2 centred on the x axis.
    pub(crate) fn single_kite() -> QuadGraph {
        let (r, big) = (1.0f64, 2.0f64);
        let d = r.hypot(big);
        let bx = r * r / d;
        let by = r * big / d;
        let colors = vec![VertexColor::WhiteC, VertexColor::Black, VertexColor::WhiteS, VertexColor::Black];
        let pos = vec![
            Point3::ZERO,
            Point3::new(bx, -by, 0.0),
            Point3::new(d, 0.0, 0.0),
            Point3::new(bx, by, 0.0),
        ];
        QuadGraph::new(colors, vec![[0, 1, 2, 3]]).unwrap().with_positions(pos).unwrap()
    }

    #[test]
    fn kite_roundtrip() {
        let q = single_kite();
        let s = SIsothermicSurface::from_central_extension(&q).unwrap();
        assert!((s.spheres[&2].radius - 2.0).abs() < 1e-14);
        assert!((s.circles[&0].radius - 1.0).abs() < 1e-14);
        let rep = s.check();
        assert!(rep.max() < 1e-12, "{rep:?}");
        let back = s.central_extension().unwrap();
        assert_eq!(back.positions(), q.positions());
    }

    #[test]
    fn skewed_kite_fails_orthogonality() {
        let q = single_kite();
        let mut pos = q.positions().unwrap().to_vec();
        pos[2] = Point3::new(2.0, 0.0, 0.0);
        let q = q.with_positions(pos).unwrap();
        let s = SIsothermicSurface::from_central_extension(&q).unwrap();
        assert!(s.check().orthogonality_defect > 1e-3);
    }
}

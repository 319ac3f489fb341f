use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use super::lift::SpherePattern;
use super::sisothermic::SIsothermicSurface;
use super::SurfaceError;
use crate::geom::fit::{centroid, fit_plane};
use crate::geom::{Circle3, Point3, Sphere3, SphericalCircle};
use crate::mesh::{QuadGraph, VertexColor};

/// A polyhedron with all edges tangent to the unit sphere. Vertices are the
/// apexes of the cones touching the sphere along the sphere-vertex circles,
/// faces carry the circle-vertex circles as incircles.
#[derive(Debug, Clone, PartialEq)]
pub struct KoebePolyhedron {
    /// Sphere vertex of the quad-graph to polyhedron vertex.
    pub apexes: BTreeMap<usize, Point3>,
    /// Circle vertex to the incircle of its face.
    pub incircles: BTreeMap<usize, Circle3>,
    /// Black vertex to the point where the edge touches the sphere.
    pub tangency: BTreeMap<usize, Point3>,
    /// Edges as `(apex, apex, black vertex)`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Circle vertex to the cyclically ordered apexes of its face.
    pub faces: BTreeMap<usize, Vec<usize>>,
}

impl KoebePolyhedron {
    /// Largest of `|dist(0, edge line) − 1|` and the distance between the
    /// foot point and the recorded tangency point.
    pub fn edge_tangency_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for &(a, b, t) in &self.edges {
            let (p, q) = (self.apexes[&a], self.apexes[&b]);
            let u = q - p;
            let s = -p.dot(u) / u.norm_squared();
            let foot = p + u * s;
            d = d.max((foot.norm() - 1.0).abs()).max(foot.distance(self.tangency[&t]));
        }
        d
    }

    pub fn tangency_sphere_defect(&self) -> f64 {
        self.tangency.values().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Plane-fit defect of every face with at least three apexes, including
    /// its incircle centre and tangency points.
    pub fn face_planarity_defect(&self) -> Result<f64, SurfaceError> {
        let mut d: f64 = 0.0;
        for (c, apexes) in &self.faces {
            if apexes.len() < 3 {
                continue;
            }
            let mut pts: Vec<Point3> = apexes.iter().map(|a| self.apexes[a]).collect();
            pts.push(self.incircles[c].center);
            d = d.max(fit_plane(&pts)?.max_defect);
        }
        Ok(d)
    }
}

/// Orthogonal sphere of a circle on the unit sphere: centre `axis / cos α`,
/// radius `tan α` for the cap angle `α`.
fn orthogonal_sphere(v: usize, c: &Circle3) -> Result<Sphere3, SurfaceError> {
    let cap = SphericalCircle::from_circle3(c)?;
    if cap.angle >= FRAC_PI_2 - 1e-9 {
        return Err(SurfaceError::NoOrthogonalSphere(v));
    }
    Ok(Sphere3::new(cap.axis / cap.angle.cos(), cap.angle.tan())?)
}

/// Builds the Koebe polyhedron of a spherical orthogonal pattern and the
/// S-isothermic surface formed by its orthogonal spheres, circles and
/// tangency points.
pub fn koebe_polyhedron(pattern: &SpherePattern) -> Result<(KoebePolyhedron, SIsothermicSurface), SurfaceError> {
    let q = &pattern.quad;
    let adj = q.adjacency();
    let mut spheres = BTreeMap::new();
    let mut circles = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for (&v, c) in &pattern.circles {
        match q.color(v) {
            VertexColor::WhiteS => {
                spheres.insert(v, orthogonal_sphere(v, c)?);
            }
            VertexColor::WhiteC => {
                circles.insert(v, *c);
                faces.insert(v, q.vertex_star(v)?.opposite);
            }
            _ => return Err(SurfaceError::InvalidInput(format!("circle on black vertex {v}"))),
        }
    }
    let mut edges = Vec::new();
    for (&b, _) in &pattern.points {
        let s: Vec<usize> = adj[b].iter().copied().filter(|&w| q.color(w) == VertexColor::WhiteS).collect();
        if s.len() == 2 {
            edges.push((s[0], s[1], b));
        }
    }
    let poly = KoebePolyhedron {
        apexes: spheres.iter().map(|(&v, s)| (v, s.center)).collect(),
        incircles: circles.clone(),
        tangency: pattern.points.clone(),
        edges,
        faces,
    };
    let surf = SIsothermicSurface::new(q.clone(), spheres, circles, pattern.points.clone())?;
    Ok((poly, surf))
}

/// The spherical pattern of a convex polyhedron whose edges already touch
/// the unit sphere: vertices become sphere vertices, faces circle vertices
/// and edges black vertices. Faces must be listed counterclockwise seen
/// from outside.
pub fn pattern_from_tangent_polyhedron(vertices: &[Point3], faces: &[Vec<usize>]) -> Result<SpherePattern, SurfaceError> {
    let nv = vertices.len();
    let nf = faces.len();
    let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in faces {
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            edge_ids.entry((a.min(b), a.max(b))).or_insert(0);
        }
    }
    for (i, id) in edge_ids.values_mut().enumerate() {
        *id = nv + nf + i;
    }
    let e = |a: usize, b: usize| edge_ids[&(a.min(b), a.max(b))];
    let mut colors = vec![VertexColor::WhiteS; nv];
    colors.extend(std::iter::repeat(VertexColor::WhiteC).take(nf));
    colors.extend(std::iter::repeat(VertexColor::Black).take(edge_ids.len()));
    let mut kites = Vec::new();
    for (fi, f) in faces.iter().enumerate() {
        let k = f.len();
        for i in 0..k {
            let (prev, v, next) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
            kites.push([v, e(v, next), nv + fi, e(prev, v)]);
        }
    }
    let quad = QuadGraph::new(colors, kites)?;
    let mut circles = BTreeMap::new();
    for (v, &p) in vertices.iter().enumerate() {
        let d = p.norm();
        if !(d > 1.0) {
            return Err(SurfaceError::InvalidInput(format!("vertex {v} is not outside the unit sphere")));
        }
        let axis = p / d;
        circles.insert(v, Circle3::new(axis / d, (1.0 - 1.0 / (d * d)).sqrt(), axis)?);
    }
    for (fi, f) in faces.iter().enumerate() {
        let pts: Vec<Point3> = f.iter().map(|&v| vertices[v]).collect();
        let plane = fit_plane(&pts)?;
        let mut n = plane.normal;
        if n.dot(centroid(&pts)) < 0.0 {
            n = -n;
        }
        let h = n.dot(plane.point);
        if !(h > 0.0 && h < 1.0) {
            return Err(SurfaceError::InvalidInput(format!("face {fi} does not cut the unit sphere")));
        }
        circles.insert(nv + fi, Circle3::new(n * h, (1.0 - h * h).sqrt(), n)?);
    }
    let mut points = BTreeMap::new();
    for (&(a, b), &id) in &edge_ids {
        let (p, u) = (vertices[a], vertices[b] - vertices[a]);
        points.insert(id, p + u * (-p.dot(u) / u.norm_squared()));
    }
    SpherePattern::new(quad, circles, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generators::octahedron;

    /// Regular octahedron scaled so its edges touch the unit sphere.
    fn tangent_octahedron() -> (Vec<Point3>, Vec<Vec<usize>>) {
        let s = octahedron();
        let v = s.positions().unwrap().iter().map(|&p| p * 2f64.sqrt()).collect();
        let f = s.faces().iter().map(|f| f.to_vec()).collect();
        (v, f)
    }

    #[test]
    fn octahedron_roundtrip() {
        let (v, f) = tangent_octahedron();
        let pat = pattern_from_tangent_polyhedron(&v, &f).unwrap();
        assert!(pat.incidence_defect() < 1e-14);
        assert!(pat.orthogonality_defect() < 1e-12);
        let (poly, surf) = koebe_polyhedron(&pat).unwrap();
        for (i, &p) in v.iter().enumerate() {
            assert!(poly.apexes[&i].distance(p) < 1e-12);
        }
        assert_eq!(poly.edges.len(), 12);
        assert_eq!(poly.incircles.len(), 8);
        assert!(poly.edge_tangency_defect() < 1e-12);
        assert!(poly.face_planarity_defect().unwrap() < 1e-12);
        assert!(surf.check().max() < 1e-10, "{:?}", surf.check());
    }

    #[test]
    fn great_circle_has_no_sphere() {
        let c = Circle3::new(Point3::ZERO, 1.0, Point3::Z).unwrap();
        assert!(matches!(orthogonal_sphere(7, &c), Err(SurfaceError::NoOrthogonalSphere(7))));
    }
}

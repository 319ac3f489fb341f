use std::collections::BTreeMap;

use super::{MeshError, VertexColor};
use crate::geom::Point3;

/// An oriented triangulated surface. Positions are optional so the same type
/// carries purely combinatorial complexes.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialSurface {
    vertex_count: usize,
    positions: Option<Vec<Point3>>,
    faces: Vec<[usize; 3]>,
    colors: Option<Vec<VertexColor>>,
    /// Undirected edge `(min, max)` to the incident faces.
    edges: BTreeMap<(usize, usize), Vec<usize>>,
}

/// Neighbours of a vertex in the cyclic order induced by face orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexStar {
    pub vertex: usize,
    pub neighbors: Vec<usize>,
    /// `faces[i]` is the face spanned by `vertex, neighbors[i], neighbors[i + 1]`.
    pub faces: Vec<usize>,
    /// `true` for an interior vertex (the neighbours close up into a cycle).
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagnostics {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub euler_characteristic: i64,
    pub boundary_edges: Vec<(usize, usize)>,
    pub nonmanifold_edges: Vec<(usize, usize)>,
    /// Edges traversed in the same direction by both incident faces.
    pub orientation_errors: Vec<(usize, usize)>,
    /// Vertices whose star is not a single cycle or fan.
    pub nonmanifold_vertices: Vec<usize>,
    pub isolated_vertices: Vec<usize>,
}

impl Diagnostics {
    pub fn is_closed_manifold(&self) -> bool {
        self.boundary_edges.is_empty()
            && self.nonmanifold_edges.is_empty()
            && self.orientation_errors.is_empty()
            && self.nonmanifold_vertices.is_empty()
            && self.isolated_vertices.is_empty()
    }

    /// One line per problem, empty when the surface is a valid closed manifold.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.boundary_edges {
            out.push(format!("boundary edge {}-{}", e.0, e.1));
        }
        for e in &self.nonmanifold_edges {
            out.push(format!("non-manifold edge {}-{}", e.0, e.1));
        }
        for e in &self.orientation_errors {
            out.push(format!("inconsistent orientation across edge {}-{}", e.0, e.1));
        }
        for v in &self.nonmanifold_vertices {
            out.push(format!("non-manifold vertex {v}"));
        }
        for v in &self.isolated_vertices {
            out.push(format!("isolated vertex {v}"));
        }
        out
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl SimplicialSurface {
    /// Combinatorial surface without positions.
    pub fn from_faces(vertex_count: usize, faces: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                if v >= vertex_count {
                    return Err(MeshError::IndexOutOfRange { index: v, count: vertex_count });
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(MeshError::RepeatedVertex(fi));
            }
            for k in 0..3 {
                edges.entry(key(f[k], f[(k + 1) % 3])).or_default().push(fi);
            }
        }
        Ok(SimplicialSurface { vertex_count, positions: None, faces, colors: None, edges })
    }

    pub fn new(positions: Vec<Point3>, faces: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        let mut s = Self::from_faces(positions.len(), faces)?;
        s.positions = Some(positions);
        Ok(s)
    }

    pub fn with_positions(mut self, positions: Vec<Point3>) -> Result<Self, MeshError> {
        if positions.len() != self.vertex_count {
            return Err(MeshError::AttributeMismatch {
                what: "positions",
                got: positions.len(),
                expected: self.vertex_count,
            });
        }
        self.positions = Some(positions);
        Ok(self)
    }

    pub fn with_colors(mut self, colors: Vec<VertexColor>) -> Result<Self, MeshError> {
        if colors.len() != self.vertex_count {
            return Err(MeshError::AttributeMismatch {
                what: "colors",
                got: colors.len(),
                expected: self.vertex_count,
            });
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn positions(&self) -> Option<&[Point3]> {
        self.positions.as_deref()
    }

    /// Positions, or an error naming the operation that needs them.
    pub fn require_positions(&self) -> Result<&[Point3], MeshError> {
        self.positions
            .as_deref()
            .ok_or_else(|| MeshError::InvalidSurface("vertex positions required".into()))
    }

    pub fn colors(&self) -> Option<&[VertexColor]> {
        self.colors.as_deref()
    }

    /// Undirected edges `(a, b)` with `a < b`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.keys().copied()
    }

    /// Faces incident to the undirected edge `a b`.
    pub fn edge_faces(&self, a: usize, b: usize) -> &[usize] {
        self.edges.get(&key(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// The vertex of face `f` opposite to the edge `a b`.
    pub fn opposite(&self, f: usize, a: usize, b: usize) -> usize {
        let t = self.faces[f];
        t.into_iter().find(|&v| v != a && v != b).expect("face contains the edge")
    }

    /// For an interior edge with faces on both sides, returns
    /// `(s1, s2, apex_left, apex_right)` where the face `(s1, s2, apex_left)`
    /// is positively oriented.
    pub fn edge_quad(&self, a: usize, b: usize) -> Option<(usize, usize, usize, usize)> {
        let fs = self.edge_faces(a, b);
        if fs.len() != 2 {
            return None;
        }
        let (s1, s2) = key(a, b);
        let f0 = self.faces[fs[0]];
        let forward = (0..3).any(|k| f0[k] == s1 && f0[(k + 1) % 3] == s2);
        let (fl, fr) = if forward { (fs[0], fs[1]) } else { (fs[1], fs[0]) };
        Some((s1, s2, self.opposite(fl, s1, s2), self.opposite(fr, s1, s2)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Cyclically ordered star of `v`.
    pub fn vertex_star(&self, v: usize) -> Result<VertexStar, MeshError> {
        if v >= self.vertex_count {
            return Err(MeshError::UnknownVertex(v));
        }
        // next[b] = c for each face (v, b, c) in cyclic order
        let mut next: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut has_prev: BTreeMap<usize, usize> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for k in 0..3 {
                if f[k] == v {
                    let b = f[(k + 1) % 3];
                    let c = f[(k + 2) % 3];
                    if next.insert(b, (c, fi)).is_some() {
                        return Err(MeshError::InvalidSurface(format!("vertex {v} has a non-manifold star")));
                    }
                    *has_prev.entry(c).or_default() += 1;
                }
            }
        }
        if next.is_empty() {
            return Err(MeshError::InvalidSurface(format!("vertex {v} is isolated")));
        }
        if has_prev.values().any(|&n| n > 1) {
            return Err(MeshError::InvalidSurface(format!("vertex {v} has a non-manifold star")));
        }
        let starts: Vec<usize> = next.keys().copied().filter(|b| !has_prev.contains_key(b)).collect();
        let (start, closed) = match starts.len() {
            0 => (*next.keys().next().expect("nonempty"), true),
            1 => (starts[0], false),
            _ => return Err(MeshError::InvalidSurface(format!("vertex {v} has a non-manifold star"))),
        };
        let mut neighbors = vec![start];
        let mut faces = Vec::new();
        let mut cur = start;
        while let Some(&(c, fi)) = next.get(&cur) {
            faces.push(fi);
            if c == start {
                break;
            }
            neighbors.push(c);
            cur = c;
            if faces.len() > next.len() {
                break;
            }
        }
        if faces.len() != next.len() {
            return Err(MeshError::InvalidSurface(format!("vertex {v} has a non-manifold star")));
        }
        Ok(VertexStar { vertex: v, neighbors, faces, closed })
    }

    pub fn degree(&self, v: usize) -> Result<usize, MeshError> {
        Ok(self.vertex_star(v)?.neighbors.len())
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let mut d = Diagnostics {
            vertex_count: self.vertex_count,
            edge_count: self.edges.len(),
            face_count: self.faces.len(),
            euler_characteristic: self.euler_characteristic(),
            ..Default::default()
        };
        for (&(a, b), fs) in &self.edges {
            match fs.len() {
                1 => d.boundary_edges.push((a, b)),
                2 => {
                    let dir = |f: usize| {
                        let t = self.faces[f];
                        (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b)
                    };
                    if dir(fs[0]) == dir(fs[1]) {
                        d.orientation_errors.push((a, b));
                    }
                }
                _ => d.nonmanifold_edges.push((a, b)),
            }
        }
        let mut used = vec![false; self.vertex_count];
        for f in &self.faces {
            for &v in f {
                used[v] = true;
            }
        }
        for v in 0..self.vertex_count {
            if !used[v] {
                d.isolated_vertices.push(v);
            } else if self.vertex_star(v).is_err() {
                d.nonmanifold_vertices.push(v);
            }
        }
        d
    }

    /// Errors unless the surface is a closed, consistently oriented 2-manifold.
    pub fn require_closed(&self) -> Result<(), MeshError> {
        let d = self.diagnostics();
        if d.is_closed_manifold() {
            Ok(())
        } else {
            Err(MeshError::InvalidSurface(format!(
                "closed surface required: {}",
                d.problems().join("; ")
            )))
        }
    }

    /// 1→4 refinement: each edge gets a new vertex at its midpoint and each
    /// triangle is split into four.
    pub fn refine_1to4(&self) -> Result<SimplicialSurface, MeshError> {
        self.require_closed()?;
        let n = self.vertex_count;
        let mut mid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, &e) in self.edges.keys().enumerate() {
            mid.insert(e, n + i);
        }
        let m = |a: usize, b: usize| mid[&key(a, b)];
        let mut faces = Vec::with_capacity(4 * self.faces.len());
        for &[a, b, c] in &self.faces {
            let (ab, bc, ca) = (m(a, b), m(b, c), m(c, a));
            faces.push([a, ab, ca]);
            faces.push([b, bc, ab]);
            faces.push([c, ca, bc]);
            faces.push([ab, bc, ca]);
        }
        let mut out = SimplicialSurface::from_faces(n + mid.len(), faces)?;
        if let Some(p) = &self.positions {
            let mut q = p.clone();
            for &(a, b) in self.edges.keys() {
                q.push(p[a].lerp(p[b], 0.5));
            }
            out.positions = Some(q);
        }
        Ok(out)
    }

    /// Signed enclosed volume, positive when faces are oriented outward.
    pub fn signed_volume(&self) -> Option<f64> {
        let p = self.positions.as_ref()?;
        let mut vol = 0.0;
        for &[a, b, c] in &self.faces {
            vol += p[a].dot(p[b].cross(p[c]));
        }
        Some(vol / 6.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> SimplicialSurface {
        SimplicialSurface::from_faces(4, vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]]).unwrap()
    }

    #[test]
    fn tetrahedron_is_valid() {
        let t = tetra();
        let d = t.diagnostics();
        assert!(d.is_closed_manifold(), "{:?}", d.problems());
        assert_eq!(d.euler_characteristic, 2);
        assert_eq!(t.degree(0).unwrap(), 3);
    }

    #[test]
    fn missing_face_reports_boundary() {
        let t = SimplicialSurface::from_faces(4, vec![[0, 2, 1], [0, 1, 3], [1, 2, 3]]).unwrap();
        let d = t.diagnostics();
        assert_eq!(d.boundary_edges.len(), 3);
        assert!(!d.is_closed_manifold());
    }

    #[test]
    fn flipped_face_located() {
        let t = SimplicialSurface::from_faces(4, vec![[0, 1, 2], [0, 1, 3], [1, 2, 3], [0, 3, 2]]).unwrap();
        let d = t.diagnostics();
        assert!(d.orientation_errors.contains(&(0, 1)));
        assert!(d.orientation_errors.contains(&(1, 2)));
        assert!(d.orientation_errors.contains(&(0, 2)));
    }

    #[test]
    fn refine_counts() {
        let r = tetra().refine_1to4().unwrap();
        assert_eq!(r.face_count(), 16);
        assert_eq!(r.vertex_count(), 10);
        assert_eq!(r.edge_count(), 2 * 6 + 3 * 4);
        assert_eq!(r.euler_characteristic(), 2);
        assert!(r.diagnostics().is_closed_manifold());
    }

    #[test]
    fn star_order_follows_orientation() {
        let t = tetra();
        let s = t.vertex_star(0).unwrap();
        assert!(s.closed);
        for (i, &f) in s.faces.iter().enumerate() {
            let b = s.neighbors[i];
            let c = s.neighbors[(i + 1) % s.neighbors.len()];
            let tri = t.faces()[f];
            let k = tri.iter().position(|&x| x == 0).unwrap();
            assert_eq!((tri[(k + 1) % 3], tri[(k + 2) % 3]), (b, c));
        }
        assert!(matches!(t.vertex_star(9), Err(MeshError::UnknownVertex(9))));
    }
}

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{MeshError, VertexColor};
use crate::geom::Point3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    Plus,
    Minus,
}

impl EdgeLabel {
    pub fn sign(self) -> f64 {
        match self {
            EdgeLabel::Plus => 1.0,
            EdgeLabel::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            EdgeLabel::Plus => EdgeLabel::Minus,
            EdgeLabel::Minus => EdgeLabel::Plus,
        }
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Cyclically ordered star of a quad-graph vertex: face `faces[i]` reads
/// `(vertex, ring[i], opposite[i], ring[i + 1])`, indices taken cyclically
/// when `closed`. A fan has one more ring vertex than faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadStar {
    pub vertex: usize,
    pub faces: Vec<usize>,
    pub ring: Vec<usize>,
    pub opposite: Vec<usize>,
    pub closed: bool,
}

/// A quad-graph: a cell complex whose faces are quadrilaterals, with a
/// bipartite black/white vertex coloring.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadGraph {
    colors: Vec<VertexColor>,
    faces: Vec<[usize; 4]>,
    positions: Option<Vec<Point3>>,
    labels: BTreeMap<(usize, usize), EdgeLabel>,
    edges: BTreeMap<(usize, usize), Vec<usize>>,
}

impl QuadGraph {
    /// Checks indices and that every edge joins a black and a white vertex.
    pub fn new(colors: Vec<VertexColor>, faces: Vec<[usize; 4]>) -> Result<Self, MeshError> {
        let n = colors.len();
        let mut edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                if v >= n {
                    return Err(MeshError::IndexOutOfRange { index: v, count: n });
                }
            }
            let distinct: BTreeSet<usize> = f.iter().copied().collect();
            if distinct.len() != 4 {
                return Err(MeshError::RepeatedVertex(fi));
            }
            for k in 0..4 {
                let (a, b) = (f[k], f[(k + 1) % 4]);
                if colors[a].is_white() == colors[b].is_white() {
                    return Err(MeshError::InvalidQuadGraph(format!(
                        "edge {a}-{b} of face {fi} joins two vertices of the same color"
                    )));
                }
                edges.entry(key(a, b)).or_default().push(fi);
            }
        }
        for (&(a, b), fs) in &edges {
            if fs.len() > 2 {
                return Err(MeshError::InvalidQuadGraph(format!("edge {a}-{b} lies in {} faces", fs.len())));
            }
        }
        Ok(QuadGraph { colors, faces, positions: None, labels: BTreeMap::new(), edges })
    }

    pub fn with_positions(mut self, positions: Vec<Point3>) -> Result<Self, MeshError> {
        if positions.len() != self.colors.len() {
            return Err(MeshError::AttributeMismatch {
                what: "positions",
                got: positions.len(),
                expected: self.colors.len(),
            });
        }
        self.positions = Some(positions);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> &[VertexColor] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> VertexColor {
        self.colors[v]
    }

    pub fn faces(&self) -> &[[usize; 4]] {
        &self.faces
    }

    pub fn positions(&self) -> Option<&[Point3]> {
        self.positions.as_deref()
    }

    pub fn require_positions(&self) -> Result<&[Point3], MeshError> {
        self.positions
            .as_deref()
            .ok_or_else(|| MeshError::InvalidQuadGraph("vertex positions required".into()))
    }

    pub fn set_positions(&mut self, positions: Vec<Point3>) -> Result<(), MeshError> {
        *self = std::mem::replace(self, QuadGraph::empty()).with_positions(positions)?;
        Ok(())
    }

    fn empty() -> Self {
        QuadGraph {
            colors: Vec::new(),
            faces: Vec::new(),
            positions: None,
            labels: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge_faces(&self, a: usize, b: usize) -> &[usize] {
        self.edges.get(&key(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_boundary_edge(&self, a: usize, b: usize) -> bool {
        self.edge_faces(a, b).len() == 1
    }

    /// Neighbours of every vertex, sorted by index.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.colors.len()];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Vertices lying on a boundary edge.
    pub fn boundary_vertices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (&(a, b), fs) in &self.edges {
            if fs.len() == 1 {
                out.insert(a);
                out.insert(b);
            }
        }
        out
    }

    pub fn label(&self, a: usize, b: usize) -> Option<EdgeLabel> {
        self.labels.get(&key(a, b)).copied()
    }

    pub fn labels(&self) -> &BTreeMap<(usize, usize), EdgeLabel> {
        &self.labels
    }

    pub fn set_label(&mut self, a: usize, b: usize, l: EdgeLabel) -> Result<(), MeshError> {
        if !self.edges.contains_key(&key(a, b)) {
            return Err(MeshError::InvalidQuadGraph(format!("no edge {a}-{b}")));
        }
        self.labels.insert(key(a, b), l);
        Ok(())
    }

    /// Checks that every face has one `WhiteC`, one `WhiteS` and two black
    /// vertices.
    pub fn check_s_coloring(&self) -> Result<(), MeshError> {
        for (fi, f) in self.faces.iter().enumerate() {
            let mut c = 0;
            let mut s = 0;
            for &v in f {
                match self.colors[v] {
                    VertexColor::WhiteC => c += 1,
                    VertexColor::WhiteS => s += 1,
                    _ => {}
                }
            }
            if c != 1 || s != 1 {
                return Err(MeshError::InvalidQuadGraph(format!(
                    "face {fi} needs one circle and one sphere vertex"
                )));
            }
        }
        Ok(())
    }

    /// Assigns `±` labels so that opposite edges of every face agree and
    /// adjacent edges differ. Interior vertices of odd degree are rejected
    /// up front; any remaining inconsistency is reported as an obstruction.
    pub fn assign_labels(&mut self) -> Result<(), MeshError> {
        let boundary = self.boundary_vertices();
        for (v, nb) in self.adjacency().iter().enumerate() {
            if !nb.is_empty() && !boundary.contains(&v) && nb.len() % 2 == 1 {
                return Err(MeshError::LabelObstruction(format!(
                    "interior vertex {v} has odd degree {}",
                    nb.len()
                )));
            }
        }
        // constraint graph on edges: (other edge, flips?)
        let ids: BTreeMap<(usize, usize), usize> =
            self.edges.keys().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut cons: Vec<Vec<(usize, bool)>> = vec![Vec::new(); ids.len()];
        for f in &self.faces {
            let e: Vec<usize> = (0..4).map(|k| ids[&key(f[k], f[(k + 1) % 4])]).collect();
            for k in 0..4 {
                cons[e[k]].push((e[(k + 1) % 4], true));
                cons[e[k]].push((e[(k + 2) % 4], false));
            }
        }
        let keys: Vec<(usize, usize)> = self.edges.keys().copied().collect();
        let mut lab: Vec<Option<EdgeLabel>> = vec![None; ids.len()];
        for start in 0..ids.len() {
            if lab[start].is_some() {
                continue;
            }
            lab[start] = Some(EdgeLabel::Plus);
            let mut q = VecDeque::from([start]);
            while let Some(e) = q.pop_front() {
                let le = lab[e].expect("labelled");
                for &(o, flip) in &cons[e] {
                    let want = if flip { le.flip() } else { le };
                    match lab[o] {
                        None => {
                            lab[o] = Some(want);
                            q.push_back(o);
                        }
                        Some(l) if l != want => {
                            let (a, b) = keys[o];
                            return Err(MeshError::LabelObstruction(format!("conflict at edge {a}-{b}")));
                        }
                        _ => {}
                    }
                }
            }
        }
        self.labels = keys.into_iter().zip(lab.into_iter().map(|l| l.expect("all set"))).collect();
        Ok(())
    }

    /// Checks the label rules on every face; labels must be complete.
    pub fn labels_consistent(&self) -> bool {
        self.faces.iter().all(|f| {
            let l: Option<Vec<EdgeLabel>> = (0..4).map(|k| self.label(f[k], f[(k + 1) % 4])).collect();
            match l {
                Some(l) => l[0] == l[2] && l[1] == l[3] && l[0] != l[1],
                None => false,
            }
        })
    }

    /// Faces around `v` in cyclic order. A face `(v, a, o, b)` read from `v`
    /// is followed by the face that continues from `b`; fans start at the
    /// boundary edge that has no predecessor.
    pub fn vertex_star(&self, v: usize) -> Result<QuadStar, MeshError> {
        if v >= self.colors.len() {
            return Err(MeshError::IndexOutOfRange { index: v, count: self.colors.len() });
        }
        let mut next: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
        for (fi, f) in self.faces.iter().enumerate() {
            if let Some(k) = f.iter().position(|&x| x == v) {
                let (a, o, b) = (f[(k + 1) % 4], f[(k + 2) % 4], f[(k + 3) % 4]);
                if next.insert(a, (fi, o, b)).is_some() {
                    return Err(MeshError::InvalidQuadGraph(format!("star of vertex {v} is not a disk")));
                }
            }
        }
        if next.is_empty() {
            return Ok(QuadStar { vertex: v, faces: vec![], ring: vec![], opposite: vec![], closed: false });
        }
        let targets: BTreeSet<usize> = next.values().map(|&(_, _, b)| b).collect();
        let starts: Vec<usize> = next.keys().copied().filter(|a| !targets.contains(a)).collect();
        let closed = starts.is_empty();
        if starts.len() > 1 {
            return Err(MeshError::InvalidQuadGraph(format!("star of vertex {v} is not a disk")));
        }
        let start = if closed { *next.keys().next().expect("non-empty") } else { starts[0] };
        let (mut faces, mut ring, mut opposite) = (Vec::new(), vec![start], Vec::new());
        let mut a = start;
        while let Some(&(fi, o, b)) = next.get(&a) {
            faces.push(fi);
            opposite.push(o);
            if b == start {
                break;
            }
            ring.push(b);
            a = b;
            if faces.len() > next.len() {
                return Err(MeshError::InvalidQuadGraph(format!("star of vertex {v} is not a disk")));
            }
        }
        if faces.len() != next.len() {
            return Err(MeshError::InvalidQuadGraph(format!("star of vertex {v} is not a disk")));
        }
        Ok(QuadStar { vertex: v, faces, ring, opposite, closed })
    }

    /// Euler characteristic `V − E + F` of the cell complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.colors.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexColor::*;

    /// A 2×2 block of quads around a central white vertex.
    fn block() -> QuadGraph {
        // 0 1 2 / 3 4 5 / 6 7 8 with checkerboard coloring
        let colors = vec![WhiteC, Black, WhiteS, Black, WhiteC, Black, WhiteS, Black, WhiteC];
        let faces = vec![[0, 1, 4, 3], [1, 2, 5, 4], [3, 4, 7, 6], [4, 5, 8, 7]];
        QuadGraph::new(colors, faces).unwrap()
    }

    #[test]
    fn labels_from_block() {
        let mut q = block();
        q.assign_labels().unwrap();
        assert!(q.labels_consistent());
        assert_eq!(q.label(0, 1), q.label(3, 4));
        assert_ne!(q.label(0, 1), q.label(0, 3));
    }

    #[test]
    fn star_orders() {
        let q = block();
        let s = q.vertex_star(4).unwrap();
        assert!(s.closed);
        assert_eq!(s.faces.len(), 4);
        assert_eq!(s.ring.len(), 4);
        for (i, &fi) in s.faces.iter().enumerate() {
            let f = q.faces()[fi];
            let k = f.iter().position(|&x| x == 4).unwrap();
            assert_eq!(f[(k + 1) % 4], s.ring[i]);
            assert_eq!(f[(k + 2) % 4], s.opposite[i]);
            assert_eq!(f[(k + 3) % 4], s.ring[(i + 1) % 4]);
        }
        let c = q.vertex_star(1).unwrap();
        assert!(!c.closed);
        assert_eq!(c.ring, vec![2, 4, 0]);
        assert_eq!(c.opposite, vec![5, 3]);
    }

    #[test]
    fn same_color_edge_rejected() {
        let r = QuadGraph::new(vec![Black, Black, WhiteC, Black], vec![[0, 1, 2, 3]]);
        assert!(matches!(r, Err(MeshError::InvalidQuadGraph(_))));
    }

    #[test]
    fn odd_interior_degree_rejected() {
        // three quads around a central black vertex 0
        let colors = vec![Black, WhiteC, Black, WhiteS, Black, WhiteC, Black];
        let faces = vec![[0, 1, 2, 3], [0, 3, 4, 5], [0, 5, 6, 1]];
        let mut q = QuadGraph::new(colors, faces).unwrap();
        assert!(matches!(q.assign_labels(), Err(MeshError::LabelObstruction(_))));
    }
}

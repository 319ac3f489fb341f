use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::{FRAC_PI_2, PI};

use super::PatternError;

/// Boundary data at a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeData {
    /// Free log-radius with prescribed angle sum `Φ`.
    Neumann(f64),
    /// Fixed log-radius `ρ`.
    Dirichlet(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternNode {
    pub data: NodeData,
    /// Neighbours in counterclockwise order.
    pub neighbors: Vec<usize>,
    /// `true` if the neighbours close up around the circle, `false` if they
    /// form a fan with the gap after the last one.
    pub cycle: bool,
}

/// An orthogonal circle pattern problem: circles are nodes, adjacent circles
/// intersect orthogonally.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternProblem {
    nodes: Vec<PatternNode>,
    edges: Vec<(usize, usize)>,
}

impl PatternProblem {
    /// Checks symmetry of the adjacency, connectivity and data finiteness.
    pub fn new(nodes: Vec<PatternNode>) -> Result<Self, PatternError> {
        let n = nodes.len();
        if n == 0 {
            return Err(PatternError::InvalidProblem("no nodes".into()));
        }
        let mut set = BTreeSet::new();
        for (j, node) in nodes.iter().enumerate() {
            let v = match node.data {
                NodeData::Neumann(v) | NodeData::Dirichlet(v) => v,
            };
            if !v.is_finite() {
                return Err(PatternError::InvalidProblem(format!("node {j} has non-finite data")));
            }
            let mut seen = BTreeSet::new();
            for &k in &node.neighbors {
                if k >= n || k == j {
                    return Err(PatternError::InvalidProblem(format!("node {j} has invalid neighbour {k}")));
                }
                if !seen.insert(k) {
                    return Err(PatternError::InvalidProblem(format!("node {j} lists neighbour {k} twice")));
                }
                if !nodes[k].neighbors.contains(&j) {
                    return Err(PatternError::InvalidProblem(format!("adjacency {j}-{k} is not symmetric")));
                }
                set.insert((j.min(k), j.max(k)));
            }
        }
        let p = PatternProblem { nodes, edges: set.into_iter().collect() };
        if p.components() > 1 {
            return Err(PatternError::Disconnected);
        }
        Ok(p)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[PatternNode] {
        &self.nodes
    }

    pub fn node(&self, j: usize) -> &PatternNode {
        &self.nodes[j]
    }

    /// Unordered adjacencies `(j, k)`, `j < k`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_free(&self, j: usize) -> bool {
        matches!(self.nodes[j].data, NodeData::Neumann(_))
    }

    pub fn has_dirichlet(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n.data, NodeData::Dirichlet(_)))
    }

    fn components(&self) -> usize {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(j) = q.pop_front() {
                for &k in &self.nodes[j].neighbors {
                    if !seen[k] {
                        seen[k] = true;
                        q.push_back(k);
                    }
                }
            }
        }
        count
    }

    /// `ΣΦ − π|E|` for a pure Neumann problem; a critical point exists only
    /// when this vanishes.
    pub fn neumann_imbalance(&self) -> f64 {
        let mut s = -PI * self.edges.len() as f64;
        for n in &self.nodes {
            if let NodeData::Neumann(phi) = n.data {
                s += phi;
            }
        }
        s
    }

    /// Initial log-radii: Dirichlet values, zero elsewhere.
    pub fn initial_rho(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .map(|n| match n.data {
                NodeData::Dirichlet(r) => r,
                NodeData::Neumann(_) => 0.0,
            })
            .collect()
    }
}

/// Index of grid node `(i, j)` in an `n × m` grid (row-major in `j`).
pub fn grid_index(m: usize, i: usize, j: usize) -> usize {
    j * m + i
}

/// Counterclockwise neighbours of grid node `(i, j)`: east, north, west,
/// south, restricted to the grid and rotated so a fan starts after its gap.
pub fn grid_neighbors(m: usize, n: usize, i: usize, j: usize) -> (Vec<usize>, bool) {
    let dirs: [(isize, isize); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let inside: Vec<Option<usize>> = dirs
        .iter()
        .map(|&(di, dj)| {
            let (a, b) = (i as isize + di, j as isize + dj);
            (a >= 0 && b >= 0 && (a as usize) < m && (b as usize) < n)
                .then(|| grid_index(m, a as usize, b as usize))
        })
        .collect();
    if inside.iter().all(Option::is_some) {
        return (inside.into_iter().flatten().collect(), true);
    }
    let gap_end = (0..4)
        .find(|&d| inside[d].is_some() && inside[(d + 3) % 4].is_none())
        .unwrap_or(0);
    let order = (0..4).map(|s| inside[(gap_end + s) % 4]).take_while(Option::is_some).flatten();
    (order.collect(), false)
}

/// Square grid of `m × n` circles whose regular solution has equal radii:
/// interior `Φ = 2π`, edge nodes `3π/2`, corners `π`. With `dirichlet`
/// the boundary nodes are instead fixed at `ρ = 0`.
pub fn square_grid(m: usize, n: usize, dirichlet: bool) -> Result<PatternProblem, PatternError> {
    if m < 2 || n < 2 {
        return Err(PatternError::InvalidProblem("grid needs at least 2 × 2 nodes".into()));
    }
    let mut nodes = Vec::with_capacity(m * n);
    for j in 0..n {
        for i in 0..m {
            let (neighbors, cycle) = grid_neighbors(m, n, i, j);
            let data = if dirichlet && !cycle {
                NodeData::Dirichlet(0.0)
            } else {
                NodeData::Neumann(FRAC_PI_2 * neighbors.len() as f64)
            };
            nodes.push(PatternNode { data, neighbors, cycle });
        }
    }
    PatternProblem::new(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_balanced() {
        let p = square_grid(5, 4, false).unwrap();
        assert!(p.neumann_imbalance().abs() < 1e-12);
        assert_eq!(p.edges().len(), 4 * 4 + 5 * 3);
    }

    #[test]
    fn corner_fan_order() {
        // south-west corner: east then north
        let (nb, cycle) = grid_neighbors(3, 3, 0, 0);
        assert!(!cycle);
        assert_eq!(nb, vec![1, 3]);
        // east edge: north, west, south
        let (nb, _) = grid_neighbors(3, 3, 2, 1);
        assert_eq!(nb, vec![8, 4, 2]);
    }

    #[test]
    fn asymmetric_adjacency_rejected() {
        let nodes = vec![
            PatternNode { data: NodeData::Neumann(1.0), neighbors: vec![1], cycle: false },
            PatternNode { data: NodeData::Neumann(1.0), neighbors: vec![], cycle: false },
        ];
        assert!(matches!(PatternProblem::new(nodes), Err(PatternError::InvalidProblem(_))));
    }

    #[test]
    fn disconnected_rejected() {
        let nodes = vec![
            PatternNode { data: NodeData::Dirichlet(0.0), neighbors: vec![1], cycle: false },
            PatternNode { data: NodeData::Neumann(1.0), neighbors: vec![0], cycle: false },
            PatternNode { data: NodeData::Neumann(1.0), neighbors: vec![], cycle: false },
        ];
        assert_eq!(PatternProblem::new(nodes), Err(PatternError::Disconnected));
    }
}

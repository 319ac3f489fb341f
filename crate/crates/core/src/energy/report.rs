//! Energy report and its `ddg-energy` text form:
//!
//! ```text
//! format ddg-energy 1
//! total W
//! vertices N       (N lines "v W(v)")
//! edges M          (M lines "a b β")
//! end
//! ```

use std::fmt::Write as _;

use crate::geom::sum::compensated_sum;
use crate::mesh::io::{err_at, parse_f64, parse_usize, Parser};
use crate::mesh::MeshError;

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    /// `W(S) = Σ_e β(e) − π|V|`.
    pub total: f64,
    /// `W(v)` indexed by vertex.
    pub per_vertex: Vec<f64>,
    /// `β(e)` for each undirected edge `(a, b)`, `a < b`.
    pub per_edge: Vec<((usize, usize), f64)>,
}

impl EnergyReport {
    /// Largest discrepancy among the three ways of computing the total.
    pub fn consistency_defect(&self) -> f64 {
        let half = 0.5 * compensated_sum(self.per_vertex.iter().copied());
        let edges = compensated_sum(
            self.per_edge
                .iter()
                .map(|e| e.1)
                .chain(std::iter::repeat_n(-std::f64::consts::PI, self.per_vertex.len())),
        );
        (self.total - half).abs().max((self.total - edges).abs())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("format ddg-energy 1\n");
        let _ = writeln!(s, "total {:e}", self.total);
        let _ = writeln!(s, "vertices {}", self.per_vertex.len());
        for (v, w) in self.per_vertex.iter().enumerate() {
            let _ = writeln!(s, "{v} {w:e}");
        }
        let _ = writeln!(s, "edges {}", self.per_edge.len());
        for &((a, b), beta) in &self.per_edge {
            let _ = writeln!(s, "{a} {b} {beta:e}");
        }
        s.push_str("end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self, MeshError> {
        let mut p = Parser::new(text);
        p.expect_format("ddg-energy")?;
        let total = parse_f64(p.header("total")?)?;
        let n = parse_usize(p.header("vertices")?)?;
        let mut per_vertex = Vec::with_capacity(n);
        for i in 0..n {
            let t = p.next_line("a vertex entry")?;
            if t.len() != 2 || parse_usize(t[0])? != i {
                return Err(err_at(t[0].line, t[0].column, format!("expected entry for vertex {i}")));
            }
            per_vertex.push(parse_f64(t[1])?);
        }
        let m = parse_usize(p.header("edges")?)?;
        let mut per_edge = Vec::with_capacity(m);
        for _ in 0..m {
            let t = p.next_line("an edge entry")?;
            if t.len() != 3 {
                return Err(err_at(t[0].line, t[0].column, "edge entry needs `a b beta`"));
            }
            per_edge.push(((parse_usize(t[0])?, parse_usize(t[1])?), parse_f64(t[2])?));
        }
        p.expect_end()?;
        Ok(EnergyReport { total, per_vertex, per_edge })
    }
}

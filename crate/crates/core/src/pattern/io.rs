//! Text forms of pattern problems, solutions and layouts, plus SVG export.
//!
//! ```text
//! format ddg-pattern 1
//! nodes N
//! node i neumann|dirichlet value cycle|fan k1 k2 ...   (N lines, i = 0..N)
//! end
//!
//! format ddg-solution 1
//! residual r
//! iterations n
//! rho N                       (N lines "i ρ")
//! end
//!
//! format ddg-layout 1
//! circles N                   (N lines "i cx cy r")
//! intersections M             (M lines "j k x1 y1 x2 y2")
//! end
//! ```

use std::fmt::Write as _;

use super::problem::{NodeData, PatternNode, PatternProblem};
use super::{PatternError, PatternLayout, PatternSolution};
use crate::geom::Point2;
use crate::mesh::io::{err_at, parse_f64, parse_usize, Parser};

pub fn problem_to_text(p: &PatternProblem) -> String {
    let mut s = String::from("format ddg-pattern 1\n");
    let _ = writeln!(s, "nodes {}", p.node_count());
    for (i, n) in p.nodes().iter().enumerate() {
        let (kind, v) = match n.data {
            NodeData::Neumann(v) => ("neumann", v),
            NodeData::Dirichlet(v) => ("dirichlet", v),
        };
        let order = if n.cycle { "cycle" } else { "fan" };
        let _ = write!(s, "node {i} {kind} {v:e} {order}");
        for k in &n.neighbors {
            let _ = write!(s, " {k}");
        }
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

pub fn parse_problem(text: &str) -> Result<PatternProblem, PatternError> {
    let mut p = Parser::new(text);
    p.expect_format("ddg-pattern")?;
    let n = parse_usize(p.header("nodes")?)?;
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let t = p.next_line("a node line")?;
        if t.len() < 5 || t[0].text != "node" {
            return Err(err_at(t[0].line, t[0].column, "expected `node i kind value order neighbours...`").into());
        }
        if parse_usize(t[1])? != i {
            return Err(err_at(t[1].line, t[1].column, format!("expected node {i}")).into());
        }
        let v = parse_f64(t[3])?;
        let data = match t[2].text {
            "neumann" => NodeData::Neumann(v),
            "dirichlet" => NodeData::Dirichlet(v),
            other => return Err(err_at(t[2].line, t[2].column, format!("unknown node kind `{other}`")).into()),
        };
        let cycle = match t[4].text {
            "cycle" => true,
            "fan" => false,
            other => return Err(err_at(t[4].line, t[4].column, format!("unknown order `{other}`")).into()),
        };
        let neighbors = t[5..].iter().map(|&x| parse_usize(x)).collect::<Result<Vec<_>, _>>()?;
        nodes.push(PatternNode { data, neighbors, cycle });
    }
    p.expect_end()?;
    PatternProblem::new(nodes)
}

pub fn solution_to_text(s: &PatternSolution) -> String {
    let mut out = String::from("format ddg-solution 1\n");
    let _ = writeln!(out, "residual {:e}", s.residual);
    let _ = writeln!(out, "iterations {}", s.iterations);
    let _ = writeln!(out, "rho {}", s.rho.len());
    for (i, r) in s.rho.iter().enumerate() {
        let _ = writeln!(out, "{i} {r:e}");
    }
    out.push_str("end\n");
    out
}

pub fn layout_to_text(l: &PatternLayout) -> String {
    let mut s = String::from("format ddg-layout 1\n");
    let _ = writeln!(s, "circles {}", l.centers.len());
    for (i, (c, r)) in l.centers.iter().zip(&l.radii).enumerate() {
        let _ = writeln!(s, "{i} {:e} {:e} {r:e}", c.x, c.y);
    }
    let _ = writeln!(s, "intersections {}", l.intersections.len());
    for &((j, k), [a, b]) in &l.intersections {
        let _ = writeln!(s, "{j} {k} {:e} {:e} {:e} {:e}", a.x, a.y, b.x, b.y);
    }
    s.push_str("end\n");
    s
}

/// Circles and intersection points read back from a layout document.
pub type LayoutData = (Vec<(Point2, f64)>, Vec<((usize, usize), [Point2; 2])>);

pub fn parse_layout(text: &str) -> Result<LayoutData, PatternError> {
    let mut p = Parser::new(text);
    p.expect_format("ddg-layout")?;
    let n = parse_usize(p.header("circles")?)?;
    let mut circles = Vec::with_capacity(n);
    for _ in 0..n {
        let t = p.next_line("a circle line")?;
        if t.len() != 4 {
            return Err(err_at(t[0].line, t[0].column, "circle line needs `i cx cy r`").into());
        }
        circles.push((Point2::new(parse_f64(t[1])?, parse_f64(t[2])?), parse_f64(t[3])?));
    }
    let m = parse_usize(p.header("intersections")?)?;
    let mut inter = Vec::with_capacity(m);
    for _ in 0..m {
        let t = p.next_line("an intersection line")?;
        if t.len() != 6 {
            return Err(err_at(t[0].line, t[0].column, "intersection line needs `j k x1 y1 x2 y2`").into());
        }
        let a = Point2::new(parse_f64(t[2])?, parse_f64(t[3])?);
        let b = Point2::new(parse_f64(t[4])?, parse_f64(t[5])?);
        inter.push(((parse_usize(t[0])?, parse_usize(t[1])?), [a, b]));
    }
    p.expect_end()?;
    Ok((circles, inter))
}

/// SVG drawing with one `<circle>` per pattern circle and small square
/// `<rect>` markers at the intersection points. The `y` axis points up.
pub fn layout_to_svg(l: &PatternLayout) -> String {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (c, &r) in l.centers.iter().zip(&l.radii) {
        lo = Point2::new(lo.x.min(c.x - r), lo.y.min(c.y - r));
        hi = Point2::new(hi.x.max(c.x + r), hi.y.max(c.y + r));
    }
    let size = (hi.x - lo.x).max(hi.y - lo.y).max(1e-300);
    let pad = 0.02 * size;
    let stroke = 0.002 * size;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:e} {:e} {:e} {:e}">"#,
        lo.x - pad,
        -hi.y - pad,
        hi.x - lo.x + 2.0 * pad,
        hi.y - lo.y + 2.0 * pad
    );
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="{stroke:e}">"#);
    for (c, r) in l.centers.iter().zip(&l.radii) {
        let _ = writeln!(s, r#"<circle cx="{:e}" cy="{:e}" r="{r:e}"/>"#, c.x, -c.y);
    }
    s.push_str("</g>\n<g fill=\"red\">\n");
    for (_, pts) in &l.intersections {
        for q in pts {
            let _ = writeln!(
                s,
                r#"<rect x="{:e}" y="{:e}" width="{:e}" height="{:e}"/>"#,
                q.x - 1.5 * stroke,
                -q.y - 1.5 * stroke,
                3.0 * stroke,
                3.0 * stroke
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s
}

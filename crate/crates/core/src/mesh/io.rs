//! The `ddg-mesh` text format and OBJ export.
//!
//! ```text
//! format ddg-mesh 1
//! kind tri|quad
//! vertex_count N
//! positions N        (optional; N lines "x y z")
//! faces M            (M lines of 3 or 4 vertex indices)
//! colors N           (optional; N lines, one of b w c s)
//! labels K           (optional; K lines "i j +|-")
//! end
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Floats are written in
//! shortest round-trip form so reading back yields identical bits.

use std::fmt::Write as _;
use std::path::Path;

use super::{EdgeLabel, MeshError, QuadGraph, SimplicialSurface, VertexColor};
use crate::geom::Point3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshKind {
    Tri,
    Quad,
}

/// Parsed form of a mesh document.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshFile {
    pub kind: MeshKind,
    pub vertex_count: usize,
    pub positions: Option<Vec<Point3>>,
    pub faces: Vec<Vec<usize>>,
    pub colors: Option<Vec<VertexColor>>,
    pub labels: Vec<(usize, usize, EdgeLabel)>,
}

impl MeshFile {
    pub fn from_surface(s: &SimplicialSurface) -> Self {
        MeshFile {
            kind: MeshKind::Tri,
            vertex_count: s.vertex_count(),
            positions: s.positions().map(|p| p.to_vec()),
            faces: s.faces().iter().map(|f| f.to_vec()).collect(),
            colors: s.colors().map(|c| c.to_vec()),
            labels: Vec::new(),
        }
    }

    pub fn from_quad_graph(q: &QuadGraph) -> Self {
        MeshFile {
            kind: MeshKind::Quad,
            vertex_count: q.vertex_count(),
            positions: q.positions().map(|p| p.to_vec()),
            faces: q.faces().iter().map(|f| f.to_vec()).collect(),
            colors: Some(q.colors().to_vec()),
            labels: q.labels().iter().map(|(&(a, b), &l)| (a, b, l)).collect(),
        }
    }

    pub fn to_surface(&self) -> Result<SimplicialSurface, MeshError> {
        if self.kind != MeshKind::Tri {
            return Err(MeshError::InvalidSurface("document holds a quad-graph".into()));
        }
        let faces = self.faces.iter().map(|f| [f[0], f[1], f[2]]).collect();
        let mut s = SimplicialSurface::from_faces(self.vertex_count, faces)?;
        if let Some(p) = &self.positions {
            s = s.with_positions(p.clone())?;
        }
        if let Some(c) = &self.colors {
            s = s.with_colors(c.clone())?;
        }
        Ok(s)
    }

    pub fn to_quad_graph(&self) -> Result<QuadGraph, MeshError> {
        if self.kind != MeshKind::Quad {
            return Err(MeshError::InvalidQuadGraph("document holds a triangle mesh".into()));
        }
        let colors = self
            .colors
            .clone()
            .ok_or_else(|| MeshError::InvalidQuadGraph("quad-graph needs a colors block".into()))?;
        let faces = self.faces.iter().map(|f| [f[0], f[1], f[2], f[3]]).collect();
        let mut q = QuadGraph::new(colors, faces)?;
        if let Some(p) = &self.positions {
            q = q.with_positions(p.clone())?;
        }
        for &(a, b, l) in &self.labels {
            q.set_label(a, b, l)?;
        }
        Ok(q)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("format ddg-mesh 1\n");
        let kind = match self.kind {
            MeshKind::Tri => "tri",
            MeshKind::Quad => "quad",
        };
        let _ = writeln!(s, "kind {kind}");
        let _ = writeln!(s, "vertex_count {}", self.vertex_count);
        if let Some(p) = &self.positions {
            let _ = writeln!(s, "positions {}", p.len());
            for q in p {
                let _ = writeln!(s, "{:e} {:e} {:e}", q.x, q.y, q.z);
            }
        }
        let _ = writeln!(s, "faces {}", self.faces.len());
        for f in &self.faces {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        if let Some(c) = &self.colors {
            let _ = writeln!(s, "colors {}", c.len());
            for col in c {
                let _ = writeln!(s, "{}", col.letter());
            }
        }
        if !self.labels.is_empty() {
            let _ = writeln!(s, "labels {}", self.labels.len());
            for &(a, b, l) in &self.labels {
                let sign = if l == EdgeLabel::Plus { '+' } else { '-' };
                let _ = writeln!(s, "{a} {b} {sign}");
            }
        }
        s.push_str("end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self, MeshError> {
        Parser::new(text).document()
    }
}

/// A whitespace token with its 1-based line and column.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tok<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn err_at(line: usize, column: usize, message: impl Into<String>) -> MeshError {
    MeshError::Parse { line, column, message: message.into() }
}

/// Line-oriented tokenizer shared by the text formats.
pub(crate) struct Parser<'a> {
    lines: Vec<(usize, Vec<Tok<'a>>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut toks = Vec::new();
            let mut start = None;
            for (j, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
                if ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        toks.push(Tok { text: &raw[s..j], line: i + 1, column: s + 1 });
                    }
                } else if start.is_none() {
                    start = Some(j);
                }
            }
            lines.push((i + 1, toks));
        }
        Parser { lines, pos: 0, last_line }
    }

    pub fn next_line(&mut self, what: &str) -> Result<&[Tok<'a>], MeshError> {
        match self.lines.get(self.pos) {
            Some((_, toks)) => {
                self.pos += 1;
                Ok(toks)
            }
            None => Err(err_at(self.last_line + 1, 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    pub fn peek_keyword(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|(_, t)| t[0].text)
    }

    /// Reads a line `keyword value` and returns the value token.
    pub fn header(&mut self, keyword: &str) -> Result<Tok<'a>, MeshError> {
        let toks = self.next_line(keyword)?.to_vec();
        if toks[0].text != keyword {
            return Err(err_at(toks[0].line, toks[0].column, format!("expected `{keyword}`, found `{}`", toks[0].text)));
        }
        if toks.len() != 2 {
            let t = toks.get(2).unwrap_or(&toks[0]);
            return Err(err_at(t.line, t.column, format!("`{keyword}` takes exactly one value")));
        }
        Ok(toks[1])
    }

    pub fn expect_format(&mut self, name: &str) -> Result<(), MeshError> {
        let toks = self.next_line("format line")?.to_vec();
        let ok = toks.len() == 3 && toks[0].text == "format" && toks[1].text == name && toks[2].text == "1";
        if !ok {
            return Err(err_at(toks[0].line, toks[0].column, format!("expected `format {name} 1`")));
        }
        Ok(())
    }

    pub fn expect_end(&mut self) -> Result<(), MeshError> {
        let toks = self.next_line("`end`")?.to_vec();
        if toks.len() != 1 || toks[0].text != "end" {
            return Err(err_at(toks[0].line, toks[0].column, "expected `end`"));
        }
        if let Some((line, t)) = self.lines.get(self.pos) {
            return Err(err_at(*line, t[0].column, "content after `end`"));
        }
        Ok(())
    }

    fn document(mut self) -> Result<MeshFile, MeshError> {
        self.expect_format("ddg-mesh")?;
        let k = self.header("kind")?;
        let kind = match k.text {
            "tri" => MeshKind::Tri,
            "quad" => MeshKind::Quad,
            other => return Err(err_at(k.line, k.column, format!("unknown kind `{other}`"))),
        };
        let n = parse_usize(self.header("vertex_count")?)?;
        let mut positions = None;
        if self.peek_keyword() == Some("positions") {
            let t = self.header("positions")?;
            let m = parse_usize(t)?;
            if m != n {
                return Err(err_at(t.line, t.column, format!("positions count {m} differs from vertex_count {n}")));
            }
            let mut p = Vec::with_capacity(n);
            for _ in 0..m {
                let toks = self.next_line("a position")?;
                if toks.len() != 3 {
                    return Err(err_at(toks[0].line, toks[0].column, "position needs three coordinates"));
                }
                p.push(Point3::new(parse_f64(toks[0])?, parse_f64(toks[1])?, parse_f64(toks[2])?));
            }
            positions = Some(p);
        }
        let m = parse_usize(self.header("faces")?)?;
        let arity = if kind == MeshKind::Tri { 3 } else { 4 };
        let mut faces = Vec::with_capacity(m);
        for _ in 0..m {
            let toks = self.next_line("a face")?;
            if toks.len() != arity {
                return Err(err_at(
                    toks[0].line,
                    toks[0].column,
                    format!("face has {} vertices, expected {arity}", toks.len()),
                ));
            }
            let mut f = Vec::with_capacity(arity);
            for &t in toks {
                let v = parse_usize(t)?;
                if v >= n {
                    return Err(err_at(t.line, t.column, format!("vertex index {v} out of range")));
                }
                f.push(v);
            }
            faces.push(f);
        }
        let mut colors = None;
        if self.peek_keyword() == Some("colors") {
            let t = self.header("colors")?;
            let c = parse_usize(t)?;
            if c != n {
                return Err(MeshError::AttributeMismatch { what: "colors", got: c, expected: n });
            }
            let mut v = Vec::with_capacity(c);
            for _ in 0..c {
                let toks = self.next_line("a color")?;
                let t = toks[0];
                let col = (toks.len() == 1 && t.text.len() == 1)
                    .then(|| VertexColor::from_letter(t.text.chars().next().unwrap_or(' ')))
                    .flatten()
                    .ok_or_else(|| err_at(t.line, t.column, format!("bad color `{}`", t.text)))?;
                v.push(col);
            }
            colors = Some(v);
        }
        let mut labels = Vec::new();
        if self.peek_keyword() == Some("labels") {
            let c = parse_usize(self.header("labels")?)?;
            for _ in 0..c {
                let toks = self.next_line("a label")?;
                if toks.len() != 3 {
                    return Err(err_at(toks[0].line, toks[0].column, "label line needs `i j +|-`"));
                }
                let a = parse_usize(toks[0])?;
                let b = parse_usize(toks[1])?;
                let l = match toks[2].text {
                    "+" => EdgeLabel::Plus,
                    "-" => EdgeLabel::Minus,
                    _ => return Err(err_at(toks[2].line, toks[2].column, "label must be + or -")),
                };
                labels.push((a, b, l));
            }
        }
        self.expect_end()?;
        Ok(MeshFile { kind, vertex_count: n, positions, faces, colors, labels })
    }
}

pub(crate) fn parse_usize(t: Tok<'_>) -> Result<usize, MeshError> {
    t.text
        .parse()
        .map_err(|_| err_at(t.line, t.column, format!("expected a non-negative integer, found `{}`", t.text)))
}

pub(crate) fn parse_f64(t: Tok<'_>) -> Result<f64, MeshError> {
    let v: f64 = t
        .text
        .parse()
        .map_err(|_| err_at(t.line, t.column, format!("expected a number, found `{}`", t.text)))?;
    if !v.is_finite() {
        return Err(err_at(t.line, t.column, "number must be finite"));
    }
    Ok(v)
}

pub fn read_mesh(path: &Path) -> Result<MeshFile, MeshError> {
    MeshFile::parse(&std::fs::read_to_string(path)?)
}

pub fn write_mesh(path: &Path, m: &MeshFile) -> Result<(), MeshError> {
    std::fs::write(path, m.to_text())?;
    Ok(())
}

/// Wavefront OBJ with positions and faces only.
pub fn to_obj(positions: &[Point3], faces: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for p in positions {
        let _ = writeln!(s, "v {:e} {:e} {:e}", p.x, p.y, p.z);
    }
    for f in faces {
        let idx: Vec<String> = f.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(s, "f {}", idx.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra_file() -> MeshFile {
        let p = vec![Point3::new(1.0, 1.0, 1.0), Point3::new(1.0, -1.0, -1.0), Point3::new(-1.0, 1.0, -1.0), Point3::new(-1.0, -1.0, 1.0 + 1e-17)];
        let s = SimplicialSurface::new(p, vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]]).unwrap();
        MeshFile::from_surface(&s)
    }

    #[test]
    fn roundtrip_tetrahedron() {
        let m = tetra_file();
        let back = MeshFile::parse(&m.to_text()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_surface().unwrap().face_count(), 4);
    }

    #[test]
    fn tiny_perturbation_survives() {
        let x = 0.1 + 1e-17;
        let m = MeshFile {
            kind: MeshKind::Tri,
            vertex_count: 3,
            positions: Some(vec![Point3::new(x, 1.0 / 3.0, -2.5e-300); 3]),
            faces: vec![vec![0, 1, 2]],
            colors: None,
            labels: vec![],
        };
        let back = MeshFile::parse(&m.to_text()).unwrap();
        assert_eq!(back.positions.unwrap()[0].x.to_bits(), x.to_bits());
    }

    #[test]
    fn five_sided_face_in_quad_mode() {
        let txt = "format ddg-mesh 1\nkind quad\nvertex_count 5\nfaces 1\n0 1 2 3 4\nend\n";
        match MeshFile::parse(txt) {
            Err(MeshError::Parse { line, column, .. }) => assert_eq!((line, column), (5, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_number_located() {
        let txt = "format ddg-mesh 1\nkind tri\nvertex_count 3\npositions 3\n0 0 0\n1 x 0\n0 1 0\nfaces 0\nend\n";
        match MeshFile::parse(txt) {
            Err(MeshError::Parse { line, column, .. }) => assert_eq!((line, column), (6, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn color_count_mismatch() {
        let txt = "format ddg-mesh 1\nkind tri\nvertex_count 3\nfaces 1\n0 1 2\ncolors 2\nb\nw\nend\n";
        assert!(matches!(MeshFile::parse(txt), Err(MeshError::AttributeMismatch { .. })));
    }
}

//! Mesh data structures: oriented simplicial surfaces, quad-graphs with
//! colorings and edge labels, refinement, example generators and the text
//! interchange format.

pub mod generators;
pub mod io;
pub mod quad;
pub mod surface;

pub use quad::{EdgeLabel, QuadGraph, QuadStar};
pub use surface::{Diagnostics, SimplicialSurface, VertexStar};

use crate::geom::GeomError;
use thiserror::Error;

/// Vertex color. Simplicial surfaces use `Black`/`White`; S-quad-graphs
/// split white vertices into circle (`WhiteC`) and sphere (`WhiteS`) vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColor {
    Black,
    White,
    WhiteC,
    WhiteS,
}

impl VertexColor {
    pub fn is_white(self) -> bool {
        !matches!(self, VertexColor::Black)
    }

    pub fn letter(self) -> char {
        match self {
            VertexColor::Black => 'b',
            VertexColor::White => 'w',
            VertexColor::WhiteC => 'c',
            VertexColor::WhiteS => 's',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'b' => VertexColor::Black,
            'w' => VertexColor::White,
            'c' => VertexColor::WhiteC,
            's' => VertexColor::WhiteS,
            _ => return None,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("vertex index {index} out of range (vertex count {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("face {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("invalid quad-graph: {0}")]
    InvalidQuadGraph(String),
    #[error("no consistent edge labeling: {0}")]
    LabelObstruction(String),
    #[error("attribute count mismatch: {what} has {got} entries, expected {expected}")]
    AttributeMismatch { what: &'static str, got: usize, expected: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for MeshError {
    fn from(e: std::io::Error) -> Self {
        MeshError::Io(e.to_string())
    }
}

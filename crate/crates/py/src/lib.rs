//! Python bindings. Geometry crosses the boundary as plain tuples and lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use circlesurf::energy::{bending_energy, willmore_total};
use circlesurf::geom::{cross_ratio as quat_cross_ratio, Point3};
use circlesurf::mesh::{QuadGraph, SimplicialSurface};
use circlesurf::pattern::io::{parse_problem, problem_to_text};
use circlesurf::pattern::{layout, solve, square_grid, PatternError, SolverOptions};
use circlesurf::surfaces::{
    build_enneper, build_schwarz_p, is_discrete_minimal, kites_to_obj, SIsothermicSurface, SurfaceError,
};

type Vec3 = (f64, f64, f64);

fn point(p: Vec3) -> Point3 {
    Point3::new(p.0, p.1, p.2)
}

fn tuple(p: Point3) -> Vec3 {
    (p.x, p.y, p.z)
}

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pattern_err(e: PatternError) -> PyErr {
    match e {
        PatternError::NotConverged { .. } | PatternError::LayoutMismatch(_) => PyRuntimeError::new_err(e.to_string()),
        _ => value_error(e),
    }
}

fn surface_err(e: SurfaceError) -> PyErr {
    match e {
        SurfaceError::InvalidInput(_) => value_error(e),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn surface(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> PyResult<SimplicialSurface> {
    SimplicialSurface::new(vertices.into_iter().map(point).collect(), faces).map_err(value_error)
}

/// Quaternionic cross-ratio of four points, returned as `(re, i, j, k)`.
#[pyfunction]
fn cross_ratio(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> PyResult<(f64, f64, f64, f64)> {
    let q = quat_cross_ratio(point(a), point(b), point(c), point(d)).map_err(value_error)?;
    Ok((q.w, q.x, q.y, q.z))
}

/// Discrete Willmore energy of a closed triangle mesh. Returns a dict with
/// `total`, `per_vertex` and `per_edge` (a list of `(a, b, beta)`).
#[pyfunction]
fn willmore_energy<'py>(py: Python<'py>, vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> PyResult<Bound<'py, PyDict>> {
    let r = willmore_total(&surface(vertices, faces)?).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("total", r.total)?;
    d.set_item("per_vertex", r.per_vertex)?;
    d.set_item("per_edge", r.per_edge.iter().map(|&((a, b), beta)| (a, b, beta)).collect::<Vec<_>>())?;
    Ok(d)
}

#[pyfunction]
fn bending(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> PyResult<f64> {
    bending_energy(&surface(vertices, faces)?).map_err(value_error)
}

/// Pattern problem text for an `m × n` square grid.
#[pyfunction]
#[pyo3(signature = (m, n, dirichlet = true))]
fn square_grid_problem(m: usize, n: usize, dirichlet: bool) -> PyResult<String> {
    Ok(problem_to_text(&square_grid(m, n, dirichlet).map_err(pattern_err)?))
}

/// Solves a pattern problem given in text form and lays it out. Returns a
/// dict with `rho`, `residual`, `iterations`, `centers`, `radii` and
/// `orthogonality_residual`.
#[pyfunction]
#[pyo3(signature = (problem, tol = 1e-10, max_iter = 50))]
fn solve_pattern<'py>(py: Python<'py>, problem: &str, tol: f64, max_iter: usize) -> PyResult<Bound<'py, PyDict>> {
    let p = parse_problem(problem).map_err(pattern_err)?;
    let s = solve(&p, &SolverOptions { tol, max_iter }).map_err(pattern_err)?;
    let l = layout(&p, &s.rho).map_err(pattern_err)?;
    let d = PyDict::new(py);
    d.set_item("rho", &s.rho)?;
    d.set_item("residual", s.residual)?;
    d.set_item("iterations", s.iterations)?;
    d.set_item("centers", l.centers.iter().map(|c| (c.x, c.y)).collect::<Vec<_>>())?;
    d.set_item("radii", &l.radii)?;
    d.set_item("orthogonality_residual", l.orthogonality_residual)?;
    Ok(d)
}

/// A discrete minimal surface: its kite mesh and sphere/circle data.
#[pyclass(frozen, module = "circlesurf")]
struct MinimalSurface {
    #[pyo3(get)]
    vertices: Vec<Vec3>,
    #[pyo3(get)]
    faces: Vec<[usize; 4]>,
    /// `(vertex, center, radius)` per sphere.
    #[pyo3(get)]
    spheres: Vec<(usize, Vec3, f64)>,
    /// `(vertex, center, normal, radius)` per circle.
    #[pyo3(get)]
    circles: Vec<(usize, Vec3, Vec3, f64)>,
    #[pyo3(get)]
    minimality_defect: f64,
    #[pyo3(get)]
    koebe_tangency_defect: f64,
    #[pyo3(get)]
    contact_defect: f64,
    #[pyo3(get)]
    symmetry_plane_defect: Option<f64>,
    obj: String,
}

impl MinimalSurface {
    fn new(
        s: &SIsothermicSurface,
        kites: &QuadGraph,
        tangency: f64,
        symmetry: Option<f64>,
    ) -> PyResult<Self> {
        let pos = kites.require_positions().map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(MinimalSurface {
            vertices: pos.iter().map(|&p| tuple(p)).collect(),
            faces: kites.faces().to_vec(),
            spheres: s.spheres.iter().map(|(&v, sp)| (v, tuple(sp.center), sp.radius)).collect(),
            circles: s.circles.iter().map(|(&v, c)| (v, tuple(c.center), tuple(c.normal), c.radius)).collect(),
            minimality_defect: is_discrete_minimal(s).map_err(surface_err)?.max_defect,
            koebe_tangency_defect: tangency,
            contact_defect: s.check().max(),
            symmetry_plane_defect: symmetry,
            obj: kites_to_obj(kites).map_err(surface_err)?,
        })
    }
}

#[pymethods]
impl MinimalSurface {
    /// Wavefront OBJ text of the kite mesh.
    fn to_obj(&self) -> String {
        self.obj.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "MinimalSurface(vertices={}, faces={}, minimality_defect={:.3e})",
            self.vertices.len(),
            self.faces.len(),
            self.minimality_defect
        )
    }
}

/// Discrete Enneper surface on the `(2n+1)²` lattice patch.
#[pyfunction]
fn enneper(n: usize) -> PyResult<MinimalSurface> {
    let e = build_enneper(n).map_err(surface_err)?;
    MinimalSurface::new(&e.surface, &e.dual.quad, e.koebe.edge_tangency_defect(), None)
}

/// Discrete Schwarz-P surface over an `m × n × k` box of even sizes.
#[pyfunction]
fn schwarz_p(m: usize, n: usize, k: usize) -> PyResult<MinimalSurface> {
    let s = build_schwarz_p(m, n, k).map_err(surface_err)?;
    MinimalSurface::new(&s.surface, &s.dual.quad, s.koebe.edge_tangency_defect(), Some(s.symmetry_plane_defect()))
}

#[pymodule]
#[pyo3(name = "circlesurf")]
pub fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cross_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(willmore_energy, m)?)?;
    m.add_function(wrap_pyfunction!(bending, m)?)?;
    m.add_function(wrap_pyfunction!(square_grid_problem, m)?)?;
    m.add_function(wrap_pyfunction!(solve_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(enneper, m)?)?;
    m.add_function(wrap_pyfunction!(schwarz_p, m)?)?;
    m.add_class::<MinimalSurface>()?;
    Ok(())
}

use std::path::Path;

use circlesurf::energy::{bending_energy, willmore_total, EnergyError};
use circlesurf::mesh::io::{read_mesh, MeshFile};
use circlesurf::mesh::MeshError;
use circlesurf::pattern::io::{layout_to_svg, layout_to_text, parse_problem, solution_to_text};
use circlesurf::pattern::{layout_with_tolerance, solve, PatternError, SolverOptions};
use circlesurf::surfaces::{
    build_enneper, build_schwarz_p_with, is_discrete_minimal, kites_to_obj, proxies_to_obj, SIsothermicSurface,
    SurfaceError,
};

use crate::config::{write, RunConfig, MAX_SIZE};
use crate::CliError;

fn mesh_error(e: MeshError) -> CliError {
    match e {
        MeshError::Parse { .. } | MeshError::Io(_) => CliError::usage(e.to_string()),
        _ => CliError::new(3, e.to_string()),
    }
}

fn energy_error(e: EnergyError) -> CliError {
    match e {
        EnergyError::Mesh(m) => mesh_error(m),
        _ => CliError::new(3, e.to_string()),
    }
}

fn pattern_error(e: PatternError) -> CliError {
    match e {
        PatternError::Format(m) => mesh_error(m),
        PatternError::NotConverged { .. } | PatternError::LayoutMismatch(_) => CliError::new(4, e.to_string()),
        _ => CliError::new(3, e.to_string()),
    }
}

/// Exit 4 with the pipeline stage that failed.
fn surface_error(e: SurfaceError) -> CliError {
    let stage = match &e {
        SurfaceError::InvalidInput(_) => return CliError::usage(e.to_string()),
        SurfaceError::Pattern(_) => "pattern solve",
        SurfaceError::NearPole(_) => "stereographic lift",
        SurfaceError::NoOrthogonalSphere(_) => "Koebe polyhedron",
        SurfaceError::ZeroEdge(..) | SurfaceError::NotClosing(_) => "dualization",
        SurfaceError::NonCircular { .. } => "isothermic check",
        SurfaceError::Mesh(_) | SurfaceError::Geometry(_) => "combinatorics",
        SurfaceError::Pipeline(_) => "verification",
    };
    CliError::new(4, format!("pipeline failed at stage `{stage}`: {e}"))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into())
}

pub fn energy(cfg: &RunConfig, path: &Path, bending: bool) -> Result<(), CliError> {
    let file = read_mesh(path).map_err(mesh_error)?;
    let surface = file.to_surface().map_err(mesh_error)?;
    let report = willmore_total(&surface).map_err(energy_error)?;
    let target = cfg.output(&format!("{}.energy", stem(path)))?;
    write(&target, &report.to_text())?;
    let lo = report.per_vertex.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = report.per_vertex.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    println!("W = {:.6e} (±{:.0e})", report.total, cfg.tol.max(1e-8));
    println!("W(v) min = {lo:.6e} max = {hi:.6e}");
    if bending {
        println!("E = {:.6e}", bending_energy(&surface).map_err(energy_error)?);
    }
    println!("report = {}", target.display());
    println!("seed = {}", cfg.seed);
    Ok(())
}

pub fn pattern_solve(cfg: &RunConfig, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let problem = parse_problem(&text).map_err(pattern_error)?;
    let opts = SolverOptions { tol: cfg.tol, max_iter: cfg.max_iter };
    let sol = solve(&problem, &opts).map_err(pattern_error)?;
    for (i, r) in sol.history.iter().enumerate() {
        log::info!("newton step {i}: residual {r:.3e}");
    }
    let layout = layout_with_tolerance(&problem, &sol.rho, 1e-8).map_err(pattern_error)?;
    let name = stem(path);
    write(&cfg.output(&format!("{name}.solution"))?, &solution_to_text(&sol))?;
    write(&cfg.output(&format!("{name}.layout"))?, &layout_to_text(&layout))?;
    if cfg.svg {
        write(&cfg.output(&format!("{name}.svg"))?, &layout_to_svg(&layout))?;
    }
    println!("residual = {:.3e}", sol.residual);
    println!("iterations = {}", sol.iterations);
    println!("orthogonality = {:.3e}", layout.orthogonality_residual);
    println!("tangency = {:.3e}", layout.tangency_residual);
    println!("seed = {}", cfg.seed);
    Ok(())
}

fn check_size(what: &str, v: usize) -> Result<(), CliError> {
    if v == 0 || v > MAX_SIZE {
        return Err(CliError::usage(format!("{what} must lie in 1..={MAX_SIZE}, got {v}")));
    }
    Ok(())
}

fn export_surface(cfg: &RunConfig, name: &str, s: &SIsothermicSurface, kites: &circlesurf::mesh::QuadGraph) -> Result<(), CliError> {
    write(&cfg.output(&format!("{name}.mesh"))?, &MeshFile::from_quad_graph(kites).to_text())?;
    if cfg.obj {
        write(&cfg.output(&format!("{name}.obj"))?, &kites_to_obj(kites).map_err(surface_error)?)?;
        write(&cfg.output(&format!("{name}_proxies.obj"))?, &proxies_to_obj(s, 32))?;
    }
    Ok(())
}

fn print_common(cfg: &RunConfig, s: &SIsothermicSurface, orth: f64, tangency: f64) -> Result<(), CliError> {
    let min = is_discrete_minimal(s).map_err(surface_error)?;
    println!("minimality = {:.3e}", min.max_defect);
    println!("orthogonality = {orth:.3e}");
    println!("koebe_tangency = {tangency:.3e}");
    println!("contact = {:.3e}", s.check().max());
    println!("seed = {}", cfg.seed);
    Ok(())
}

pub fn enneper(cfg: &RunConfig, n: usize) -> Result<(), CliError> {
    check_size("n", n)?;
    let e = build_enneper(n).map_err(surface_error)?;
    let name = format!("enneper_{n}");
    export_surface(cfg, &name, &e.surface, &e.dual.quad)?;
    println!("surface = enneper {n}");
    println!("kites = {}", e.dual.quad.face_count());
    println!("dual_closing = {:.3e}", e.dual.closing_defect);
    print_common(cfg, &e.surface, e.pattern.orthogonality_defect(), e.koebe.edge_tangency_defect())
}

pub fn schwarzp(cfg: &RunConfig, m: usize, n: usize, k: usize) -> Result<(), CliError> {
    for (what, v) in [("m", m), ("n", n), ("k", k)] {
        check_size(what, v)?;
    }
    if m % 2 == 1 || n % 2 == 1 || k % 2 == 1 {
        return Err(CliError::usage(format!("even integers required: got {m} {n} {k}")));
    }
    let opts = SolverOptions { tol: cfg.tol, max_iter: cfg.max_iter };
    let s = build_schwarz_p_with(m, n, k, &opts).map_err(surface_error)?;
    let name = format!("schwarzp_{m}_{n}_{k}");
    export_surface(cfg, &name, &s.surface, &s.dual.quad)?;
    if cfg.svg {
        write(&cfg.output(&format!("{name}.svg"))?, &layout_to_svg(&s.layout))?;
    }
    println!("surface = schwarzp {m} {n} {k}");
    println!("kites = {}", s.dual.quad.face_count());
    println!("residual = {:.3e}", s.solution.residual);
    println!("symmetry_plane = {:.3e}", s.symmetry_plane_defect());
    println!("mirror = {:.3e}", s.mirror_defect());
    if let Some(o) = s.octahedral_defect() {
        println!("octahedral = {o:.3e}");
    }
    println!("dual_closing = {:.3e}", s.dual.closing_defect);
    print_common(cfg, &s.surface, s.pattern.orthogonality_defect(), s.koebe.edge_tangency_defect())
}

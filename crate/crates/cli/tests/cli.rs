use std::path::Path;
use std::process::{Command, Output};

use circlesurf::mesh::generators::{octahedron, steinitz_example};
use circlesurf::mesh::io::MeshFile;
use circlesurf::mesh::SimplicialSurface;
use circlesurf::geom::Point3;
use circlesurf::pattern::io::problem_to_text;
use circlesurf::pattern::square_grid;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circlesurf"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Value of a `key = value` summary line.
fn value(o: &Output, key: &str) -> f64 {
    let text = stdout(o);
    let line = text
        .lines()
        .find(|l| l.starts_with(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"));
    line[key.len() + 3..].split_whitespace().next().unwrap().parse().unwrap()
}

fn write_mesh(dir: &Path, name: &str, s: &SimplicialSurface) -> String {
    let p = dir.join(name);
    std::fs::write(&p, MeshFile::from_surface(s).to_text()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn energy_of_inscribed_mesh_is_zero() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(dir.path(), "oct.mesh", &octahedron());
    let o = run(dir.path(), &["energy", &mesh, "--bending"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(value(&o, "W").abs() <= 1e-8);
    assert!(stdout(&o).contains("E = "));
    let report = std::fs::read_to_string(dir.path().join("oct.energy")).unwrap();
    assert!(report.starts_with("format ddg-energy 1"));
}

#[test]
fn energy_of_steinitz_realization_exceeds_two_pi() {
    let dir = TempDir::new().unwrap();
    let tet = circlesurf::mesh::generators::tetrahedron();
    let p = tet.positions().unwrap();
    let s = circlesurf::mesh::generators::miquel_polyhedron([p[0], p[1], p[2], p[3]], [0.4, 0.6, 0.5, 0.45, 0.55, 0.5])
        .unwrap();
    assert_eq!(s.faces(), steinitz_example().faces());
    let mesh = write_mesh(dir.path(), "steinitz.mesh", &s);
    let o = run(dir.path(), &["energy", &mesh]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(value(&o, "W") >= 6.283185);
}

#[test]
fn energy_rejects_open_and_malformed_meshes() {
    let dir = TempDir::new().unwrap();
    let open = SimplicialSurface::new(vec![Point3::ZERO, Point3::X, Point3::Y], vec![[0, 1, 2]]).unwrap();
    let mesh = write_mesh(dir.path(), "open.mesh", &open);
    let o = run(dir.path(), &["energy", &mesh]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("closed surface required"));

    let bad = dir.path().join("bad.mesh");
    std::fs::write(&bad, "format ddg-mesh 1\nvertices two\n").unwrap();
    let o = run(dir.path(), &["energy", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn pattern_solve_writes_solution_layout_and_svg() {
    let dir = TempDir::new().unwrap();
    let problem = square_grid(5, 4, true).unwrap();
    let path = dir.path().join("grid.pattern");
    std::fs::write(&path, problem_to_text(&problem)).unwrap();
    let o = run(dir.path(), &["pattern", "solve", path.to_str().unwrap(), "--svg"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(value(&o, "residual") <= 1e-10);
    assert!(value(&o, "iterations") <= 20.0);
    assert!(dir.path().join("grid.solution").exists());
    assert!(dir.path().join("grid.layout").exists());
    let svg = std::fs::read_to_string(dir.path().join("grid.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), problem.node_count());
}

#[test]
fn pattern_solve_error_codes() {
    let dir = TempDir::new().unwrap();
    let disconnected = "format ddg-pattern 1\nnodes 4\n\
        node 0 dirichlet 0 fan 1\nnode 1 neumann 1 fan 0\n\
        node 2 dirichlet 0 fan 3\nnode 3 neumann 1 fan 2\nend\n";
    let path = dir.path().join("split.pattern");
    std::fs::write(&path, disconnected).unwrap();
    let o = run(dir.path(), &["pattern", "solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    let mut nodes = square_grid(6, 6, true).unwrap().nodes().to_vec();
    for (j, n) in nodes.iter_mut().enumerate() {
        if let circlesurf::pattern::NodeData::Dirichlet(_) = n.data {
            n.data = circlesurf::pattern::NodeData::Dirichlet(0.5 * (j as f64).sin());
        }
    }
    let hard = circlesurf::pattern::PatternProblem::new(nodes).unwrap();
    let path = dir.path().join("hard.pattern");
    std::fs::write(&path, problem_to_text(&hard)).unwrap();
    let o = run(dir.path(), &["pattern", "solve", path.to_str().unwrap(), "--max-iter", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("residual"));
}

#[test]
fn surface_enneper_summary() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["surface", "enneper", "3", "--obj"]);
    assert!(o.status.success(), "{}", stderr(&o));
    for key in ["minimality", "orthogonality", "koebe_tangency", "contact"] {
        assert!(value(&o, key) <= 1e-7, "{key}");
    }
    assert!(dir.path().join("enneper_3.mesh").exists());
    assert!(dir.path().join("enneper_3.obj").exists());
    assert!(dir.path().join("enneper_3_proxies.obj").exists());
}

#[test]
fn surface_schwarzp_summary_and_size_errors() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["surface", "schwarzp", "2", "2", "2", "--svg"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(value(&o, "symmetry_plane") <= 1e-7);
    assert!(value(&o, "minimality") <= 1e-7);
    assert!(dir.path().join("schwarzp_2_2_2.svg").exists());

    let o = run(dir.path(), &["surface", "schwarzp", "3", "2", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("even integers required"));
    let o = run(dir.path(), &["surface", "enneper", "40"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_single_suite_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = run(dir.path(), &["verify", "--suite", "miquel", "--seed", "9"]);
    let b = run(dir.path(), &["verify", "--suite", "miquel", "--seed", "9"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let rows: Vec<String> = stdout(&a).lines().skip(1).take_while(|l| !l.starts_with("seed")).map(String::from).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.starts_with("miquel")));
    assert!(stdout(&a).contains("seed = 9"));
}

#[test]
fn verify_names_failed_invariant_of_corrupted_fixture() {
    let dir = TempDir::new().unwrap();
    let good = write_mesh(dir.path(), "good.mesh", &octahedron());
    let o = run(dir.path(), &["verify", "--suite", "fixture", "--mesh", &good]);
    assert!(o.status.success(), "{}", stdout(&o));

    let oct = octahedron();
    let mut faces = oct.faces().to_vec();
    faces[0].swap(1, 2);
    let broken = SimplicialSurface::new(oct.positions().unwrap().to_vec(), faces).unwrap();
    let bad = write_mesh(dir.path(), "bad.mesh", &broken);
    let o = run(dir.path(), &["verify", "--suite", "fixture", "--mesh", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let mut failing = text.lines().filter(|l| l.ends_with("FAIL"));
    assert!(failing.any(|l| l.contains("closed oriented manifold")), "{text}");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "seed = 7\n").unwrap();
    let o = run(dir.path(), &["verify", "--suite", "bending", "--config", cfg.to_str().unwrap()]);
    assert!(stdout(&o).contains("seed = 7"));
    let o = run(dir.path(), &["verify", "--suite", "bending", "--config", cfg.to_str().unwrap(), "--seed", "3"]);
    assert!(stdout(&o).contains("seed = 3"));

    std::fs::write(&cfg, "colour = true\n").unwrap();
    let o = run(dir.path(), &["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

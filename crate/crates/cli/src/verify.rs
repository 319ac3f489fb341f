//! Invariant suites behind `circlesurf verify`. Every random draw comes from
//! one generator seeded by `--seed`, so a run is reproducible.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::path::Path;

use circlesurf::energy::{beta_of_theta, model_hexagon, quotient_q, steinitz_bound, willmore_total, LatticeAngles};
use circlesurf::geom::fit::fit_sphere;
use circlesurf::geom::{circumcircle, miquel_point, MiquelCube, MobiusMap, Point3, Sphere3};
use circlesurf::mesh::generators::{convex_hull, miquel_polyhedron, tetrahedron};
use circlesurf::mesh::io::read_mesh;
use circlesurf::mesh::SimplicialSurface;
use circlesurf::pattern::{
    gradient_s, hessian_s, im_li2_i_exp, layout, solve, square_grid, NodeData, PatternNode, PatternProblem,
    SolverOptions,
};
use circlesurf::surfaces::{build_enneper, build_schwarz_p, is_discrete_minimal, kite_defects};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::CliError;

const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

pub const SUITES: [&str; 10] =
    ["willmore", "moebius", "steinitz", "smooth", "bending", "solver", "layout", "miquel", "enneper", "schwarzp"];

struct Row {
    suite: &'static str,
    check: String,
    value: f64,
    limit: f64,
    pass: bool,
}

#[derive(Default)]
struct Table {
    rows: Vec<Row>,
}

impl Table {
    /// Records `value ≤ limit`.
    fn at_most(&mut self, suite: &'static str, check: impl Into<String>, value: f64, limit: f64) {
        let pass = value <= limit;
        self.rows.push(Row { suite, check: check.into(), value, limit, pass });
    }

    fn failed(&mut self, suite: &'static str, check: impl Into<String>, err: impl std::fmt::Display) {
        self.rows.push(Row { suite, check: format!("{}: {err}", check.into()), value: f64::NAN, limit: 0.0, pass: false });
    }
}

macro_rules! attempt {
    ($t:expr, $suite:expr, $check:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $t.failed($suite, $check, err);
                return;
            }
        }
    };
}

fn sphere_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point3> {
    (0..n)
        .map(|_| loop {
            let p = Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if p.norm() > 0.1 && p.norm() < 1.0 {
                break p * (1.0 / p.norm());
            }
        })
        .collect()
}

fn willmore(t: &mut Table, rng: &mut ChaCha8Rng) {
    let s = attempt!(t, "willmore", "hull of 200 sphere points", convex_hull(&sphere_points(rng, 200)));
    let r = attempt!(t, "willmore", "energy of inscribed hull", willmore_total(&s));
    t.at_most("willmore", "inscribed hull |W|", r.total.abs(), 1e-8);
    t.at_most("willmore", "edge/vertex totals agree", r.consistency_defect(), 1e-10);
    t.at_most("willmore", "W(v) >= 0", -r.per_vertex.iter().copied().fold(0.0, f64::min), 1e-12);
}

fn random_inversion(rng: &mut ChaCha8Rng) -> MobiusMap {
    let dir = sphere_points(rng, 1)[0];
    let center = dir * rng.gen_range(2.5..5.0);
    MobiusMap::inversion(Sphere3::new(center, rng.gen_range(0.5..3.0)).expect("positive radius"))
}

fn moebius_check(t: &mut Table, suite: &'static str, label: &str, s: &SimplicialSurface, map: &MobiusMap) {
    let w0 = attempt!(t, suite, label, willmore_total(s)).total;
    let moved = attempt!(t, suite, label, map.apply_all(s.positions().unwrap_or(&[])));
    let s1 = attempt!(t, suite, label, s.clone().with_positions(moved));
    let w1 = attempt!(t, suite, label, willmore_total(&s1)).total;
    t.at_most(suite, format!("{label} |dW|/(1+|W|)"), (w1 - w0).abs() / (1.0 + w0.abs()), 1e-6);
}

fn moebius(t: &mut Table, rng: &mut ChaCha8Rng) {
    let mut worst = 0.0f64;
    for i in 0..20 {
        let mut pts = sphere_points(rng, 30 + 5 * i);
        let s = attempt!(t, "moebius", "random hull", convex_hull(&pts));
        for p in &mut pts {
            *p = *p * rng.gen_range(0.85..1.15);
        }
        let s = attempt!(t, "moebius", "perturbed hull", s.with_positions(pts));
        let map = random_inversion(rng);
        let w0 = attempt!(t, "moebius", "energy", willmore_total(&s)).total;
        let moved = attempt!(t, "moebius", "inversion", map.apply_all(s.positions().unwrap_or(&[])));
        let w1 = attempt!(t, "moebius", "energy", willmore_total(&s.with_positions(moved).expect("same size"))).total;
        worst = worst.max((w1 - w0).abs() / (1.0 + w0.abs()));
    }
    t.at_most("moebius", "20 meshes |dW|/(1+|W|)", worst, 1e-6);
}

fn random_tetra(rng: &mut ChaCha8Rng) -> [Point3; 4] {
    let p = tetrahedron();
    let base = p.positions().expect("generator has positions");
    std::array::from_fn(|i| {
        base[i] + Point3::new(rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1))
    })
}

fn steinitz(t: &mut Table, rng: &mut ChaCha8Rng) {
    let mut margin = f64::INFINITY;
    for _ in 0..50 {
        let params: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.3..0.7));
        let s = attempt!(t, "steinitz", "realization", miquel_polyhedron(random_tetra(rng), params));
        let mut pos = s.positions().expect("positions").to_vec();
        for p in &mut pos {
            *p = *p + Point3::new(rng.gen_range(-0.03..0.03), rng.gen_range(-0.03..0.03), rng.gen_range(-0.03..0.03));
        }
        let s = attempt!(t, "steinitz", "perturbation", s.with_positions(pos));
        let w = attempt!(t, "steinitz", "energy", willmore_total(&s)).total;
        let bound = attempt!(t, "steinitz", "bound", steinitz_bound(&s));
        margin = margin.min(w - bound);
    }
    t.at_most("steinitz", "50 realizations bound - W", -margin, 1e-8);
    let params: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.3..0.7));
    let s = attempt!(t, "steinitz", "Miquel polyhedron", miquel_polyhedron(random_tetra(rng), params));
    let w = attempt!(t, "steinitz", "energy", willmore_total(&s)).total;
    t.at_most("steinitz", "Miquel polyhedron |W - 2pi|", (w - 2.0 * PI).abs(), 1e-7);
}

fn smooth(t: &mut Table, rng: &mut ChaCha8Rng) {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let phi = attempt!(t, "smooth", "angles", LatticeAngles::new(rng.gen_range(0.0..FRAC_PI_2), FRAC_PI_3, FRAC_PI_3));
        worst = worst.max((attempt!(t, "smooth", "Q", quotient_q(&phi)) - 1.5).abs());
    }
    t.at_most("smooth", "equilateral Q = 3/2", worst, 1e-12);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (p2, p3) = loop {
            let (a, b) = (rng.gen_range(0.4..1.3), rng.gen_range(0.4..1.3));
            if a + b > FRAC_PI_2 + 0.2 {
                break (a, b);
            }
        };
        let phi = attempt!(t, "smooth", "angles", LatticeAngles::new(rng.gen_range(0.0..FRAC_PI_2), p2, p3));
        let (k1, k2) = (rng.gen_range(0.5..2.0), rng.gen_range(-2.0..0.0));
        let h = attempt!(t, "smooth", "hexagon", model_hexagon(k1, k2, &phi, 1e-3));
        let q = attempt!(t, "smooth", "Q", quotient_q(&phi));
        let d = attempt!(t, "smooth", "discrete energy", h.discrete_energy());
        worst = worst.max((d / h.smooth_energy(k1, k2) - q).abs() / q);
    }
    t.at_most("smooth", "hexagon ratio vs Q (relative)", worst, 1e-2);
}

fn bending(t: &mut Table, rng: &mut ChaCha8Rng) {
    let theta = 1e-3;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (l1, l2, l3) = (rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0));
        let b0 = attempt!(t, "bending", "beta", beta_of_theta(l1, l2, l3, 0.0));
        let b1 = attempt!(t, "bending", "beta", beta_of_theta(l1, l2, l3, theta));
        let coeff = (b1 - b0) / (theta * theta);
        let expected = 2.0 * l3 / (4.0 * (l1 + l2));
        worst = worst.max((coeff - expected).abs() / expected);
    }
    t.at_most("bending", "quadratic coefficient vs l/(4L)", worst, 1e-4);
}

/// Random connected problem with one Dirichlet node.
fn random_problem(rng: &mut ChaCha8Rng, n: usize) -> Result<PatternProblem, circlesurf::pattern::PatternError> {
    let mut adj = vec![Vec::new(); n];
    let mut add = |a: usize, b: usize| {
        if a != b && !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    };
    for j in 1..n {
        add(j, rng.gen_range(0..j));
    }
    for _ in 0..n {
        add(rng.gen_range(0..n), rng.gen_range(0..n));
    }
    let nodes = adj
        .into_iter()
        .enumerate()
        .map(|(j, neighbors)| PatternNode {
            data: if j == 0 { NodeData::Dirichlet(0.0) } else { NodeData::Neumann(rng.gen_range(1.0..6.0)) },
            neighbors,
            cycle: false,
        })
        .collect();
    PatternProblem::new(nodes)
}

fn solver(t: &mut Table, rng: &mut ChaCha8Rng) {
    let (mut g_err, mut h_err, mut min_eig) = (0.0f64, 0.0f64, f64::INFINITY);
    for probe in 0..100 {
        let n = rng.gen_range(5..30);
        let p = attempt!(t, "solver", "random problem", random_problem(rng, n));
        let rho: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let h = hessian_s(&p, &rho);
        min_eig = min_eig.min(h.clone().symmetric_eigen().eigenvalues.min() / h.norm().max(1.0));
        if probe % 10 != 0 {
            continue;
        }
        let g = gradient_s(&p, &rho);
        let step = 1e-6;
        for j in 0..n {
            let (mut a, mut b) = (rho.clone(), rho.clone());
            a[j] += step;
            b[j] -= step;
            let fd = (circlesurf::pattern::functional_s(&p, &a) - circlesurf::pattern::functional_s(&p, &b)) / (2.0 * step);
            g_err = g_err.max((fd - g[j]).abs() / (1.0 + g[j].abs()));
            let (ga, gb) = (gradient_s(&p, &a), gradient_s(&p, &b));
            for k in 0..n {
                let fd = (ga[k] - gb[k]) / (2.0 * step);
                h_err = h_err.max((fd - h[(k, j)]).abs() / (1.0 + h[(k, j)].abs()));
            }
        }
    }
    t.at_most("solver", "gradient vs finite differences", g_err, 1e-6);
    t.at_most("solver", "Hessian vs finite differences", h_err, 1e-5);
    t.at_most("solver", "Hessian PSD on 100 probes (-min eig)", -min_eig, 1e-12);
    let p = attempt!(t, "solver", "square grid", square_grid(8, 8, true));
    let s = attempt!(t, "solver", "square grid solve", solve(&p, &SolverOptions::default()));
    t.at_most("solver", "square grid max |rho|", s.rho.iter().fold(0.0, |m, r| m.max(r.abs())), 1e-10);
    t.at_most("solver", "square grid Newton steps", s.iterations as f64, 20.0);
    t.at_most("solver", "Im Li2(i) - Catalan", (im_li2_i_exp(0.0) - CATALAN).abs(), 1e-10);
}

fn layout_suite(t: &mut Table, rng: &mut ChaCha8Rng) {
    for (m, n) in [(6, 6), (9, 5)] {
        let mut nodes = attempt!(t, "layout", "grid", square_grid(m, n, true)).nodes().to_vec();
        for node in &mut nodes {
            if let NodeData::Dirichlet(_) = node.data {
                node.data = NodeData::Dirichlet(rng.gen_range(-0.4..0.4));
            }
        }
        let p = attempt!(t, "layout", "grid", PatternProblem::new(nodes));
        let s = attempt!(t, "layout", "solve", solve(&p, &SolverOptions::default()));
        let l = attempt!(t, "layout", "layout", layout(&p, &s.rho));
        t.at_most("layout", format!("{m}x{n} grid orthogonality"), l.orthogonality_residual, 1e-8);
    }
    for size in [(2, 2, 2), (4, 4, 4)] {
        let q = attempt!(t, "layout", "quarter", circlesurf::surfaces::quarter_problem(size.0, size.1, size.2));
        let s = attempt!(t, "layout", "solve", solve(&q.problem, &SolverOptions::default()));
        let l = attempt!(t, "layout", "layout", layout(&q.problem, &s.rho));
        t.at_most("layout", format!("quarter {size:?} orthogonality"), l.orthogonality_residual, 1e-8);
    }
}

fn point_on(rng: &mut ChaCha8Rng, a: Point3, b: Point3, c: Point3) -> Result<Point3, circlesurf::geom::GeomError> {
    Ok(circumcircle(a, b, c)?.point_at(rng.gen_range(0.0..std::f64::consts::TAU)))
}

fn miquel(t: &mut Table, rng: &mut ChaCha8Rng) {
    let (mut conc, mut sph) = (0.0f64, 0.0f64);
    let rnd = |rng: &mut ChaCha8Rng| Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    for _ in 0..100 {
        let (v0, v1, v2, v3) = (rnd(rng), rnd(rng), rnd(rng), rnd(rng));
        let v12 = attempt!(t, "miquel", "face circle", point_on(rng, v0, v1, v2));
        let v13 = attempt!(t, "miquel", "face circle", point_on(rng, v0, v1, v3));
        let v23 = attempt!(t, "miquel", "face circle", point_on(rng, v0, v2, v3));
        let cube = MiquelCube { v0, v1, v2, v3, v12, v13, v23 };
        let m = attempt!(t, "miquel", "eighth point", miquel_point(&cube));
        let mut pts = cube.points().to_vec();
        pts.push(m.point);
        let scale = pts.iter().map(|p| p.distance(v0)).fold(0.0, f64::max);
        conc = conc.max(m.residual / scale);
        sph = sph.max(attempt!(t, "miquel", "sphere fit", fit_sphere(&pts)).max_defect() / scale);
    }
    t.at_most("miquel", "100 cubes concurrency", conc, 1e-8);
    t.at_most("miquel", "100 cubes co-sphericity", sph, 1e-8);
}

fn enneper(t: &mut Table) {
    let e = attempt!(t, "enneper", "build_enneper(3)", build_enneper(3));
    t.at_most("enneper", "Koebe edge tangency", e.koebe.edge_tangency_defect(), 1e-8);
    let ext = attempt!(t, "enneper", "central extension", e.koebe_surface.central_extension());
    let k = attempt!(t, "enneper", "kites", kite_defects(&ext));
    t.at_most("enneper", "kite cross-ratio + 1", k.cross_ratio, 1e-8);
    let m = attempt!(t, "enneper", "minimality", is_discrete_minimal(&e.surface));
    t.at_most("enneper", "minimality defect", m.max_defect, 1e-7);
    t.at_most("enneper", "dual closing defect", e.dual.closing_defect, 1e-10);
    t.at_most("enneper", "dihedral symmetry", e.dihedral_defect(), 1e-8);
}

fn schwarzp(t: &mut Table) {
    for (m, n, k) in [(2, 2, 2), (4, 4, 4)] {
        let s = attempt!(t, "schwarzp", format!("build_schwarz_p({m},{n},{k})"), build_schwarz_p(m, n, k));
        t.at_most("schwarzp", format!("{m}{n}{k} Neumann residual"), s.solution.residual, 1e-10);
        t.at_most("schwarzp", format!("{m}{n}{k} symmetry planes"), s.symmetry_plane_defect(), 1e-7);
        let min = attempt!(t, "schwarzp", "minimality", is_discrete_minimal(&s.surface));
        t.at_most("schwarzp", format!("{m}{n}{k} minimality defect"), min.max_defect, 1e-7);
        if let Some(o) = s.octahedral_defect() {
            t.at_most("schwarzp", format!("{m}{n}{k} octahedral symmetry"), o, 1e-7);
        }
    }
}

fn fixture(t: &mut Table, rng: &mut ChaCha8Rng, path: &Path) {
    let label = path.display().to_string();
    let file = attempt!(t, "fixture", format!("read {label}"), read_mesh(path));
    let s = attempt!(t, "fixture", "triangle mesh", file.to_surface());
    let d = s.diagnostics();
    t.at_most("fixture", "closed oriented manifold (problems)", d.problems().len() as f64, 0.0);
    let r = attempt!(t, "fixture", "energy", willmore_total(&s));
    t.at_most("fixture", "edge/vertex totals agree", r.consistency_defect(), 1e-10);
    moebius_check(t, "fixture", "inversion", &s, &random_inversion(rng));
    if s.colors().is_some() {
        let bound = attempt!(t, "fixture", "bound", steinitz_bound(&s));
        t.at_most("fixture", "coloring bound - W", bound - r.total, 1e-8);
    }
}

pub fn run(cfg: &RunConfig, suites: &[String], mesh: Option<&Path>) -> Result<(), CliError> {
    for s in suites {
        if !SUITES.contains(&s.as_str()) && s != "fixture" {
            return Err(CliError::usage(format!("unknown suite `{s}`; known: {}, fixture", SUITES.join(", "))));
        }
    }
    if suites.iter().any(|s| s == "fixture") && mesh.is_none() {
        return Err(CliError::usage("the fixture suite needs --mesh FILE"));
    }
    let wanted = |name: &str| suites.is_empty() || suites.iter().any(|s| s == name);
    let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut t = Table::default();
    // each suite draws from its own stream so selecting suites does not shift the others
    let stream = |i: u64| {
        let mut r = rng.clone();
        r.set_stream(i);
        r
    };
    type Suite = fn(&mut Table, &mut ChaCha8Rng);
    let seeded: [(&str, Suite); 8] = [
        ("willmore", willmore),
        ("moebius", moebius),
        ("steinitz", steinitz),
        ("smooth", smooth),
        ("bending", bending),
        ("solver", solver),
        ("layout", layout_suite),
        ("miquel", miquel),
    ];
    for (i, (name, f)) in seeded.iter().enumerate() {
        if wanted(name) {
            f(&mut t, &mut stream(i as u64 + 1));
        }
    }
    if wanted("enneper") {
        enneper(&mut t);
    }
    if wanted("schwarzp") {
        schwarzp(&mut t);
    }
    if let Some(p) = mesh {
        if wanted("fixture") || suites.is_empty() {
            fixture(&mut t, &mut stream(100), p);
        }
    }
    println!("{:<10} {:<44} {:>12} {:>10}  result", "suite", "check", "value", "limit");
    for r in &t.rows {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("{:<10} {:<44} {:>12.3e} {:>10.0e}  {status}", r.suite, r.check, r.value, r.limit);
    }
    let failed = t.rows.iter().filter(|r| !r.pass).count();
    println!("seed = {}", cfg.seed);
    println!("{} checks, {} failed", t.rows.len(), failed);
    if failed > 0 {
        return Err(CliError::new(1, format!("{failed} check(s) failed")));
    }
    Ok(())
}

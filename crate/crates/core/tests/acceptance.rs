//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::time::{Duration, Instant};

use circlesurf::energy::{edge_beta, model_hexagon, quotient_q, willmore_total, LatticeAngles};
use circlesurf::geom::fit::fit_sphere;
use circlesurf::geom::{circumcircle, miquel_point, MiquelCube, MobiusMap, Point3, Sphere3};
use circlesurf::mesh::generators::{convex_hull, miquel_polyhedron, steinitz_example, tetrahedron};
use circlesurf::mesh::{QuadGraph, SimplicialSurface};
use circlesurf::pattern::{
    functional_s, gradient_s, hessian_s, im_li2_i_exp, layout, solve, square_grid, NodeData, PatternLayout,
    PatternNode, PatternProblem, SolverOptions,
};
use circlesurf::surfaces::{build_enneper, build_schwarz_p, dualize, is_discrete_minimal, kite_defects, quarter_problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Catalan's constant, from the literature.
const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let r = f()?;
    let dt = t.elapsed();
    ensure(dt < limit, format!("{r}, {:.2}s (limit {}s)", dt.as_secs_f64(), limit.as_secs()))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Uniform on the unit sphere by rejection from the cube.
fn sphere_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point3> {
    (0..n)
        .map(|_| loop {
            let p = Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let r = p.norm();
            if r > 1e-3 && r <= 1.0 {
                break p * (1.0 / r);
            }
        })
        .collect()
}

fn inscribed_zero_energy() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = convex_hull(&sphere_points(&mut rng, 200)).map_err(err)?;
        let w = willmore_total(&s).map_err(err)?.total;
        ensure(s.vertex_count() == 200 && w.abs() <= 1e-8, format!("|W| = {:.2e}", w.abs()))
    })
}

fn mobius_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let mut pts = sphere_points(&mut rng, 20 + 4 * i);
        let hull = convex_hull(&pts).map_err(err)?;
        for p in &mut pts {
            *p = *p * rng.gen_range(0.8..1.2);
        }
        let s = hull.with_positions(pts).map_err(err)?;
        // all points lie in the ball of radius 1.2; the centre sits outside it
        let dir = sphere_points(&mut rng, 1)[0];
        let inv = Sphere3::new(dir * rng.gen_range(1.5..4.0), rng.gen_range(0.3..2.0)).map_err(err)?;
        let m = MobiusMap::inversion(inv);
        let moved = m.apply_all(s.positions().unwrap()).map_err(err)?;
        let w0 = willmore_total(&s).map_err(err)?.total;
        let w1 = willmore_total(&s.clone().with_positions(moved).map_err(err)?).map_err(err)?.total;
        worst = worst.max((w1 - w0).abs() / (1.0 + w0.abs()));
    }
    ensure(worst <= 1e-6, format!("max |dW|/(1+|W|) = {worst:.2e}"))
}

fn random_tetra(rng: &mut ChaCha8Rng) -> [Point3; 4] {
    let t = tetrahedron();
    let p = t.positions().unwrap();
    std::array::from_fn(|i| p[i] + Point3::new(rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1)))
}

fn steinitz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fixture = steinitz_example();
    let mut lowest = f64::INFINITY;
    for _ in 0..50 {
        let params: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.25..0.75));
        let base = miquel_polyhedron(random_tetra(&mut rng), params).map_err(err)?;
        let pos: Vec<Point3> = base
            .positions()
            .unwrap()
            .iter()
            .map(|&p| p + Point3::new(rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05)))
            .collect();
        let s = fixture.clone().with_positions(pos).map_err(err)?;
        lowest = lowest.min(willmore_total(&s).map_err(err)?.total);
    }
    let params: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.25..0.75));
    let miquel = miquel_polyhedron(random_tetra(&mut rng), params).map_err(err)?;
    let w = willmore_total(&miquel).map_err(err)?.total;
    ensure(
        lowest >= 2.0 * PI - 1e-8 && (w - 2.0 * PI).abs() <= 1e-7,
        format!("min W = {lowest:.6}, Miquel |W - 2pi| = {:.2e}", (w - 2.0 * PI).abs()),
    )
}

/// Second closed form of the quotient, written with sines; an independent
/// check on the cosine form used by the library.
fn q_sine_form(p1: f64, p2: f64, p3: f64) -> f64 {
    let num = (2.0 * p1).sin() * (2.0 * (p1 + p2)).sin()
        + 2.0 * p2.cos() * (2.0 * p1 + p2).sin() * (2.0 * (p1 + p2 + p3)).sin();
    num / (4.0 * p2.cos() * p3.cos() * (p2 + p3).cos())
}

fn smooth_limit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut q_err = 0.0f64;
    for _ in 0..10 {
        let phi = LatticeAngles::new(rng.gen_range(0.0..FRAC_PI_2), FRAC_PI_3, FRAC_PI_3).map_err(err)?;
        q_err = q_err.max((quotient_q(&phi).map_err(err)? - 1.5).abs());
    }
    let mut ratio_err = 0.0f64;
    for _ in 0..10 {
        let (p2, p3) = loop {
            let (x, y) = (rng.gen_range(0.4..1.35), rng.gen_range(0.4..1.35));
            if x + y > FRAC_PI_2 + 0.15 {
                break (x, y);
            }
        };
        let phi = LatticeAngles::new(rng.gen_range(0.0..FRAC_PI_2), p2, p3).map_err(err)?;
        let (k1, k2) = (rng.gen_range(0.2..2.0), rng.gen_range(-2.0..0.1));
        let h = model_hexagon(k1, k2, &phi, 1e-3).map_err(err)?;
        let q = q_sine_form(phi.phi1, phi.phi2, phi.phi3);
        let ratio = h.discrete_energy().map_err(err)? / h.smooth_energy(k1, k2);
        ratio_err = ratio_err.max((ratio - q).abs() / q);
    }
    ensure(
        q_err <= 1e-12 && ratio_err <= 1e-2,
        format!("|Q - 3/2| = {q_err:.2e}, hexagon ratio rel. err = {ratio_err:.2e}"),
    )
}

/// Two triangles on the edge `(±l3, 0, 0)` with circumcentres at signed
/// distances `l1`, `l2` from the midpoint, the second rotated by `theta`
/// about the edge.
fn hinge(l1: f64, l2: f64, l3: f64, t1: f64, t2: f64, theta: f64) -> SimplicialSurface {
    let (r1, r2) = (l1.hypot(l3), l2.hypot(l3));
    let apex1 = Point3::new(r1 * t1.cos(), l1 + r1 * t1.sin(), 0.0);
    let (x, y) = (r2 * t2.cos(), -(l2 + r2 * t2.sin()));
    let apex2 = Point3::new(x, y * theta.cos(), y * theta.sin());
    let p = vec![Point3::new(-l3, 0.0, 0.0), Point3::new(l3, 0.0, 0.0), apex1, apex2];
    SimplicialSurface::new(p, vec![[0, 1, 2], [1, 0, 3]]).unwrap()
}

fn bending_asymptotics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let theta = 1e-3;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (l1, l2, l3) = (rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0), rng.gen_range(0.2..2.0));
        let (t1, t2) = (rng.gen_range(0.2..PI - 0.2), rng.gen_range(0.2..PI - 0.2));
        let b0 = edge_beta(&hinge(l1, l2, l3, t1, t2, 0.0), 0, 1).map_err(err)?;
        let b1 = edge_beta(&hinge(l1, l2, l3, t1, t2, theta), 0, 1).map_err(err)?;
        let coeff = (b1 - b0) / (theta * theta);
        let (l, big_l) = (2.0 * l3, l1 + l2);
        let expected = l / (4.0 * big_l);
        worst = worst.max((coeff - expected).abs() / expected);
    }
    ensure(worst <= 1e-4, format!("max rel. err = {worst:.2e}"))
}

fn random_problem(rng: &mut ChaCha8Rng, n: usize) -> PatternProblem {
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
    PatternProblem::new(nodes).unwrap()
}

fn solver_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut g_err, mut h_err, mut min_eig) = (0.0f64, 0.0f64, f64::INFINITY);
    let h_step = 1e-5;
    for probe in 0..100 {
        let n = rng.gen_range(5..25);
        let p = random_problem(&mut rng, n);
        let rho: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let h = hessian_s(&p, &rho);
        min_eig = min_eig.min(h.clone().symmetric_eigen().eigenvalues.min());
        if probe % 10 != 0 {
            continue;
        }
        let g = gradient_s(&p, &rho);
        for j in 0..n {
            let (mut a, mut b) = (rho.clone(), rho.clone());
            a[j] += h_step;
            b[j] -= h_step;
            let fd = (functional_s(&p, &a) - functional_s(&p, &b)) / (2.0 * h_step);
            g_err = g_err.max((fd - g[j]).abs() / g[j].abs().max(1.0));
            let (ga, gb) = (gradient_s(&p, &a), gradient_s(&p, &b));
            for k in 0..n {
                let fd = (ga[k] - gb[k]) / (2.0 * h_step);
                h_err = h_err.max((fd - h[(k, j)]).abs() / h[(k, j)].abs().max(1.0));
            }
        }
    }
    let grid = square_grid(8, 8, true).map_err(err)?;
    let s = solve(&grid, &SolverOptions::default()).map_err(err)?;
    let rho_max = s.rho.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let catalan = (im_li2_i_exp(0.0) - CATALAN).abs();
    ensure(
        g_err <= 1e-6 && h_err <= 1e-5 && min_eig >= -1e-12 && rho_max <= 1e-10 && s.iterations <= 20 && catalan <= 1e-10,
        format!(
            "grad {g_err:.1e}, Hessian {h_err:.1e}, min eig {min_eig:.1e}, grid |rho| {rho_max:.1e} in {} steps, Catalan {catalan:.1e}",
            s.iterations
        ),
    )
}

/// `|d² − (r_j² + r_k²)| / (r_j² + r_k²)` over all adjacencies.
fn orthogonality(p: &PatternProblem, l: &PatternLayout) -> f64 {
    p.edges()
        .iter()
        .map(|&(j, k)| {
            let d2 = (l.centers[j] - l.centers[k]).norm_squared();
            let s = l.radii[j].powi(2) + l.radii[k].powi(2);
            (d2 - s).abs() / s
        })
        .fold(0.0, f64::max)
}

fn layout_fidelity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fixtures = Vec::new();
    for (m, n) in [(5, 5), (8, 6), (10, 10)] {
        let mut nodes = square_grid(m, n, true).map_err(err)?.nodes().to_vec();
        for node in &mut nodes {
            if let NodeData::Dirichlet(_) = node.data {
                node.data = NodeData::Dirichlet(rng.gen_range(-0.5..0.5));
            }
        }
        fixtures.push(PatternProblem::new(nodes).map_err(err)?);
    }
    fixtures.push(square_grid(6, 4, false).map_err(err)?);
    for size in [(2, 2, 2), (4, 4, 4), (2, 4, 6)] {
        fixtures.push(quarter_problem(size.0, size.1, size.2).map_err(err)?.problem);
    }
    let mut worst = 0.0f64;
    for p in &fixtures {
        let s = solve(p, &SolverOptions::default()).map_err(err)?;
        worst = worst.max(orthogonality(p, &layout(p, &s.rho).map_err(err)?));
    }
    ensure(worst <= 1e-8, format!("{} fixtures, max residual {worst:.2e}", fixtures.len()))
}

/// Dualizing twice returns the original net up to translation, relative to
/// its size.
fn dual_of_dual(original: &QuadGraph, dual: &QuadGraph) -> Result<f64, String> {
    let back = dualize(dual).map_err(err)?.quad;
    let (a, b) = (original.positions().unwrap(), back.positions().unwrap());
    let used: Vec<usize> = (0..a.len()).filter(|&v| !original.adjacency()[v].is_empty()).collect();
    let shift = b[used[0]] - a[used[0]];
    let size = used.iter().map(|&v| (a[v] - a[used[0]]).norm()).fold(0.0, f64::max);
    Ok(used.iter().map(|&v| (b[v] - shift - a[v]).norm()).fold(0.0, f64::max) / size)
}

fn enneper_pipeline() -> Outcome {
    timed(Duration::from_secs(10), || {
        let e = build_enneper(3).map_err(err)?;
        let tangency = e.koebe.edge_tangency_defect();
        let ext = e.koebe_surface.central_extension().map_err(err)?;
        let kites = kite_defects(&ext).map_err(err)?.cross_ratio.max(kite_defects(&e.dual.quad).map_err(err)?.cross_ratio);
        let minimality = is_discrete_minimal(&e.surface).map_err(err)?.max_defect;
        let involution = dual_of_dual(&ext, &e.dual.quad)?;
        ensure(
            tangency <= 1e-8 && kites <= 1e-8 && minimality <= 1e-7 && involution <= 1e-10,
            format!("tangency {tangency:.1e}, kites {kites:.1e}, minimality {minimality:.1e}, dual-of-dual {involution:.1e}"),
        )
    })
}

fn schwarz_p_pipeline() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut parts = Vec::new();
        for (m, n, k) in [(2, 2, 2), (4, 4, 4)] {
            let s = build_schwarz_p(m, n, k).map_err(err)?;
            let p = &s.quarter.problem;
            let phis: Vec<f64> = p
                .nodes()
                .iter()
                .filter_map(|n| match n.data {
                    NodeData::Neumann(v) => Some(v),
                    NodeData::Dirichlet(_) => None,
                })
                .collect();
            let corners = phis.iter().filter(|&&v| (v - FRAC_PI_2).abs() < 1e-15).count();
            let boundary_ok = phis.iter().all(|&v| [FRAC_PI_2, PI, 2.0 * PI].iter().any(|&t| (v - t).abs() < 1e-15));
            let residual = s.solution.residual;
            let planes = s.symmetry_plane_defect();
            let minimality = is_discrete_minimal(&s.surface).map_err(err)?.max_defect;
            let ok = corners == 2 && boundary_ok && residual <= 1e-10 && planes <= 1e-7 && minimality <= 1e-7;
            let line = format!("({m},{n},{k}) residual {residual:.1e}, planes {planes:.1e}, minimality {minimality:.1e}");
            if !ok {
                return Err(format!("{line}, corners {corners}, boundary data ok {boundary_ok}"));
            }
            parts.push(line);
        }
        Ok(parts.join("; "))
    })
}

fn miquel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut conc, mut sph) = (0.0f64, 0.0f64);
    let mut i = 0;
    while i < 100 {
        let mut r = || Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (v0, v1, v2, v3) = (r(), r(), r(), r());
        let (t1, t2, t3) = (rng.gen_range(0.0..6.28), rng.gen_range(0.0..6.28), rng.gen_range(0.0..6.28));
        let circles = (circumcircle(v0, v1, v2), circumcircle(v0, v1, v3), circumcircle(v0, v2, v3));
        let (Ok(c12), Ok(c13), Ok(c23)) = circles else { continue };
        let cube = MiquelCube { v0, v1, v2, v3, v12: c12.point_at(t1), v13: c13.point_at(t2), v23: c23.point_at(t3) };
        let Ok(m) = miquel_point(&cube) else { continue };
        let mut pts = cube.points().to_vec();
        pts.push(m.point);
        let scale = pts.iter().map(|p| p.distance(v0)).fold(0.0, f64::max);
        // independent concurrency check: the point lies on all three completing circles
        for [a, b, c] in cube.completing_triples() {
            let circ = circumcircle(a, b, c).map_err(err)?;
            let off = m.point - circ.center;
            let along = off.dot(circ.normal);
            let radial = ((off - circ.normal * along).norm() - circ.radius).abs();
            conc = conc.max(along.abs().max(radial) / scale);
        }
        sph = sph.max(fit_sphere(&pts).map_err(err)?.max_defect() / scale);
        i += 1;
    }
    ensure(conc <= 1e-8 && sph <= 1e-8, format!("concurrency {conc:.1e}, co-sphericity {sph:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("inscribed polyhedron has zero energy", inscribed_zero_energy),
        ("Moebius invariance", mobius_invariance),
        ("Steinitz bound and Miquel equality", steinitz),
        ("smooth-limit quotient", smooth_limit),
        ("bending asymptotics", bending_asymptotics),
        ("solver correctness", solver_correctness),
        ("layout fidelity", layout_fidelity),
        ("Enneper pipeline", enneper_pipeline),
        ("Schwarz-P pipeline", schwarz_p_pipeline),
        ("Miquel property", miquel),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

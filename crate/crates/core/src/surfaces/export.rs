use std::fmt::Write;

use super::sisothermic::SIsothermicSurface;
use super::SurfaceError;
use crate::mesh::generators::icosahedron;
use crate::mesh::io::to_obj;
use crate::mesh::QuadGraph;

/// OBJ of a kite mesh (any quad-graph with positions).
pub fn kites_to_obj(q: &QuadGraph) -> Result<String, SurfaceError> {
    let pos = q.require_positions()?;
    let faces: Vec<Vec<usize>> = q.faces().iter().map(|f| f.to_vec()).collect();
    Ok(to_obj(pos, &faces))
}

/// OBJ proxy geometry for viewers: circles as closed polylines with
/// `segments` vertices and spheres as scaled icosahedra.
pub fn proxies_to_obj(s: &SIsothermicSurface, segments: usize) -> String {
    let segments = segments.max(3);
    let ico = icosahedron();
    let ico_pos = ico.positions().expect("generator has positions");
    let mut out = String::new();
    let mut base = 1;
    for (v, c) in &s.circles {
        let _ = writeln!(out, "o circle_{v}");
        for i in 0..segments {
            let p = c.point_at(std::f64::consts::TAU * i as f64 / segments as f64);
            let _ = writeln!(out, "v {} {} {}", p.x, p.y, p.z);
        }
        let idx: Vec<String> = (0..=segments).map(|i| (base + i % segments).to_string()).collect();
        let _ = writeln!(out, "l {}", idx.join(" "));
        base += segments;
    }
    for (v, sp) in &s.spheres {
        let _ = writeln!(out, "o sphere_{v}");
        for &p in ico_pos {
            let q = sp.center + p * sp.radius;
            let _ = writeln!(out, "v {} {} {}", q.x, q.y, q.z);
        }
        for f in ico.faces() {
            let _ = writeln!(out, "f {} {} {}", base + f[0], base + f[1], base + f[2]);
        }
        base += ico_pos.len();
    }
    out
}

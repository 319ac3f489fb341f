//! Example surfaces: Platonic solids, convex hulls and the 14-vertex
//! Steinitz sphere with its Miquel realization.

use super::{MeshError, SimplicialSurface, VertexColor};
use crate::geom::circle::{circumcircle, is_degenerate_triangle};
use crate::geom::miquel::second_circle_intersection;
use crate::geom::Point3;

const TETRA_FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 1], [1, 3, 2], [0, 2, 3]];
const TETRA_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Regular tetrahedron inscribed in the unit sphere.
pub fn tetrahedron() -> SimplicialSurface {
    let s = 1.0 / 3f64.sqrt();
    let p = vec![
        Point3::new(s, s, s),
        Point3::new(s, -s, -s),
        Point3::new(-s, s, -s),
        Point3::new(-s, -s, s),
    ];
    SimplicialSurface::new(p, TETRA_FACES.to_vec()).expect("valid")
}

pub fn octahedron() -> SimplicialSurface {
    let p = vec![Point3::X, -Point3::X, Point3::Y, -Point3::Y, Point3::Z, -Point3::Z];
    let faces = vec![
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    SimplicialSurface::new(p, faces).expect("valid")
}

/// Regular icosahedron inscribed in the unit sphere.
pub fn icosahedron() -> SimplicialSurface {
    let pts: Vec<Point3> = (0..12)
        .map(|i| {
            let g = (1.0 + 5f64.sqrt()) / 2.0;
            let (a, b) = (if i & 1 == 0 { 1.0 } else { -1.0 }, if i & 2 == 0 { g } else { -g });
            match i / 4 {
                0 => Point3::new(0.0, a, b),
                1 => Point3::new(a, b, 0.0),
                _ => Point3::new(b, 0.0, a),
            }
        })
        .map(|p| p.normalized().expect("nonzero"))
        .collect();
    convex_hull(&pts).expect("icosahedron hull")
}

/// Radial projection of all vertices to the unit sphere.
pub fn project_to_unit_sphere(s: &SimplicialSurface) -> Result<SimplicialSurface, MeshError> {
    let p = s.require_positions()?;
    let q = p
        .iter()
        .map(|v| v.normalized().ok_or(MeshError::Construction("vertex at the origin".into())))
        .collect::<Result<Vec<_>, _>>()?;
    s.clone().with_positions(q)
}

/// Convex hull of points in general position, as an outward-oriented
/// triangulated sphere. Points strictly inside the hull become isolated
/// and are dropped; the returned vertex order follows the input order.
pub fn convex_hull(pts: &[Point3]) -> Result<SimplicialSurface, MeshError> {
    let n = pts.len();
    if n < 4 {
        return Err(MeshError::Construction("convex hull needs at least four points".into()));
    }
    let scale = pts.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-300);
    let eps = 1e-12 * scale * scale;
    // initial tetrahedron
    let i0 = 0;
    let i1 = (1..n)
        .max_by(|&a, &b| pts[a].distance(pts[i0]).total_cmp(&pts[b].distance(pts[i0])))
        .expect("n ≥ 4");
    let area = |k: usize| (pts[i1] - pts[i0]).cross(pts[k] - pts[i0]).norm();
    let i2 = (0..n).max_by(|&a, &b| area(a).total_cmp(&area(b))).expect("n ≥ 4");
    let vol = |k: usize| (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).dot(pts[k] - pts[i0]);
    let i3 = (0..n).max_by(|&a, &b| vol(a).abs().total_cmp(&vol(b).abs())).expect("n ≥ 4");
    if vol(i3).abs() <= eps * scale || area(i2) <= eps {
        return Err(MeshError::Construction("points are coplanar".into()));
    }
    let mut faces: Vec<[usize; 3]> = if vol(i3) < 0.0 {
        vec![[i0, i1, i2], [i0, i3, i1], [i1, i3, i2], [i0, i2, i3]]
    } else {
        vec![[i0, i2, i1], [i0, i1, i3], [i1, i2, i3], [i0, i3, i2]]
    };
    let above = |f: &[usize; 3], p: Point3| {
        let n = (pts[f[1]] - pts[f[0]]).cross(pts[f[2]] - pts[f[0]]);
        n.dot(p - pts[f[0]])
    };
    for k in 0..n {
        if [i0, i1, i2, i3].contains(&k) {
            continue;
        }
        let visible: Vec<bool> = faces.iter().map(|f| above(f, pts[k]) > eps * scale).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut directed = std::collections::BTreeSet::new();
        for (f, &v) in faces.iter().zip(&visible) {
            if v {
                for j in 0..3 {
                    directed.insert((f[j], f[(j + 1) % 3]));
                }
            }
        }
        let mut next = Vec::new();
        for (f, &v) in faces.iter().zip(&visible) {
            if v {
                for j in 0..3 {
                    let (a, b) = (f[j], f[(j + 1) % 3]);
                    if !directed.contains(&(b, a)) {
                        next.push([a, b, k]);
                    }
                }
            } else {
                next.push(*f);
            }
        }
        faces = next;
    }
    let mut used = vec![false; n];
    for f in &faces {
        for &v in f {
            used[v] = true;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for i in 0..n {
        if used[i] {
            map[i] = kept.len();
            kept.push(pts[i]);
        }
    }
    let faces = faces.iter().map(|f| [map[f[0]], map[f[1]], map[f[2]]]).collect();
    SimplicialSurface::new(kept, faces)
}

fn steinitz_faces() -> Vec<[usize; 3]> {
    let e = |a: usize, b: usize| {
        4 + TETRA_EDGES
            .iter()
            .position(|&(x, y)| (x, y) == (a.min(b), a.max(b)))
            .expect("tetrahedron edge")
    };
    let mut faces = Vec::with_capacity(24);
    for (fi, &[a, b, c]) in TETRA_FACES.iter().enumerate() {
        let (ab, bc, ca) = (e(a, b), e(b, c), e(c, a));
        let f = 10 + fi;
        faces.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [f, ab, bc], [f, bc, ca], [f, ca, ab]]);
    }
    faces
}

fn steinitz_colors() -> Vec<VertexColor> {
    (0..14)
        .map(|i| if (4..10).contains(&i) { VertexColor::Black } else { VertexColor::White })
        .collect()
}

/// The 14-vertex sphere obtained from a tetrahedron by inserting a black
/// vertex on each edge and a white vertex in each face. Vertices `0..4` are
/// the tetrahedron corners, `4..10` the edge points (edges in lexicographic
/// order) and `10..14` the face points.
pub fn steinitz_example() -> SimplicialSurface {
    SimplicialSurface::from_faces(14, steinitz_faces())
        .and_then(|s| s.with_colors(steinitz_colors()))
        .expect("valid")
}

/// Realizes the Steinitz combinatorics over the tetrahedron `tetra`
/// (oriented so that `(0,1,2)` is seen counterclockwise from outside).
/// `edge_params[k]` places the black vertex on the `k`-th edge `(a, b)` at
/// `a + t (b − a)`; each face point is the common point of the three circles
/// through a corner and its two adjacent edge points.
pub fn miquel_polyhedron(tetra: [Point3; 4], edge_params: [f64; 6]) -> Result<SimplicialSurface, MeshError> {
    for &[a, b, c] in &TETRA_FACES {
        if is_degenerate_triangle(tetra[a], tetra[b], tetra[c]) {
            return Err(MeshError::Construction("degenerate tetrahedron face".into()));
        }
    }
    let mut pos = tetra.to_vec();
    for (k, &(a, b)) in TETRA_EDGES.iter().enumerate() {
        let t = edge_params[k];
        if !(t > 0.0 && t < 1.0) {
            return Err(MeshError::Construction(format!("edge point {k} not strictly inside its edge (t = {t})")));
        }
        pos.push(tetra[a].lerp(tetra[b], t));
    }
    let scale = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .map(|(i, j)| tetra[i].distance(tetra[j]))
        .fold(0.0, f64::max);
    let e = |a: usize, b: usize| {
        4 + TETRA_EDGES.iter().position(|&(x, y)| (x, y) == (a.min(b), a.max(b))).expect("edge")
    };
    for &[a, b, c] in &TETRA_FACES {
        let (ab, bc, ca) = (pos[e(a, b)], pos[e(b, c)], pos[e(c, a)]);
        let (p, gap) = second_circle_intersection(ab, pos[a], ca, pos[b], bc)?;
        let third = circumcircle(pos[c], ca, bc)?;
        let residual = gap.max(third.distance_to(p));
        if residual > 1e-8 * scale {
            return Err(MeshError::Construction(format!("Miquel circles not concurrent (residual {residual:.3e})")));
        }
        pos.push(p);
    }
    SimplicialSurface::new(pos, steinitz_faces())?.with_colors(steinitz_colors())
}

//! Discrete Schwarz-P surfaces from the refined cube.
//!
//! The box `[0, m] × [0, n] × [0, k]` is subdivided into unit squares. A
//! lattice point with no odd coordinate carries a circle, one with two odd
//! coordinates a sphere, the rest are contact points. The pattern is solved
//! on a quarter of the sphere: the two face centres on the pole axis go to
//! the origin and to infinity, the two symmetry planes through that axis
//! become straight lines. The circle at infinity is dropped; symmetry forces
//! its one neighbour in the quarter to have the same radius, which leaves
//! that neighbour with the angle sum `π/2`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use super::dual::DualSurface;
use super::koebe::{koebe_polyhedron, KoebePolyhedron};
use super::lift::SpherePattern;
use super::sisothermic::SIsothermicSurface;
use super::SurfaceError;
use crate::geom::{Circle3, Point2, Point3};
use crate::mesh::{QuadGraph, VertexColor};
use crate::pattern::{layout, solve, NodeData, PatternLayout, PatternNode, PatternProblem, PatternSolution, SolverOptions};

pub type Lattice = [i64; 3];

/// Unit-square subdivision of a box surface, faces oriented outward.
struct BoxGrid {
    half: Lattice,
    /// Coordinates centred at the box centre.
    points: Vec<Lattice>,
    quad: QuadGraph,
}

fn box_grid(size: Lattice) -> Result<BoxGrid, SurfaceError> {
    let mut points = Vec::new();
    let mut index = BTreeMap::new();
    for x in 0..=size[0] {
        for y in 0..=size[1] {
            for z in 0..=size[2] {
                let p = [x, y, z];
                if (0..3).any(|a| p[a] == 0 || p[a] == size[a]) {
                    index.insert(p, points.len());
                    points.push(p);
                }
            }
        }
    }
    let colors = points
        .iter()
        .map(|p| match p.iter().filter(|c| c.rem_euclid(2) == 1).count() {
            0 => VertexColor::WhiteC,
            1 => VertexColor::Black,
            _ => VertexColor::WhiteS,
        })
        .collect();
    let mut faces = Vec::new();
    for a in 0..3 {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        for side in [0, size[a]] {
            for i in 0..size[b] {
                for j in 0..size[c] {
                    let at = |di: i64, dj: i64| {
                        let mut p = [0; 3];
                        p[a] = side;
                        p[b] = i + di;
                        p[c] = j + dj;
                        index[&p]
                    };
                    let mut f = [at(0, 0), at(1, 0), at(1, 1), at(0, 1)];
                    if side == 0 {
                        f.reverse();
                    }
                    faces.push(f);
                }
            }
        }
    }
    let half = [size[0] / 2, size[1] / 2, size[2] / 2];
    let points = points.iter().map(|p| [p[0] - half[0], p[1] - half[1], p[2] - half[2]]).collect();
    Ok(BoxGrid { half, points, quad: QuadGraph::new(colors, faces)? })
}

/// Validates the sizes and picks the pole axis: one whose two companions
/// have half-sizes of equal parity, so both pole face centres are circles or
/// spheres. Returns the sizes reordered with the pole axis last and the
/// permutation (`perm[i]` is the input axis of internal axis `i`).
fn frame(m: usize, n: usize, k: usize) -> Result<(Lattice, [usize; 3]), SurfaceError> {
    let s = [m, n, k];
    if s.iter().any(|&x| x < 2 || x % 2 == 1) {
        return Err(SurfaceError::InvalidInput(format!(
            "even integers required: got m={m}, n={n}, k={k} (each must be even and at least 2)"
        )));
    }
    let p = [2, 0, 1]
        .into_iter()
        .find(|&p| {
            let o: Vec<usize> = (0..3).filter(|&a| a != p).collect();
            (s[o[0]] / 2) % 2 == (s[o[1]] / 2) % 2
        })
        .expect("two of three parities agree");
    let o: Vec<usize> = (0..3).filter(|&a| a != p).collect();
    let perm = [o[0], o[1], p];
    Ok(([s[perm[0]] as i64, s[perm[1]] as i64, s[perm[2]] as i64], perm))
}

/// The Neumann problem on the quarter `X ≥ 0, Y ≥ 0` of the cube pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarterProblem {
    pub problem: PatternProblem,
    /// Centred lattice coordinates of each node, pole axis last. Node 0 is
    /// the face centre sent to the origin.
    pub nodes: Vec<Lattice>,
    /// Node adjacent to the removed circle at infinity.
    pub partner: usize,
}

/// Builds the quarter problem for the box `m × n × k` (even sizes).
pub fn quarter_problem(m: usize, n: usize, k: usize) -> Result<QuarterProblem, SurfaceError> {
    let (size, _) = frame(m, n, k)?;
    Ok(build_quarter(&box_grid(size)?)?.0)
}

/// Returns the quarter problem and the grid vertex of every node.
fn build_quarter(g: &BoxGrid) -> Result<(QuarterProblem, Vec<usize>), SurfaceError> {
    let h = g.half;
    let top = [0, 0, h[2]];
    let bottom = [0, 0, -h[2]];
    let partner_at = [1, 1, h[2]];
    let mut verts: Vec<usize> = (0..g.points.len())
        .filter(|&v| {
            let c = g.points[v];
            g.quad.color(v).is_white() && c[0] >= 0 && c[1] >= 0 && c != top
        })
        .collect();
    verts.sort_by_key(|&v| g.points[v] != bottom);
    let node_of: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut nodes = Vec::with_capacity(verts.len());
    for &v in &verts {
        let c = g.points[v];
        let nb = g.quad.vertex_star(v)?.opposite;
        let keep: Vec<bool> = nb.iter().map(|u| node_of.contains_key(u)).collect();
        let d = nb.len();
        let (neighbors, cycle) = if keep.iter().all(|&x| x) {
            (nb.iter().map(|u| node_of[u]).collect(), true)
        } else {
            let starts: Vec<usize> = (0..d).filter(|&i| keep[i] && !keep[(i + d - 1) % d]).collect();
            if starts.len() != 1 {
                return Err(SurfaceError::Pipeline(format!("quarter star of {c:?} is not a single fan")));
            }
            let s = starts[0];
            let list = (0..d).map(|t| (s + t) % d).take_while(|&i| keep[i]).map(|i| node_of[&nb[i]]).collect();
            (list, false)
        };
        let phi = if c == bottom || c == partner_at {
            FRAC_PI_2
        } else if c[0] == 0 || c[1] == 0 {
            PI
        } else {
            2.0 * PI
        };
        if phi == 2.0 * PI && !cycle {
            return Err(SurfaceError::Pipeline(format!("interior quarter node {c:?} lost neighbours")));
        }
        nodes.push(PatternNode { data: NodeData::Neumann(phi), neighbors, cycle });
    }
    let problem = PatternProblem::new(nodes)?;
    let imbalance = problem.neumann_imbalance();
    if imbalance.abs() > 1e-9 {
        return Err(SurfaceError::Pipeline(format!("quarter angle data unbalanced by {imbalance:.3e}")));
    }
    let partner = verts
        .iter()
        .position(|&v| g.points[v] == partner_at)
        .ok_or_else(|| SurfaceError::Pipeline("partner of the circle at infinity missing".into()))?;
    let lattice = verts.iter().map(|&v| g.points[v]).collect();
    Ok((QuarterProblem { problem, nodes: lattice, partner }, verts))
}

/// Intersection points of two planar circles.
fn circle_intersections(c1: Point2, r1: f64, c2: Point2, r2: f64) -> Option<[Point2; 2]> {
    let d = c2 - c1;
    let dist = d.norm();
    if !(dist > 0.0) {
        return None;
    }
    let a = (r1 * r1 - r2 * r2 + dist * dist) / (2.0 * dist);
    let h2 = r1 * r1 - a * a;
    if h2 < -1e-9 * r1 * r1 {
        return None;
    }
    let h = h2.max(0.0).sqrt();
    let u = d / dist;
    let perp = Point2::new(-u.y, u.x);
    let base = c1 + u * a;
    Some([base + perp * h, base - perp * h])
}

/// Discrete Schwarz-P surface with its construction stages.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzPSurface {
    pub size: [usize; 3],
    /// Input axis whose face centres were sent to the poles.
    pub pole_axis: usize,
    pub quarter: QuarterProblem,
    pub solution: PatternSolution,
    /// Normalized planar quarter layout (pole axis last).
    pub layout: PatternLayout,
    /// Largest distance of a symmetry-line circle centre from its axis,
    /// relative to its radius.
    pub symmetry_line_defect: f64,
    /// `| |c_J| − √2 r_J | / r_J` for the partner `J` of the circle at infinity.
    pub partner_defect: f64,
    /// Largest distance of a planar contact point from its four circles,
    /// relative to their radii.
    pub contact_defect: f64,
    /// Spherical pattern on the whole box, in the input frame.
    pub pattern: SpherePattern,
    /// Centred lattice coordinates of each box vertex, input frame.
    pub lattice: Vec<Lattice>,
    pub koebe: KoebePolyhedron,
    pub koebe_surface: SIsothermicSurface,
    /// Box vertex under each vertex of the fundamental piece.
    pub piece_base: Vec<usize>,
    /// Koebe surface pulled back to the fundamental piece.
    pub piece_koebe: SIsothermicSurface,
    pub dual: DualSurface,
    /// The minimal fundamental piece.
    pub surface: SIsothermicSurface,
}

/// Builds the S-isothermic Schwarz-P fundamental piece for even `m, n, k`.
///
/// The piece lies over the three face rectangles of the octant corner
/// `(+, +, +)`, taken twice and glued into a double cover branched at the
/// corner, so that the corner circle has six incident edges.
pub fn build_schwarz_p(m: usize, n: usize, k: usize) -> Result<SchwarzPSurface, SurfaceError> {
    build_schwarz_p_with(m, n, k, &SolverOptions { tol: 1e-12, max_iter: 100 })
}

pub fn build_schwarz_p_with(m: usize, n: usize, k: usize, opts: &SolverOptions) -> Result<SchwarzPSurface, SurfaceError> {
    let (size, perm) = frame(m, n, k)?;
    let g = box_grid(size)?;
    let (quarter, _) = build_quarter(&g)?;
    let solution = solve(&quarter.problem, opts)?;
    let raw = layout(&quarter.problem, &solution.rho)?;
    let (lay, symmetry_line_defect, partner_defect) = normalize(&quarter, raw)?;

    // planar circles on the whole box by reflection, plus the circle at infinity
    let at_node: BTreeMap<Lattice, usize> = quarter.nodes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let r_inf = lay.radii[quarter.partner];
    let mut circles = BTreeMap::new();
    for (v, c) in g.points.iter().enumerate() {
        if !g.quad.color(v).is_white() {
            continue;
        }
        let entry = if c[0] == 0 && c[1] == 0 && c[2] == g.half[2] {
            (Point2::new(0.0, 0.0), r_inf)
        } else {
            let i = at_node[&[c[0].abs(), c[1].abs(), c[2]]];
            let p = lay.centers[i];
            let sx = if c[0] < 0 { -1.0 } else { 1.0 };
            let sy = if c[1] < 0 { -1.0 } else { 1.0 };
            (Point2::new(sx * p.x, sy * p.y), lay.radii[i])
        };
        circles.insert(v, entry);
    }
    let mut points = BTreeMap::new();
    let mut contact_defect: f64 = 0.0;
    for v in 0..g.points.len() {
        if g.quad.color(v).is_white() {
            continue;
        }
        let ring = g.quad.vertex_star(v)?.ring;
        let (c1, r1) = circles[&ring[0]];
        let (c2, r2) = circles[&ring[1]];
        let cand = circle_intersections(c1, r1, c2, r2)
            .ok_or_else(|| SurfaceError::Pipeline(format!("circles at contact {v} do not meet")))?;
        let miss = |p: Point2| {
            ring.iter()
                .map(|w| {
                    let (c, r) = circles[w];
                    (p.distance(c) - r).abs() / r
                })
                .fold(0.0, f64::max)
        };
        let (p, d) = cand.iter().map(|&p| (p, miss(p))).min_by(|a, b| a.1.total_cmp(&b.1)).expect("two");
        contact_defect = contact_defect.max(d);
        points.insert(v, p);
    }
    let planar = SpherePattern::from_planar(g.quad.clone(), &circles, &points)?;
    let to_input = |p: Point3| {
        let v = [p.x, p.y, p.z];
        let mut o = [0.0; 3];
        for i in 0..3 {
            o[perm[i]] = v[i];
        }
        Point3::new(o[0], o[1], o[2])
    };
    let pattern = SpherePattern::new(
        planar.quad,
        planar
            .circles
            .iter()
            .map(|(&v, c)| (v, Circle3 { center: to_input(c.center), normal: to_input(c.normal), ..*c }))
            .collect(),
        planar.points.iter().map(|(&v, &p)| (v, to_input(p))).collect(),
    )?;
    let lattice: Vec<Lattice> = g
        .points
        .iter()
        .map(|c| {
            let mut o = [0; 3];
            for i in 0..3 {
                o[perm[i]] = c[i];
            }
            o
        })
        .collect();
    let (koebe, koebe_surface) = koebe_polyhedron(&pattern)?;

    let mut half = [0; 3];
    for i in 0..3 {
        half[perm[i]] = g.half[i];
    }
    let (cover, piece_base) = build_cover(&pattern.quad, &lattice, half)?;
    let pick = |v: &usize| piece_base[*v];
    let mut spheres = BTreeMap::new();
    let mut pcircles = BTreeMap::new();
    let mut contacts = BTreeMap::new();
    for v in 0..cover.vertex_count() {
        let b = pick(&v);
        if let Some(s) = koebe_surface.spheres.get(&b) {
            spheres.insert(v, *s);
        } else if let Some(c) = koebe_surface.circles.get(&b) {
            pcircles.insert(v, *c);
        } else {
            contacts.insert(v, koebe_surface.contacts[&b]);
        }
    }
    let piece_koebe = SIsothermicSurface::new(cover, spheres, pcircles, contacts)?;
    let (dual, surface) = piece_koebe.dual()?;
    Ok(SchwarzPSurface {
        size: [m, n, k],
        pole_axis: perm[2],
        quarter,
        solution,
        layout: lay,
        symmetry_line_defect,
        partner_defect,
        contact_defect,
        pattern,
        lattice,
        koebe,
        koebe_surface,
        piece_base,
        piece_koebe,
        dual,
        surface,
    })
}

/// Moves the origin circle to the origin, the `Y = 0` line onto the
/// positive `x` axis and the `X = 0` line onto the positive `y` axis, and
/// scales so that the origin circle and the circle at infinity are swapped
/// by inversion in the unit circle.
fn normalize(q: &QuarterProblem, mut l: PatternLayout) -> Result<(PatternLayout, f64, f64), SurfaceError> {
    let o = l.centers[0];
    let on_x = q.nodes.iter().position(|c| c[1] == 0 && c[0] > 0);
    let on_y = q.nodes.iter().position(|c| c[0] == 0 && c[1] > 0);
    let (Some(ix), Some(iy)) = (on_x, on_y) else {
        return Err(SurfaceError::Pipeline("quarter has no symmetry-line circles".into()));
    };
    let theta = (l.centers[ix] - o).angle();
    let mirror = (l.centers[iy] - o).rotated(-theta).y < 0.0;
    let s = 1.0 / (l.radii[0] * l.radii[q.partner]).sqrt();
    let place = |p: Point2| {
        let r = (p - o).rotated(-theta);
        Point2::new(r.x, if mirror { -r.y } else { r.y }) * s
    };
    for c in &mut l.centers {
        *c = place(*c);
    }
    for r in &mut l.radii {
        *r *= s;
    }
    for (_, pts) in &mut l.intersections {
        for p in pts.iter_mut() {
            *p = place(*p);
        }
    }
    let mut line: f64 = 0.0;
    for (i, c) in q.nodes.iter().enumerate() {
        let p = l.centers[i];
        if c[1] == 0 {
            line = line.max(p.y.abs() / l.radii[i]);
        }
        if c[0] == 0 {
            line = line.max(p.x.abs() / l.radii[i]);
        }
    }
    let j = q.partner;
    let partner = (l.centers[j].norm() - SQRT_2 * l.radii[j]).abs() / l.radii[j];
    Ok((l, line, partner))
}

/// Double cover of the three face rectangles at the corner `half` (all
/// coordinates non-negative), branched at the corner. The sheet changes
/// across the edge shared by the `x` and `z` faces.
fn build_cover(quad: &QuadGraph, lattice: &[Lattice], half: Lattice) -> Result<(QuadGraph, Vec<usize>), SurfaceError> {
    let mut ids: BTreeMap<(usize, u8), usize> = BTreeMap::new();
    let mut base = Vec::new();
    let mut faces = Vec::new();
    for f in quad.faces() {
        let Some(a) = (0..3).find(|&a| f.iter().all(|&v| lattice[v][a] == half[a])) else { continue };
        if !f.iter().all(|&v| lattice[v].iter().all(|&x| x >= 0)) {
            continue;
        }
        for sheet in 0..2u8 {
            let mut face = [0; 4];
            for (i, &v) in f.iter().enumerate() {
                let p = lattice[v];
                let key = if p == half {
                    (v, 2)
                } else if a == 0 && p[2] == half[2] {
                    (v, 1 - sheet)
                } else {
                    (v, sheet)
                };
                let next = ids.len();
                face[i] = *ids.entry(key).or_insert_with(|| {
                    base.push(v);
                    next
                });
            }
            faces.push(face);
        }
    }
    let colors = base.iter().map(|&v| quad.color(v)).collect();
    Ok((QuadGraph::new(colors, faces)?, base))
}

impl SchwarzPSurface {
    /// Centred lattice coordinates (input frame) of each piece vertex.
    pub fn piece_lattice(&self) -> Vec<Lattice> {
        self.piece_base.iter().map(|&b| self.lattice[b]).collect()
    }

    /// Boundary curves of the fundamental piece lie in the coordinate
    /// symmetry planes: for every connected run of boundary edges in the
    /// lattice plane `x_t = 0`, the spread of the dual `x_t` coordinate,
    /// relative to the piece diameter.
    pub fn symmetry_plane_defect(&self) -> f64 {
        let q = &self.dual.quad;
        let pos = q.positions().expect("dual has positions");
        let lat = self.piece_lattice();
        let diam = diameter(pos);
        let mut worst: f64 = 0.0;
        for t in 0..3 {
            let mut parent: Vec<usize> = (0..q.vertex_count()).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut members = vec![false; q.vertex_count()];
            for (a, b) in q.edges() {
                if q.is_boundary_edge(a, b) && lat[a][t] == 0 && lat[b][t] == 0 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                    members[a] = true;
                    members[b] = true;
                }
            }
            let mut range: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
            for v in (0..q.vertex_count()).filter(|&v| members[v]) {
                let x = [pos[v].x, pos[v].y, pos[v].z][t];
                let e = range.entry(find(&mut parent, v)).or_insert((x, x));
                e.0 = e.0.min(x);
                e.1 = e.1.max(x);
            }
            for (lo, hi) in range.values() {
                worst = worst.max((hi - lo) / diam);
            }
        }
        worst
    }

    fn pattern_map_defect(&self, map: impl Fn(Lattice) -> Lattice, lin: impl Fn(Point3) -> Point3) -> f64 {
        let index: BTreeMap<Lattice, usize> = self.lattice.iter().enumerate().map(|(v, &c)| (c, v)).collect();
        let mut worst: f64 = 0.0;
        for (&v, c) in &self.pattern.circles {
            let Some(w) = index.get(&map(self.lattice[v])) else { return f64::INFINITY };
            let d = &self.pattern.circles[w];
            worst = worst.max(d.center.distance(lin(c.center)) + (d.radius - c.radius).abs());
        }
        worst
    }

    /// Deviation of the spherical pattern from the mirror symmetries in the
    /// three coordinate planes. Only the two planes through the pole axis
    /// are imposed by the construction.
    pub fn mirror_defect(&self) -> f64 {
        (0..3)
            .map(|t| {
                self.pattern_map_defect(
                    |mut c| {
                        c[t] = -c[t];
                        c
                    },
                    |p| {
                        let mut v = [p.x, p.y, p.z];
                        v[t] = -v[t];
                        Point3::new(v[0], v[1], v[2])
                    },
                )
            })
            .fold(0.0, f64::max)
    }

    /// For a cube (`m = n = k`): deviation of the spherical pattern from
    /// symmetry under the axis permutations, which together with the mirrors
    /// generate the octahedral group.
    pub fn octahedral_defect(&self) -> Option<f64> {
        let [m, n, k] = self.size;
        if m != n || n != k {
            return None;
        }
        let cyc = self.pattern_map_defect(|c| [c[1], c[2], c[0]], |p| Point3::new(p.y, p.z, p.x));
        let swap = self.pattern_map_defect(|c| [c[1], c[0], c[2]], |p| Point3::new(p.y, p.x, p.z));
        Some(cyc.max(swap).max(self.mirror_defect()))
    }
}

fn diameter(pos: &[Point3]) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in pos {
        for (t, x) in [p.x, p.y, p.z].into_iter().enumerate() {
            lo[t] = lo[t].min(x);
            hi[t] = hi[t].max(x);
        }
    }
    (0..3).map(|t| (hi[t] - lo[t]).powi(2)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_sizes_rejected() {
        let e = build_schwarz_p(2, 3, 2).unwrap_err();
        assert!(e.to_string().contains("even integers required"));
        assert!(build_schwarz_p(0, 2, 2).is_err());
    }

    #[test]
    fn smallest_quarter() {
        let q = quarter_problem(2, 2, 2).unwrap();
        assert_eq!(q.nodes.len(), 5);
        assert_eq!(q.problem.edges().len(), 5);
        assert!(q.problem.neumann_imbalance().abs() < 1e-12);
        assert_eq!(q.nodes[0], [0, 0, -1]);
        assert_eq!(q.nodes[q.partner], [1, 1, 1]);
    }

    #[test]
    fn pole_axis_choice() {
        assert_eq!(frame(2, 2, 4).unwrap().1[2], 2);
        // halves 1, 2, 1: only the y axis leaves equal parities
        assert_eq!(frame(2, 4, 2).unwrap().1[2], 1);
    }

    #[test]
    fn cover_corner_has_six_edges() {
        let s = build_schwarz_p(2, 2, 2).unwrap();
        let q = &s.piece_koebe.quad;
        let lat = s.piece_lattice();
        let corner = (0..q.vertex_count()).find(|&v| lat[v] == [1, 1, 1]).unwrap();
        assert_eq!(q.adjacency()[corner].len(), 6);
        assert!(q.vertex_star(corner).unwrap().closed);
    }
}

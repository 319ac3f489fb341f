use std::collections::BTreeMap;

use super::dual::DualSurface;
use super::koebe::{koebe_polyhedron, KoebePolyhedron};
use super::lift::SpherePattern;
use super::sisothermic::SIsothermicSurface;
use super::SurfaceError;
use crate::geom::{Point2, Point3};
use crate::mesh::{QuadGraph, VertexColor};

/// Discrete Enneper surface with every intermediate stage of its
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct EnneperSurface {
    pub n: usize,
    /// Doubled lattice coordinates of each quad-graph vertex: circles sit at
    /// even, contact points at odd coordinates.
    pub lattice: Vec<(i64, i64)>,
    pub pattern: SpherePattern,
    pub koebe: KoebePolyhedron,
    pub koebe_surface: SIsothermicSurface,
    pub dual: DualSurface,
    pub surface: SIsothermicSurface,
}

/// Square grid of `(2n + 1)²` equal circles centred at the origin with
/// spacing `1/n`, lifted to the sphere, turned into a Koebe polyhedron with
/// spheres on the circles of even index sum, and dualized.
pub fn build_enneper(n: usize) -> Result<EnneperSurface, SurfaceError> {
    if n == 0 {
        return Err(SurfaceError::InvalidInput("Enneper grid half-width must be at least 1".into()));
    }
    let m = n as i64;
    let h = 1.0 / n as f64;
    let mut ids: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut id = |p: (i64, i64)| {
        let k = ids.len();
        *ids.entry(p).or_insert(k)
    };
    // one kite per grid edge with a cell on either side
    let mut kites = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            if a < m && b > -m && b < m {
                kites.push([id((2 * a, 2 * b)), id((2 * a + 1, 2 * b - 1)), id((2 * a + 2, 2 * b)), id((2 * a + 1, 2 * b + 1))]);
            }
            if b < m && a > -m && a < m {
                kites.push([id((2 * a, 2 * b)), id((2 * a + 1, 2 * b + 1)), id((2 * a, 2 * b + 2)), id((2 * a - 1, 2 * b + 1))]);
            }
        }
    }
    let mut lattice = vec![(0, 0); ids.len()];
    for (&p, &v) in &ids {
        lattice[v] = p;
    }
    let mut colors = Vec::with_capacity(lattice.len());
    let mut circles = BTreeMap::new();
    let mut points = BTreeMap::new();
    let r = h / 2f64.sqrt();
    for (v, &(x, y)) in lattice.iter().enumerate() {
        let p = Point2::new(x as f64 * h / 2.0, y as f64 * h / 2.0);
        if x.rem_euclid(2) == 0 {
            colors.push(if (x / 2 + y / 2).rem_euclid(2) == 0 { VertexColor::WhiteS } else { VertexColor::WhiteC });
            circles.insert(v, (p, r));
        } else {
            colors.push(VertexColor::Black);
            points.insert(v, p);
        }
    }
    let quad = QuadGraph::new(colors, kites)?;
    let pattern = SpherePattern::from_planar(quad, &circles, &points)?;
    let (koebe, koebe_surface) = koebe_polyhedron(&pattern)?;
    let (dual, surface) = koebe_surface.dual()?;
    Ok(EnneperSurface { n, lattice, pattern, koebe, koebe_surface, dual, surface })
}

impl EnneperSurface {
    /// Largest deviation, relative to the surface diameter, from symmetry
    /// under the quarter turn and the diagonal reflection of the grid. Each
    /// symmetry may act on the surface with either sign of its linear part.
    pub fn dihedral_defect(&self) -> f64 {
        let pos = self.dual.quad.positions().expect("dual has positions");
        let index: BTreeMap<(i64, i64), usize> = self.lattice.iter().enumerate().map(|(v, &p)| (p, v)).collect();
        let diam = pos.iter().flat_map(|a| pos.iter().map(move |b| a.distance(*b))).fold(0.0, f64::max);
        let rot = |p: Point3| Point3::new(-p.y, p.x, p.z);
        let refl = |p: Point3| Point3::new(p.y, p.x, p.z);
        let maps: [(fn((i64, i64)) -> (i64, i64), &dyn Fn(Point3) -> Point3); 2] =
            [(|(x, y)| (-y, x), &rot), (|(x, y)| (y, x), &refl)];
        let mut worst: f64 = 0.0;
        for (perm, lin) in maps {
            let best = [1.0, -1.0]
                .iter()
                .map(|&sign| {
                    let diffs: Vec<Point3> = (0..pos.len())
                        .map(|v| pos[index[&perm(self.lattice[v])]] - lin(pos[v]) * sign)
                        .collect();
                    let mean = diffs.iter().fold(Point3::ZERO, |a, &d| a + d) / diffs.len() as f64;
                    diffs.iter().map(|&d| (d - mean).norm()).fold(0.0, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best / diam);
        }
        worst
    }
}

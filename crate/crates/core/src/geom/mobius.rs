//! Möbius transformations of `R^3 ∪ {∞}` as compositions of similarities and
//! sphere inversions.

use super::circle::{sphere_invert, Sphere3};
use super::quaternion::Quaternion;
use super::vec3::Point3;
use super::GeomError;

/// One factor of a Möbius map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MobiusAtom {
    /// `p ↦ scale · R(p) + translation` with `R` a rotation given as a unit quaternion.
    Similarity {
        rotation: Quaternion,
        scale: f64,
        translation: Point3,
    },
    Inversion(Sphere3),
}

impl MobiusAtom {
    pub fn apply(&self, p: Point3) -> Result<Point3, GeomError> {
        match *self {
            MobiusAtom::Similarity { rotation, scale, translation } => {
                Ok(rotation.rotate(p) * scale + translation)
            }
            MobiusAtom::Inversion(ref s) => sphere_invert(s, p),
        }
    }

    pub fn inverse(&self) -> MobiusAtom {
        match *self {
            MobiusAtom::Similarity { rotation, scale, translation } => {
                let inv_rot = rotation.conj();
                MobiusAtom::Similarity {
                    rotation: inv_rot,
                    scale: 1.0 / scale,
                    translation: -(inv_rot.rotate(translation) / scale),
                }
            }
            MobiusAtom::Inversion(s) => MobiusAtom::Inversion(s),
        }
    }
}

/// A Möbius transformation, applied atom by atom in list order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MobiusMap {
    pub atoms: Vec<MobiusAtom>,
}

impl MobiusMap {
    pub fn identity() -> Self {
        MobiusMap::default()
    }

    pub fn inversion(s: Sphere3) -> Self {
        MobiusMap { atoms: vec![MobiusAtom::Inversion(s)] }
    }

    pub fn similarity(rotation: Quaternion, scale: f64, translation: Point3) -> Result<Self, GeomError> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(GeomError::Degenerate("similarity scale must be positive"));
        }
        Ok(MobiusMap {
            atoms: vec![MobiusAtom::Similarity {
                rotation: rotation.normalized(),
                scale,
                translation,
            }],
        })
    }

    /// `self` followed by `other`.
    pub fn then(mut self, other: &MobiusMap) -> Self {
        self.atoms.extend(other.atoms.iter().copied());
        self
    }

    pub fn apply(&self, p: Point3) -> Result<Point3, GeomError> {
        self.atoms.iter().try_fold(p, |q, a| a.apply(q))
    }

    pub fn apply_all(&self, pts: &[Point3]) -> Result<Vec<Point3>, GeomError> {
        pts.iter().map(|&p| self.apply(p)).collect()
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { atoms: self.atoms.iter().rev().map(MobiusAtom::inverse).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = MobiusMap::similarity(
            Quaternion::from_axis_angle(Point3::new(1.0, 2.0, -0.5), 0.7),
            2.5,
            Point3::new(0.3, -1.0, 4.0),
        )
        .unwrap()
        .then(&MobiusMap::inversion(Sphere3::new(Point3::new(5.0, 1.0, 1.0), 1.7).unwrap()));
        let p = Point3::new(0.2, 0.9, -1.3);
        let q = m.inverse().apply(m.apply(p).unwrap()).unwrap();
        assert!((p - q).norm() < 1e-12);
    }

    #[test]
    fn bad_scale_rejected() {
        assert!(MobiusMap::similarity(Quaternion::ONE, 0.0, Point3::ZERO).is_err());
    }
}

use circlesurf::geom::{cross_ratio, MobiusMap, Point3, Quaternion, Sphere3};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point3> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn far_apart(pts: &[Point3]) -> bool {
    pts.iter().enumerate().all(|(i, a)| pts[i + 1..].iter().all(|b| a.distance(*b) > 0.1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Inversions change the cross-ratio only by a rotation of its imaginary
    /// part, so the real part and the norm survive.
    #[test]
    fn cross_ratio_invariants_under_inversion(
        a in point(), b in point(), c in point(), d in point(),
        center in (3.0..6.0f64, -1.0..1.0f64, -1.0..1.0f64), radius in 0.5..3.0f64,
    ) {
        prop_assume!(far_apart(&[a, b, c, d]));
        let m = MobiusMap::inversion(Sphere3::new(Point3::new(center.0, center.1, center.2), radius).unwrap());
        let q0 = cross_ratio(a, b, c, d).unwrap();
        let [a1, b1, c1, d1] = [a, b, c, d].map(|p| m.apply(p).unwrap());
        let q1 = cross_ratio(a1, b1, c1, d1).unwrap();
        let scale = 1.0 + q0.norm();
        prop_assert!((q0.w - q1.w).abs() < 1e-8 * scale);
        prop_assert!((q0.norm() - q1.norm()).abs() < 1e-8 * scale);
    }

    #[test]
    fn mobius_inverse_roundtrip(
        p in point(),
        center in (3.0..6.0f64, -1.0..1.0f64, -1.0..1.0f64), radius in 0.5..3.0f64,
        angle in 0.0..6.2f64, scale in 0.2..5.0f64, shift in point(),
    ) {
        let rot = Quaternion::new((angle / 2.0).cos(), 0.0, 0.0, (angle / 2.0).sin());
        let m = MobiusMap::inversion(Sphere3::new(Point3::new(center.0, center.1, center.2), radius).unwrap())
            .then(&MobiusMap::similarity(rot, scale, shift).unwrap());
        let back = m.inverse().apply(m.apply(p).unwrap()).unwrap();
        prop_assert!(back.distance(p) < 1e-9 * (1.0 + p.norm()));
    }
}

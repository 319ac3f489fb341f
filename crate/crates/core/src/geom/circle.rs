use super::quaternion::Quaternion;
use super::vec3::Point3;
use super::GeomError;

/// An oriented circle in space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle3 {
    pub center: Point3,
    pub radius: f64,
    /// Unit normal of the supporting plane.
    pub normal: Point3,
    /// `+1` if the circle runs counterclockwise around `normal`, `-1` otherwise.
    pub orientation: i8,
}

impl Circle3 {
    pub fn new(center: Point3, radius: f64, normal: Point3) -> Result<Self, GeomError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::Degenerate("circle radius must be positive and finite"));
        }
        let normal = normal
            .normalized()
            .ok_or(GeomError::Degenerate("circle normal is zero"))?;
        Ok(Circle3 { center, radius, normal, orientation: 1 })
    }

    /// Distance from `p` to the nearest point of the circle.
    pub fn distance_to(&self, p: Point3) -> f64 {
        let d = p - self.center;
        let h = d.dot(self.normal);
        let planar = (d - self.normal * h).norm();
        (h * h + (planar - self.radius).powi(2)).sqrt()
    }

    /// Point at parameter `t` (radians), measured from an arbitrary in-plane axis.
    pub fn point_at(&self, t: f64) -> Point3 {
        let u = self.normal.any_orthogonal();
        let v = self.normal.cross(u);
        self.center + (u * t.cos() + v * t.sin()) * self.radius
    }

    /// Unit tangent at a point `p` on the circle, following the orientation.
    pub fn tangent_at(&self, p: Point3) -> Point3 {
        let t = self.normal.cross(p - self.center) * f64::from(self.orientation);
        t.normalized().unwrap_or(Point3::ZERO)
    }

    /// Same circle with the reverse orientation.
    pub fn reversed(&self) -> Self {
        Circle3 { orientation: -self.orientation, ..*self }
    }
}

/// A round sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere3 {
    pub center: Point3,
    pub radius: f64,
}

impl Sphere3 {
    pub fn new(center: Point3, radius: f64) -> Result<Self, GeomError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::Degenerate("sphere radius must be positive and finite"));
        }
        Ok(Sphere3 { center, radius })
    }

    pub fn unit() -> Self {
        Sphere3 { center: Point3::ZERO, radius: 1.0 }
    }

    /// Signed distance of `p` from the sphere surface.
    pub fn defect(&self, p: Point3) -> f64 {
        (p - self.center).norm() - self.radius
    }
}

/// Twice the area of a triangle compared against its longest edge; a triangle is
/// degenerate when `2·area < 1e-12 · (max edge)²`.
pub fn is_degenerate_triangle(p1: Point3, p2: Point3, p3: Point3) -> bool {
    let a = p2 - p1;
    let b = p3 - p1;
    let twice_area = a.cross(b).norm();
    let max_edge = a.norm().max(b.norm()).max((p3 - p2).norm());
    !(twice_area >= 1e-12 * max_edge * max_edge) || max_edge == 0.0
}

/// Circumcircle of a triangle, oriented by the vertex order `p1 → p2 → p3`.
pub fn circumcircle(p1: Point3, p2: Point3, p3: Point3) -> Result<Circle3, GeomError> {
    if is_degenerate_triangle(p1, p2, p3) {
        return Err(GeomError::DegenerateTriangle);
    }
    let a = p2 - p1;
    let b = p3 - p1;
    let n = a.cross(b);
    let n2 = n.norm_squared();
    let offset = (n.cross(a) * b.norm_squared() + b.cross(n) * a.norm_squared()) / (2.0 * n2);
    let center = p1 + offset;
    Circle3::new(center, offset.norm(), n)
}

fn clamp_cos(c: f64) -> f64 {
    if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&c) {
        log::warn!("cosine {c} outside [-1, 1] beyond tolerance; clamping");
    }
    c.clamp(-1.0, 1.0)
}

/// Cosine of the external intersection angle of the circumcircles of the
/// triangles `(s1, s2, apex_l)` and `(s1, s2, apex_r)`.
///
/// Uses the edge vectors `a, b, c, d` of the quadrilateral
/// `s1 → apex_l → s2 → apex_r → s1`:
/// `cos β = (<a,c><b,d> − <a,b><c,d> − <b,c><d,a>) / (|a||b||c||d|)`.
pub fn external_angle_cos(
    s1: Point3,
    s2: Point3,
    apex_l: Point3,
    apex_r: Point3,
) -> Result<f64, GeomError> {
    if is_degenerate_triangle(s1, s2, apex_l) || is_degenerate_triangle(s1, s2, apex_r) {
        return Err(GeomError::DegenerateTriangle);
    }
    let a = apex_l - s1;
    let b = s2 - apex_l;
    let c = apex_r - s2;
    let d = s1 - apex_r;
    let num = a.dot(c) * b.dot(d) - a.dot(b) * c.dot(d) - b.dot(c) * d.dot(a);
    let den = a.norm() * b.norm() * c.norm() * d.norm();
    Ok(clamp_cos(num / den))
}

/// External intersection angle `β ∈ [0, π]` between the circumcircles of two
/// triangles sharing the edge `s1 s2`.
///
/// The value is `atan2(|Im abcd|, −Re abcd)` for the quaternion product of the
/// edge vectors, whose cosine is exactly [`external_angle_cos`]; this keeps
/// full precision near `β = 0` and `β = π`.
pub fn external_angle(s1: Point3, s2: Point3, apex_l: Point3, apex_r: Point3) -> Result<f64, GeomError> {
    if is_degenerate_triangle(s1, s2, apex_l) || is_degenerate_triangle(s1, s2, apex_r) {
        return Err(GeomError::DegenerateTriangle);
    }
    let q = |v: Point3| Quaternion::imaginary(v);
    let a = q(apex_l - s1);
    let b = q(s2 - apex_l);
    let c = q(apex_r - s2);
    let d = q(s1 - apex_r);
    let p = (a * b) * (c * d);
    Ok(p.im().norm().atan2(-p.re()))
}

/// Inversion in a sphere: `p ↦ c + R² (p − c) / |p − c|²`.
pub fn sphere_invert(s: &Sphere3, p: Point3) -> Result<Point3, GeomError> {
    let d = p - s.center;
    let n2 = d.norm_squared();
    if n2 <= (1e-300_f64).max(1e-28 * s.radius * s.radius) {
        return Err(GeomError::Pole);
    }
    Ok(s.center + d * (s.radius * s.radius / n2))
}

/// Second intersection point of two lines in space, each given by two points.
/// Returns the midpoint of the shortest connecting segment and its length.
pub fn line_line_closest(p1: Point3, p2: Point3, q1: Point3, q2: Point3) -> Result<(Point3, f64), GeomError> {
    let u = p2 - p1;
    let v = q2 - q1;
    let w = p1 - q1;
    let a = u.dot(u);
    let b = u.dot(v);
    let c = v.dot(v);
    let d = u.dot(w);
    let e = v.dot(w);
    let den = a * c - b * b;
    if den <= 1e-24 * a * c {
        return Err(GeomError::Degenerate("parallel lines"));
    }
    let s = (b * e - c * d) / den;
    let t = (a * e - b * d) / den;
    let x = p1 + u * s;
    let y = q1 + v * t;
    Ok(((x + y) * 0.5, (x - y).norm()))
}

/// Angle in `[0, π/2]` at which two circles in space cross at the common point
/// `p` (the unoriented angle between their tangent lines).
pub fn circle_crossing_angle(c1: &Circle3, c2: &Circle3, p: Point3) -> f64 {
    let t1 = c1.normal.cross(p - c1.center);
    let t2 = c2.normal.cross(p - c2.center);
    let a = t1.angle_to(t2);
    a.min(std::f64::consts::PI - a)
}

/// Angle in `[0, π/2]` between a circle and a sphere at a common point `p`;
/// `π/2` means orthogonal intersection.
pub fn circle_sphere_angle(c: &Circle3, s: &Sphere3, p: Point3) -> f64 {
    let t = c.normal.cross(p - c.center);
    let n = p - s.center;
    let a = t.angle_to(n);
    // angle between tangent line and sphere normal line
    let line_angle = a.min(std::f64::consts::PI - a);
    std::f64::consts::FRAC_PI_2 - line_angle
}

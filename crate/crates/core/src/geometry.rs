//! Regular-polygon model shared by every other module.
//!
//! All configurations live in one fixed frame: the polygon has a horizontal
//! bottom edge whose left end is the fundamental vertex
//! `P1 = (-sin(pi/sigma), -cos(pi/sigma))`. The inner polygon (`delta = 0`)
//! has unit circumradius and is the locus of allowed disk centers; the
//! physical container is the same polygon offset outward by one disk radius
//! along the apothem.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of sides of the container; the circle is the `sigma -> infinity` limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sides {
    Regular(u32),
    Circle,
}

impl Sides {
    pub fn regular(sigma: u32) -> Result<Self> {
        if sigma < 3 {
            return Err(Error::InvalidSides(sigma));
        }
        Ok(Sides::Regular(sigma))
    }

    /// `pi / sigma`, zero for the circle.
    pub fn half_angle(self) -> f64 {
        match self {
            Sides::Regular(s) => PI / s as f64,
            Sides::Circle => 0.0,
        }
    }

    /// Apothem of the unit-circumradius polygon.
    pub fn apothem(self) -> f64 {
        self.half_angle().cos()
    }

    pub fn sigma(self) -> Option<u32> {
        match self {
            Sides::Regular(s) => Some(s),
            Sides::Circle => None,
        }
    }
}

impl fmt::Display for Sides {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sides::Regular(s) => write!(f, "{s}"),
            Sides::Circle => f.write_str("circle"),
        }
    }
}

impl std::str::FromStr for Sides {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("circle") || t.eq_ignore_ascii_case("inf") {
            return Ok(Sides::Circle);
        }
        let sigma: u32 = t
            .parse()
            .map_err(|_| Error::Parse(format!("invalid number of sides `{s}`")))?;
        Sides::regular(sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Unit vector at polar angle `theta`.
    pub fn unit(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point2::new(c, s)
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Point2::unit(theta) * r
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(self, theta: f64) -> Point2 {
        rotate(self, theta)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, o: Point2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Point2 {
    fn sub_assign(&mut self, o: Point2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Rotation about the origin.
pub fn rotate(p: Point2, theta: f64) -> Point2 {
    let (s, c) = theta.sin_cos();
    Point2::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

/// Boundary radius at polar angle `u` of the polygon offset by `delta` along
/// the apothem, for a polygon with a vertex at `u = 0`.
pub fn gamma(u: f64, delta: f64, sigma: u32) -> f64 {
    let half = PI / sigma as f64;
    let step = TAU / sigma as f64;
    (delta + half.cos()) / (half - u.rem_euclid(step)).cos()
}

/// Polar angle of the fundamental vertex `P1`.
pub fn fundamental_angle(sides: Sides) -> f64 {
    1.5 * PI - sides.half_angle()
}

/// `P1 = (-sin(pi/sigma), -cos(pi/sigma))`.
pub fn fundamental_vertex(sides: Sides) -> Point2 {
    let h = sides.half_angle();
    Point2::new(-h.sin(), -h.cos())
}

/// Angular offset of the working frame relative to the `gamma` frame, so that
/// `P1` is a vertex. It is zero when `sigma = 2 (mod 4)`.
fn frame_offset(sigma: u32) -> f64 {
    let step = TAU / sigma as f64;
    let off = (1.5 * PI - PI / sigma as f64).rem_euclid(step);
    // snap rounding noise at the top of the range back to zero
    if (step - off) < 1e-12 {
        0.0
    } else {
        off
    }
}

/// Point on the boundary of the `delta`-offset polygon at polar angle `u`.
pub fn boundary_point(u: f64, delta: f64, sigma: u32) -> Point2 {
    let r = gamma(u - frame_offset(sigma), delta, sigma);
    Point2::polar(r, u)
}

/// Chart of the inner polygon: `sin^2 t` is the radial fraction.
pub fn interior_point(t: f64, u: f64, sigma: u32) -> Point2 {
    let s = t.sin();
    boundary_point(u, 0.0, sigma) * (s * s)
}

/// A regular polygon (or circle) offset by `delta` from the unit-circumradius
/// inner polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonSpec {
    pub sides: Sides,
    pub delta: f64,
}

impl PolygonSpec {
    pub fn new(sides: Sides, delta: f64) -> Self {
        PolygonSpec { sides, delta }
    }

    pub fn inner(sides: Sides) -> Self {
        PolygonSpec::new(sides, 0.0)
    }

    /// Apothem (radius for the circle) of this offset polygon.
    pub fn apothem(&self) -> f64 {
        self.sides.apothem() + self.delta
    }

    pub fn circumradius(&self) -> f64 {
        self.apothem() / self.sides.apothem()
    }

    pub fn vertex_angle(&self, i: i64) -> f64 {
        match self.sides {
            Sides::Regular(s) => fundamental_angle(self.sides) + TAU * i as f64 / s as f64,
            Sides::Circle => fundamental_angle(self.sides),
        }
    }

    /// The polygon vertices, starting at the fundamental vertex and running
    /// counterclockwise. Empty for the circle.
    pub fn vertices(&self) -> Vec<Point2> {
        match self.sides {
            Sides::Regular(s) => {
                let r = self.circumradius();
                (0..s as i64).map(|i| Point2::polar(r, self.vertex_angle(i))).collect()
            }
            Sides::Circle => Vec::new(),
        }
    }

    /// Outward unit normal of edge `i` (between vertices `i` and `i + 1`).
    fn edge_normal(&self, i: i64) -> Point2 {
        let h = self.sides.half_angle();
        Point2::unit(self.vertex_angle(i) + h)
    }

    fn nearest_edge(&self, p: Point2, sigma: u32) -> i64 {
        let step = TAU / sigma as f64;
        let rel = (p.angle() - fundamental_angle(self.sides)).rem_euclid(TAU);
        ((rel / step).floor() as i64).rem_euclid(sigma as i64)
    }

    /// Signed support excess `max_i n_i . p - apothem`; positive outside.
    pub fn excess(&self, p: Point2) -> f64 {
        match self.sides {
            Sides::Circle => p.norm() - self.apothem(),
            Sides::Regular(s) => {
                let a = self.apothem();
                if s <= 64 {
                    (0..s as i64)
                        .map(|i| self.edge_normal(i).dot(p))
                        .fold(f64::NEG_INFINITY, f64::max)
                        - a
                } else {
                    // the binding half-plane is the one facing p
                    let e = self.nearest_edge(p, s);
                    (e - 1..=e + 1)
                        .map(|i| self.edge_normal(i).dot(p))
                        .fold(f64::NEG_INFINITY, f64::max)
                        - a
                }
            }
        }
    }

    /// Outward normals of the edges whose supporting line is within `slack`
    /// of `p` (for the circle, the radial direction).
    pub fn near_edges(&self, p: Point2, slack: f64) -> Vec<Point2> {
        let a = self.apothem();
        match self.sides {
            Sides::Circle => {
                if p.norm() - a >= -slack && p.norm() > 0.0 {
                    vec![p * (1.0 / p.norm())]
                } else {
                    Vec::new()
                }
            }
            Sides::Regular(s) => {
                let range: Vec<i64> = if s <= 64 {
                    (0..s as i64).collect()
                } else {
                    let e = self.nearest_edge(p, s);
                    (e - 1..=e + 1).collect()
                };
                range
                    .into_iter()
                    .map(|i| self.edge_normal(i))
                    .filter(|n| n.dot(p) - a >= -slack)
                    .collect()
            }
        }
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.excess(p) <= tol
    }

    /// Nearest point of the (closed) polygon.
    pub fn project(&self, p: Point2) -> Point2 {
        if self.excess(p) <= 0.0 {
            return p;
        }
        match self.sides {
            Sides::Circle => p * (self.apothem() / p.norm()),
            Sides::Regular(s) => {
                let r = self.circumradius();
                let e = self.nearest_edge(p, s);
                let mut best = p;
                let mut best_d = f64::INFINITY;
                for i in e - 1..=e + 1 {
                    let a = Point2::polar(r, self.vertex_angle(i));
                    let b = Point2::polar(r, self.vertex_angle(i + 1));
                    let q = closest_on_segment(p, a, b);
                    let dq = q.dist(p);
                    if dq < best_d {
                        best_d = dq;
                        best = q;
                    }
                }
                best
            }
        }
    }

    pub fn area(&self) -> f64 {
        let a = self.apothem();
        match self.sides {
            Sides::Circle => PI * a * a,
            Sides::Regular(s) => s as f64 * a * a * self.sides.half_angle().tan(),
        }
    }

    /// Boundary point in the working frame at polar angle `u`.
    pub fn boundary_point(&self, u: f64) -> Point2 {
        match self.sides {
            Sides::Regular(s) => boundary_point(u, self.delta, s),
            Sides::Circle => Point2::polar(1.0 + self.delta, u),
        }
    }

    /// Axis of mirror symmetry through `P1` and the origin.
    pub fn reflect(&self, p: Point2) -> Point2 {
        reflect_across(p, fundamental_angle(self.sides))
    }
}

/// Mirror image of `p` across the line through the origin at angle `axis`.
pub fn reflect_across(p: Point2, axis: f64) -> Point2 {
    let (s, c) = (2.0 * axis).sin_cos();
    Point2::new(c * p.x + s * p.y, s * p.x - c * p.y)
}

fn closest_on_segment(p: Point2, a: Point2, b: Point2) -> Point2 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.norm2()).clamp(0.0, 1.0);
    a + ab * t
}

/// Shoelace area of a closed polygon.
pub fn shoelace_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>().abs()
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let w = (a + PI).rem_euclid(TAU) - PI;
    if w <= -PI {
        w + TAU
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    #[test]
    fn gamma_vertex_and_apothem() {
        assert_abs_diff_eq!(gamma(0.0, 0.0, 12), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(gamma(PI / 12.0, 0.0, 12), 0.965_925_826_289_068_3, epsilon = 1e-15);
        for &u in &[0.1, 1.3, -2.0, 5.7] {
            for &(delta, sigma) in &[(0.0, 12u32), (0.3, 7), (0.05, 6)] {
                let p = gamma(u + TAU / sigma as f64, delta, sigma);
                assert_abs_diff_eq!(p, gamma(u, delta, sigma), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gamma_extremes() {
        let sigma = 9;
        let delta = 0.2;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..20_000 {
            let g = gamma(i as f64 * TAU / 20_000.0, delta, sigma);
            lo = lo.min(g);
            hi = hi.max(g);
        }
        let a = delta + (PI / 9.0).cos();
        assert_abs_diff_eq!(lo, a, epsilon = 1e-6);
        assert_abs_diff_eq!(hi, a / (PI / 9.0).cos(), epsilon = 1e-12);
    }

    #[test]
    fn fundamental_vertex_is_a_boundary_vertex() {
        let p1 = boundary_point(1.5 * PI - PI / 12.0, 0.0, 12);
        assert_abs_diff_eq!(p1.x, -(PI / 12.0).sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(p1.y, -(PI / 12.0).cos(), epsilon = 1e-15);
        for sigma in [6u32, 12, 18, 24, 30, 9] {
            let spec = PolygonSpec::inner(Sides::Regular(sigma));
            let v0 = spec.vertices()[0];
            let p1 = fundamental_vertex(Sides::Regular(sigma));
            assert_abs_diff_eq!(v0.dist(p1), 0.0, epsilon = 1e-15);
            assert!(spec.contains(p1, 1e-12));
        }
    }

    #[test]
    fn vertex_at_zero_when_sigma_is_two_mod_four() {
        for sigma in [6u32, 18, 30] {
            let p = boundary_point(0.0, 0.0, sigma);
            assert_abs_diff_eq!(p.x, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(p.y, 0.0, epsilon = 1e-14);
            let q = interior_point(PI / 4.0, 0.0, sigma);
            assert_abs_diff_eq!(q.x, 0.5, epsilon = 1e-14);
        }
    }

    #[test]
    fn boundary_point_at_rotated_vertex() {
        for sigma in [6u32, 12, 18, 24] {
            let s = Sides::Regular(sigma);
            let u = 11.0 * PI / 6.0 - PI / sigma as f64;
            let p = boundary_point(u, 0.0, sigma);
            let q = rotate(fundamental_vertex(s), FRAC_PI_3);
            assert_abs_diff_eq!(p.x, q.x, epsilon = 1e-14);
            assert_abs_diff_eq!(p.y, q.y, epsilon = 1e-14);
        }
    }

    #[test]
    fn interior_chart_limits() {
        let b = boundary_point(0.7, 0.0, 12);
        let p = interior_point(FRAC_PI_2, 0.7, 12);
        assert_abs_diff_eq!(p.dist(b), 0.0, epsilon = 1e-15);
        assert_eq!(interior_point(0.0, 0.7, 12), Point2::ORIGIN);
    }

    #[test]
    fn containment_basics() {
        let spec = PolygonSpec::inner(Sides::Regular(12));
        assert!(spec.contains(Point2::ORIGIN, 0.0));
        assert!(!spec.contains(Point2::new(1.001, 0.0), 1e-9));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let u: f64 = rng.random_range(0.0..TAU);
            assert!(spec.contains(spec.boundary_point(u), 1e-12));
        }
    }

    #[test]
    fn large_sigma_containment_matches_circle() {
        let spec = PolygonSpec::inner(Sides::Regular(100_000));
        assert!(spec.contains(Point2::polar(0.999_999, 0.3), 0.0));
        assert!(!spec.contains(Point2::polar(1.000_001, 2.3), 0.0));
    }

    #[test]
    fn projection_lands_on_boundary() {
        let spec = PolygonSpec::inner(Sides::Regular(12));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = Point2::polar(rng.random_range(1.0..3.0), rng.random_range(0.0..TAU));
            let q = spec.project(p);
            assert!(spec.excess(q).abs() < 1e-12);
            // no boundary vertex is closer than the projection
            for v in spec.vertices() {
                assert!(q.dist(p) <= v.dist(p) + 1e-12);
            }
        }
    }

    #[test]
    fn rotation_identities() {
        let r = rotate(Point2::new(1.0, 0.0), FRAC_PI_2);
        assert_abs_diff_eq!(r.x, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(r.y, 1.0, epsilon = 1e-16);
        let p = Point2::new(0.3, -0.7);
        assert_eq!(rotate(p, 0.0), p);
        let back = rotate(rotate(p, FRAC_PI_3), -FRAC_PI_3);
        assert!(back.dist(p) < 1e-15);
    }

    #[test]
    fn area_matches_shoelace() {
        for sigma in [6u32, 12, 18, 7] {
            for delta in [0.0, 0.1, 0.25] {
                let spec = PolygonSpec::new(Sides::Regular(sigma), delta);
                let closed = sigma as f64
                    * ((PI / sigma as f64).cos() + delta).powi(2)
                    * (PI / sigma as f64).tan();
                assert_abs_diff_eq!(spec.area(), closed, epsilon = 1e-12);
                assert_abs_diff_eq!(spec.area(), shoelace_area(&spec.vertices()), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn reflection_fixes_p1() {
        let spec = PolygonSpec::inner(Sides::Regular(12));
        let p1 = fundamental_vertex(spec.sides);
        assert!(spec.reflect(p1).dist(p1) < 1e-15);
        let verts = spec.vertices();
        for v in &verts {
            let m = spec.reflect(*v);
            assert!(verts.iter().any(|w| w.dist(m) < 1e-12));
        }
    }

    #[test]
    fn sides_parse() {
        assert_eq!("circle".parse::<Sides>().unwrap(), Sides::Circle);
        assert_eq!("12".parse::<Sides>().unwrap(), Sides::Regular(12));
        assert!("2".parse::<Sides>().is_err());
        assert!("x".parse::<Sides>().is_err());
    }
}

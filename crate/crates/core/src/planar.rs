use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// A point (or vector) in a flat model of the surface, edge length 2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` is
    /// counterclockwise from `self`.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn lerp(self, other: Self, t: f64) -> Self {
        self + (other - self) * t
    }

    pub fn normalized(self) -> Self {
        self * (1.0 / self.norm())
    }

    /// Polar angle in radians, in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    /// Mirror image across the line through `p` and `q`.
    pub fn reflect_across(self, p: Self, q: Self) -> Self {
        let dir = (q - p).normalized();
        let rel = self - p;
        let foot = p + dir * rel.dot(dir);
        foot * 2.0 - self
    }

    /// Distance from `self` to the closed segment `p`–`q`, plus the segment
    /// parameter of the closest point.
    pub fn segment_distance(self, p: Self, q: Self) -> (f64, f64) {
        let d = q - p;
        let len2 = d.dot(d);
        let t = if len2 == 0.0 { 0.0 } else { ((self - p).dot(d) / len2).clamp(0.0, 1.0) };
        (self.dist(p.lerp(q, t)), t)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for PlanarPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for PlanarPoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for PlanarPoint {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for PlanarPoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Planar affine isometry `p ↦ M p + t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarAffine {
    m: [[f64; 2]; 2],
    t: PlanarPoint,
}

impl PlanarAffine {
    pub fn identity() -> Self {
        Self { m: [[1.0, 0.0], [0.0, 1.0]], t: PlanarPoint::default() }
    }

    /// The affine map sending the triangle `from` onto `to`, vertex by vertex.
    pub fn from_triangles(from: [PlanarPoint; 3], to: [PlanarPoint; 3]) -> Self {
        let (u1, u2) = (from[1] - from[0], from[2] - from[0]);
        let (v1, v2) = (to[1] - to[0], to[2] - to[0]);
        let det = u1.cross(u2);
        // inverse of [u1 u2] (columns)
        let inv = [[u2.y / det, -u2.x / det], [-u1.y / det, u1.x / det]];
        let m = [
            [v1.x * inv[0][0] + v2.x * inv[1][0], v1.x * inv[0][1] + v2.x * inv[1][1]],
            [v1.y * inv[0][0] + v2.y * inv[1][0], v1.y * inv[0][1] + v2.y * inv[1][1]],
        ];
        let lin = Self { m, t: PlanarPoint::default() };
        let t = to[0] - lin.apply_linear(from[0]);
        Self { m, t }
    }

    pub fn apply(&self, p: PlanarPoint) -> PlanarPoint {
        self.apply_linear(p) + self.t
    }

    pub fn apply_linear(&self, v: PlanarPoint) -> PlanarPoint {
        PlanarPoint::new(self.m[0][0] * v.x + self.m[0][1] * v.y, self.m[1][0] * v.x + self.m[1][1] * v.y)
    }

    pub fn preserves_orientation(&self) -> bool {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0] > 0.0
    }
}

/// Signed shoelace area; positive for counterclockwise polygons.
pub fn signed_area(points: &[PlanarPoint]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum::<f64>() * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_of_b_across_ac_is_d() {
        let a = PlanarPoint::new(0.0, SQRT3);
        let b = PlanarPoint::new(-1.0, 0.0);
        let c = PlanarPoint::new(1.0, 0.0);
        let d = b.reflect_across(a, c);
        assert!(d.dist(PlanarPoint::new(2.0, SQRT3)) < 1e-15);
    }

    #[test]
    fn affine_from_triangles_maps_vertices() {
        let from = [PlanarPoint::new(0.0, 0.0), PlanarPoint::new(1.0, 0.0), PlanarPoint::new(0.0, 1.0)];
        let to = [PlanarPoint::new(2.0, 1.0), PlanarPoint::new(2.0, 2.0), PlanarPoint::new(1.0, 1.0)];
        let f = PlanarAffine::from_triangles(from, to);
        for i in 0..3 {
            assert!(f.apply(from[i]).dist(to[i]) < 1e-14);
        }
        assert!(f.preserves_orientation());
    }

    #[test]
    fn unit_square_area() {
        let sq = [
            PlanarPoint::new(0.0, 0.0),
            PlanarPoint::new(1.0, 0.0),
            PlanarPoint::new(1.0, 1.0),
            PlanarPoint::new(0.0, 1.0),
        ];
        assert_eq!(signed_area(&sq), 1.0);
    }
}

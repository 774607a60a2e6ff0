use std::fmt;

use serde::Serialize;

use super::{Edge, Face, Vertex};
use crate::error::{Error, Result};

const NEG_TOL: f64 = 1e-12;
const SUM_TOL: f64 = 1e-9;
/// Weights this small, produced by planar round-off, are snapped to zero.
const SNAP: f64 = 1e-13;

/// A point on the tetrahedron surface: a face plus barycentric weights on
/// that face's vertices (alphabetical order).
///
/// Points on edges and at vertices are always stored on the containing face
/// with the alphabetically smallest vertex triple, so equal surface points
/// have equal representations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub face: Face,
    pub bary: [f64; 3],
}

/// Build a canonical surface point from a face and barycentric weights.
pub fn make_point(face: Face, bary: [f64; 3]) -> Result<SurfacePoint> {
    if bary.iter().any(|w| !w.is_finite()) {
        return Err(Error::NonFinite);
    }
    if let Some(&w) = bary.iter().find(|&&w| w < -NEG_TOL) {
        return Err(Error::NegativeWeight(w));
    }
    let sum: f64 = bary.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::BadSum(sum));
    }
    let mut w = bary.map(|w| w.max(0.0));
    let sum: f64 = w.iter().sum();
    if sum != 1.0 {
        w = w.map(|x| x / sum);
    }
    Ok(SurfacePoint { face, bary: w }.canonicalize())
}

impl SurfacePoint {
    pub fn vertex(v: Vertex) -> Self {
        let mut w = [0.0; 4];
        w[v.index()] = 1.0;
        Self::from_weights4(w)
    }

    pub fn centroid(face: Face) -> Self {
        Self { face, bary: [1.0 / 3.0; 3] }
    }

    pub fn midpoint(e: Edge) -> Self {
        let mut w = [0.0; 4];
        w[e.lo.index()] = 0.5;
        w[e.hi.index()] = 0.5;
        Self::from_weights4(w)
    }

    /// Point at parameter `t` along edge `e` (from `e.lo` towards `e.hi`).
    pub fn on_edge(e: Edge, t: f64) -> Self {
        let mut w = [0.0; 4];
        w[e.lo.index()] = 1.0 - t;
        w[e.hi.index()] = t;
        Self::from_weights4(w)
    }

    /// Build from weights indexed by vertex. Exactly one weight must be zero
    /// (or more, for edge and vertex points).
    pub(crate) fn from_weights4(w: [f64; 4]) -> Self {
        let face =
            Face::ALL.into_iter().find(|f| w[f.opposite().index()] == 0.0).expect("a surface point has a zero weight");
        let bary = face.vertices().map(|v| w[v.index()]);
        Self { face, bary }
    }

    /// Build from raw weights on `face` computed in floating point: tiny
    /// negative or positive round-off is snapped to zero and the weights are
    /// renormalized.
    pub(crate) fn from_raw(face: Face, bary: [f64; 3]) -> Self {
        let mut w = bary.map(|x| if x.abs() < SNAP { 0.0 } else { x.max(0.0) });
        let sum: f64 = w.iter().sum();
        if sum != 1.0 {
            w = w.map(|x| x / sum);
        }
        SurfacePoint { face, bary: w }.canonicalize()
    }

    /// Weights indexed by vertex (zero on the opposite vertex of the face).
    pub fn weights4(&self) -> [f64; 4] {
        let mut w = [0.0; 4];
        for (v, x) in self.face.vertices().into_iter().zip(self.bary) {
            w[v.index()] = x;
        }
        w
    }

    pub fn weight(&self, v: Vertex) -> f64 {
        self.weights4()[v.index()]
    }

    /// Move edge and vertex points onto their canonical face. Idempotent;
    /// interior points are returned unchanged.
    pub fn canonicalize(&self) -> Self {
        if self.bary.iter().all(|&w| w != 0.0) {
            return *self;
        }
        Self::from_weights4(self.weights4())
    }

    /// Barycentric weights on face `f`, if the point lies on that face.
    pub fn bary_in(&self, f: Face) -> Option<[f64; 3]> {
        let w = self.weights4();
        (w[f.opposite().index()] == 0.0).then(|| f.vertices().map(|v| w[v.index()]))
    }

    /// All faces containing the point, canonical face first.
    pub fn faces(&self) -> Vec<Face> {
        let w = self.weights4();
        Face::ALL.into_iter().filter(|f| w[f.opposite().index()] == 0.0).collect()
    }

    pub fn as_vertex(&self) -> Option<Vertex> {
        let w = self.weights4();
        Vertex::ALL.into_iter().find(|v| w[v.index()] == 1.0)
    }

    pub fn is_interior(&self) -> bool {
        self.bary.iter().all(|&w| w > 0.0)
    }

    pub fn to_3d(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (v, w) in self.face.vertices().into_iter().zip(self.bary) {
            let p = v.position_3d();
            for i in 0..3 {
                out[i] += w * p[i];
            }
        }
        out
    }

    /// Euclidean distance between the 3D embeddings (a chord, not the
    /// surface distance).
    pub fn chord(&self, other: &Self) -> f64 {
        let (p, q) = (self.to_3d(), other.to_3d());
        (0..3).map(|i| (p[i] - q[i]).powi(2)).sum::<f64>().sqrt()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.chord(other) <= tol
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{},{}", self.face, self.bary[0], self.bary[1], self.bary[2])
    }
}

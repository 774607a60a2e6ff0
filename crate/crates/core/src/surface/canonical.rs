use std::fmt;

use serde::Serialize;

use super::{Face, Isometry, SurfacePoint};

/// Weight differences below this are treated as equal when assigning a
/// stratum.
const STRATUM_TOL: f64 = 1e-12;

/// Qualitative position of a point inside the closed subtriangle `aCM` of
/// face `abc` (`C` the centroid, `M` the midpoint of `ac`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Stratum {
    /// Open interior of `aCM`.
    S0Interior,
    /// On edge `aM`, excluding `a`, including `M`.
    S1EdgeAM,
    /// On the open segment `aC`.
    S2SegmentAC,
    /// The centroid `C`.
    S3Centroid,
    /// On the open segment `CM`.
    S4SegmentCM,
    /// The vertex `a`.
    S5VertexA,
}

impl Stratum {
    pub const ALL: [Stratum; 6] = [
        Stratum::S0Interior,
        Stratum::S1EdgeAM,
        Stratum::S2SegmentAC,
        Stratum::S3Centroid,
        Stratum::S4SegmentCM,
        Stratum::S5VertexA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stratum::S0Interior => "S0_interior",
            Stratum::S1EdgeAM => "S1_edge_aM",
            Stratum::S2SegmentAC => "S2_segment_aC",
            Stratum::S3Centroid => "S3_centroid",
            Stratum::S4SegmentCM => "S4_segment_CM",
            Stratum::S5VertexA => "S5_vertex_a",
        }
    }

    /// Does `(x, alpha)` satisfy this stratum's defining relations?
    pub fn admits(self, x: f64, alpha: f64) -> bool {
        let eq = |u: f64, v: f64| (u - v).abs() <= 1e-12;
        match self {
            Stratum::S0Interior => x > 0.0 && x < 0.5 && alpha > (1.0 + x) / 3.0 && alpha < 1.0 - x,
            Stratum::S1EdgeAM => x > 0.0 && x <= 0.5 + 1e-12 && eq(alpha, 1.0 - x),
            Stratum::S2SegmentAC => eq(x, 0.0) && alpha > 1.0 / 3.0 && alpha < 1.0,
            Stratum::S3Centroid => eq(x, 0.0) && eq(alpha, 1.0 / 3.0),
            Stratum::S4SegmentCM => x > 0.0 && x < 0.5 && eq(alpha, (1.0 + x) / 3.0),
            Stratum::S5VertexA => eq(x, 0.0) && eq(alpha, 1.0),
        }
    }

    /// The point of face `abc` with planar coordinates `(x, alpha·√3)`.
    pub fn point(x: f64, alpha: f64) -> SurfacePoint {
        let wa = alpha;
        let wb = (1.0 - alpha - x) / 2.0;
        let wc = (1.0 - alpha + x) / 2.0;
        SurfacePoint::from_raw(Face::ABC, [wa, wb, wc])
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point moved by a symmetry into the closed subtriangle `aCM`, with its
/// stratum and planar parameters: the image sits at `(x, alpha·√3)` in the
/// standard chart of `abc`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalPosition {
    pub g: Isometry,
    pub image: SurfacePoint,
    pub stratum: Stratum,
    pub x: f64,
    pub alpha: f64,
}

/// Move `p` into the subtriangle `aCM` by the first symmetry (in the fixed
/// order of [`Isometry::all`]) that achieves it.
pub fn reduce_to_canonical(p: &SurfacePoint) -> CanonicalPosition {
    for g in Isometry::all() {
        let image = g.apply(p);
        if image.face != Face::ABC {
            continue;
        }
        let [wa, wb, wc] = image.bary;
        if wa >= wc && wc >= wb {
            let (stratum, x, alpha) = classify(wa, wb, wc);
            return CanonicalPosition { g, image, stratum, x, alpha };
        }
    }
    unreachable!("every orbit meets the subtriangle aCM")
}

fn classify(wa: f64, wb: f64, wc: f64) -> (Stratum, f64, f64) {
    let x = wc - wb;
    let eq = |u: f64, v: f64| (u - v).abs() <= STRATUM_TOL;
    if eq(wa, 1.0) {
        (Stratum::S5VertexA, 0.0, 1.0)
    } else if eq(wa, wb) && eq(wb, wc) {
        (Stratum::S3Centroid, 0.0, 1.0 / 3.0)
    } else if wb <= STRATUM_TOL {
        (Stratum::S1EdgeAM, wc, 1.0 - wc)
    } else if eq(wb, wc) {
        (Stratum::S2SegmentAC, 0.0, wa)
    } else if eq(wa, wc) {
        (Stratum::S4SegmentCM, x, (1.0 + x) / 3.0)
    } else {
        (Stratum::S0Interior, x, wa)
    }
}

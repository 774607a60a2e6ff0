//! The exponential map: follow a straight segment drawn in the chart of a
//! point's face across the surface.

use crate::error::{Error, Result};
use crate::oracle::{build_geodesic, chains, chart_position, segment_crossings, Geodesic};
use crate::planar::PlanarPoint;
use crate::surface::SurfacePoint;

/// Deep enough for any segment of length up to 3 from any start point.
const TRACE_DEPTH: usize = 7;
const INSIDE_TOL: f64 = 1e-12;

/// Follow the segment from `p` to the planar point `x` (both in the chart of
/// `p.face`) and return the path as a geodesic.
pub fn trace(p: &SurfacePoint, x: PlanarPoint) -> Result<Geodesic> {
    let from = chart_position(p);
    let mut touched = false;
    for start in p.faces() {
        for chain in chains(p.face, start, TRACE_DEPTH).iter() {
            let bary = chain.last_placement().to_bary(x);
            if bary.iter().any(|&w| w < -INSIDE_TOL) {
                continue;
            }
            touched = true;
            if let Some(hits) = segment_crossings(chain, from, x, 1e-12) {
                let q = SurfacePoint::from_raw(chain.last_face(), bary);
                return Ok(build_geodesic(p, &q, chain, from, x, &hits));
            }
        }
    }
    Err(if touched { Error::ThroughVertex } else { Error::OutsideChart })
}

/// Endpoint of [`trace`].
pub fn trace_point(p: &SurfacePoint, x: PlanarPoint) -> Result<SurfacePoint> {
    trace(p, x).map(|g| g.target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::validate_geodesic;
    use crate::planar::SQRT3;
    use crate::surface::{Face, Vertex};

    #[test]
    fn reaches_opposite_vertex_images() {
        let c = SurfacePoint::centroid(Face::ABC);
        for x in [PlanarPoint::new(2.0, SQRT3), PlanarPoint::new(-2.0, SQRT3), PlanarPoint::new(0.0, -SQRT3)] {
            let q = trace_point(&c, x).unwrap();
            assert!(q.approx_eq(&SurfacePoint::vertex(Vertex::D), 1e-12));
        }
    }

    #[test]
    fn traced_paths_validate() {
        let p = SurfacePoint::centroid(Face::ABC);
        let g = trace(&p, PlanarPoint::new(1.3, 1.2)).unwrap();
        assert!(validate_geodesic(&g));
        assert_eq!(g.target.face, Face::ACD);
    }

    #[test]
    fn through_a_vertex_is_reported() {
        let p = SurfacePoint::centroid(Face::ABC);
        // beyond vertex a on the ray from the centroid
        assert_eq!(trace(&p, PlanarPoint::new(0.0, 2.2)), Err(Error::ThroughVertex));
    }
}

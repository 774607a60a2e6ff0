use serde::Serialize;

use super::{Edge, Face, SurfacePoint, Vertex};
use crate::error::{Error, Result};
use crate::planar::{PlanarPoint, SQRT3};

/// Unfolding depth beyond which enumeration is refused (3·2^12 chains).
pub const MAX_DEPTH: usize = 12;

/// A face laid flat in some chart: the planar positions of its vertices,
/// in the face's alphabetical vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Placement {
    pub corners: [PlanarPoint; 3],
}

impl Placement {
    /// The fixed chart of any face: first vertex at `(0, √3)`, second at
    /// `(-1, 0)`, third at `(1, 0)`.
    pub fn standard() -> Self {
        Self { corners: [PlanarPoint::new(0.0, SQRT3), PlanarPoint::new(-1.0, 0.0), PlanarPoint::new(1.0, 0.0)] }
    }

    pub fn position(&self, face: Face, v: Vertex) -> PlanarPoint {
        self.corners[face.slot(v).expect("vertex on face")]
    }

    pub fn to_planar(&self, bary: [f64; 3]) -> PlanarPoint {
        self.corners[0] * bary[0] + self.corners[1] * bary[1] + self.corners[2] * bary[2]
    }

    /// Barycentric coordinates of a planar point (may be negative outside).
    pub fn to_bary(&self, p: PlanarPoint) -> [f64; 3] {
        let [p0, p1, p2] = self.corners;
        let det = (p1 - p0).cross(p2 - p0);
        let w1 = (p - p0).cross(p2 - p0) / det;
        let w2 = (p1 - p0).cross(p - p0) / det;
        [1.0 - w1 - w2, w1, w2]
    }

    /// `true` when the placed triangle is counterclockwise.
    pub fn is_ccw(&self) -> bool {
        (self.corners[1] - self.corners[0]).cross(self.corners[2] - self.corners[0]) > 0.0
    }
}

/// Lay the face across `edge` flat next to `face`: the shared vertices keep
/// their positions and the new vertex is the mirror image of the old third
/// vertex across the edge.
pub(crate) fn unfold_across(face: Face, placement: &Placement, edge: Edge) -> (Face, Placement) {
    let next = face.across(edge);
    let (pu, pv) = (placement.position(face, edge.lo), placement.position(face, edge.hi));
    let old = face.vertices().into_iter().find(|&v| !edge.contains(v)).unwrap();
    let mirrored = placement.position(face, old).reflect_across(pu, pv);
    let corners = next.vertices().map(|v| {
        if v == edge.lo {
            pu
        } else if v == edge.hi {
            pv
        } else {
            mirrored
        }
    });
    (next, Placement { corners })
}

/// A sequence of faces glued edge to edge and laid flat in the chart of the
/// first face.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnfoldChain {
    pub faces: Vec<Face>,
    pub crossed_edges: Vec<Edge>,
    pub placements: Vec<Placement>,
}

impl UnfoldChain {
    fn root(face: Face, placement: Placement) -> Self {
        Self { faces: vec![face], crossed_edges: Vec::new(), placements: vec![placement] }
    }

    pub fn last_face(&self) -> Face {
        *self.faces.last().unwrap()
    }

    pub fn last_placement(&self) -> &Placement {
        self.placements.last().unwrap()
    }

    fn extend(&self, edge: Edge) -> Self {
        let (face, placement) = unfold_across(self.last_face(), self.last_placement(), edge);
        let mut out = self.clone();
        out.faces.push(face);
        out.crossed_edges.push(edge);
        out.placements.push(placement);
        out
    }
}

/// All chains of at most `depth` crossings starting at `base` in its
/// standard chart, without immediate backtracking. Ordered by length, then
/// lexicographically by crossed edges.
pub fn enumerate_unfoldings(base: Face, depth: usize) -> Result<Vec<UnfoldChain>> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthTooLarge(depth));
    }
    Ok(enumerate_from(base, Placement::standard(), depth))
}

pub(crate) fn enumerate_from(base: Face, root: Placement, depth: usize) -> Vec<UnfoldChain> {
    let mut out = vec![UnfoldChain::root(base, root)];
    let mut frontier = 0;
    for _ in 0..depth {
        let end = out.len();
        for i in frontier..end {
            let chain = out[i].clone();
            let back = chain.crossed_edges.last().copied();
            for e in chain.last_face().edges() {
                if Some(e) != back {
                    out.push(chain.extend(e));
                }
            }
        }
        frontier = end;
    }
    out
}

/// Planar image of `p` under the chain's final placement.
pub fn flatten(p: &SurfacePoint, chain: &UnfoldChain) -> Result<PlanarPoint> {
    let last = chain.last_face();
    let bary = p.bary_in(last).ok_or(Error::FaceMismatch { point: p.face, chain: last })?;
    Ok(chain.last_placement().to_planar(bary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(p: PlanarPoint, x: f64, y: f64) -> bool {
        p.dist(PlanarPoint::new(x, y)) < 1e-12
    }

    #[test]
    fn chain_counts() {
        let counts: Vec<usize> = (0..=4).map(|d| enumerate_unfoldings(Face::ABC, d).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 4, 10, 22, 46]);
        for d in 0..=8 {
            let n = enumerate_unfoldings(Face::BCD, d).unwrap().len();
            assert_eq!(n, 1 + 3 * ((1 << d) - 1));
        }
    }

    #[test]
    fn depth_guard() {
        assert_eq!(enumerate_unfoldings(Face::ABC, 13), Err(Error::DepthTooLarge(13)));
    }

    #[test]
    fn chains_never_backtrack() {
        for chain in enumerate_unfoldings(Face::ACD, 5).unwrap() {
            for w in chain.crossed_edges.windows(2) {
                assert_ne!(w[0], w[1]);
            }
            for (i, e) in chain.crossed_edges.iter().enumerate() {
                assert!(chain.faces[i].has_edge(*e) && chain.faces[i + 1].has_edge(*e));
            }
        }
    }

    #[test]
    fn flatten_vertex_positions() {
        let chains = enumerate_unfoldings(Face::ABC, 1).unwrap();
        let a = SurfacePoint::vertex(Vertex::A);
        assert!(close(flatten(&a, &chains[0]).unwrap(), 0.0, SQRT3));
        let d = SurfacePoint::vertex(Vertex::D);
        let via = |e: Edge| chains.iter().find(|c| c.crossed_edges == [e]).unwrap();
        let d_ac = d.bary_in(Face::ACD).unwrap();
        assert!(close(via(Edge::new(Vertex::A, Vertex::C)).last_placement().to_planar(d_ac), 2.0, SQRT3));
        let d_bc = d.bary_in(Face::BCD).unwrap();
        assert!(close(via(Edge::new(Vertex::B, Vertex::C)).last_placement().to_planar(d_bc), 0.0, -SQRT3));
    }

    #[test]
    fn flatten_rejects_wrong_face() {
        let chains = enumerate_unfoldings(Face::ABC, 0).unwrap();
        let p = SurfacePoint::centroid(Face::BCD);
        assert!(matches!(flatten(&p, &chains[0]), Err(Error::FaceMismatch { .. })));
    }

    #[test]
    fn shared_edge_images_agree() {
        for chain in enumerate_unfoldings(Face::ABC, 3).unwrap() {
            for (i, e) in chain.crossed_edges.iter().enumerate() {
                for v in [e.lo, e.hi] {
                    let before = chain.placements[i].position(chain.faces[i], v);
                    let after = chain.placements[i + 1].position(chain.faces[i + 1], v);
                    assert!(before.dist(after) < 1e-12);
                }
            }
        }
    }
}

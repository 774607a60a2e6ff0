use std::fmt;

use super::{SurfacePoint, Vertex};

/// A symmetry of the regular tetrahedron, given by the vertex permutation it
/// induces. Even permutations are rotations, odd ones are reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    perm: [Vertex; 4],
}

impl Isometry {
    pub fn identity() -> Self {
        Self { perm: Vertex::ALL }
    }

    pub fn from_images(perm: [Vertex; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for v in perm {
            if std::mem::replace(&mut seen[v.index()], true) {
                return None;
            }
        }
        Some(Self { perm })
    }

    pub fn swap(u: Vertex, v: Vertex) -> Self {
        let mut perm = Vertex::ALL;
        perm.swap(u.index(), v.index());
        Self { perm }
    }

    /// All 24 symmetries, in lexicographic order of the image tuple
    /// `(g(a), g(b), g(c), g(d))`; the identity comes first.
    pub fn all() -> Vec<Isometry> {
        let mut out = Vec::with_capacity(24);
        for a in Vertex::ALL {
            for b in Vertex::ALL {
                for c in Vertex::ALL {
                    for d in Vertex::ALL {
                        if let Some(g) = Self::from_images([a, b, c, d]) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn images(&self) -> [Vertex; 4] {
        self.perm
    }

    pub fn map_vertex(&self, v: Vertex) -> Vertex {
        self.perm[v.index()]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry { perm: other.perm.map(|v| self.map_vertex(v)) }
    }

    pub fn inverse(&self) -> Isometry {
        let mut perm = Vertex::ALL;
        for v in Vertex::ALL {
            perm[self.map_vertex(v).index()] = v;
        }
        Isometry { perm }
    }

    pub fn is_even(&self) -> bool {
        let idx = self.perm.map(|v| v.index());
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if idx[i] > idx[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Image of a surface point. Weights are permuted, never recomputed.
    pub fn apply(&self, p: &SurfacePoint) -> SurfacePoint {
        let w = p.weights4();
        let mut out = [0.0; 4];
        for v in Vertex::ALL {
            out[self.map_vertex(v).index()] = w[v.index()];
        }
        SurfacePoint::from_weights4(out)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.perm {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{make_point, Face};

    #[test]
    fn group_has_24_elements_identity_first() {
        let all = Isometry::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Isometry::identity());
        assert_eq!(all.iter().filter(|g| g.is_even()).count(), 12);
    }

    #[test]
    fn swap_bc_permutes_weights() {
        let g = Isometry::swap(Vertex::B, Vertex::C);
        let p = make_point(Face::ABC, [0.2, 0.5, 0.3]).unwrap();
        let q = g.apply(&p);
        assert_eq!(q.face, Face::ABC);
        assert_eq!(q.bary, [0.2, 0.3, 0.5]);
        let c = SurfacePoint::centroid(Face::ABC);
        assert_eq!(g.apply(&c), c);
    }

    #[test]
    fn identity_fixes_points() {
        let p = make_point(Face::BCD, [0.1, 0.7, 0.2]).unwrap();
        assert_eq!(Isometry::identity().apply(&p), p);
    }

    #[test]
    fn inverse_and_compose() {
        for g in Isometry::all() {
            assert_eq!(g.compose(&g.inverse()), Isometry::identity());
            assert_eq!(g.is_even(), g.inverse().is_even());
        }
    }
}

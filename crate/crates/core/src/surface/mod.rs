//! The regular tetrahedron with edge length 2: vertices, faces, edges,
//! surface points, the symmetry group, planar charts and unfoldings.

use std::fmt;

use serde::{Serialize, Serializer};

mod canonical;
mod chart;
mod isometry;
mod literal;
mod point;

pub use canonical::{reduce_to_canonical, CanonicalPosition, Stratum};
pub(crate) use chart::{enumerate_from, unfold_across};
pub use chart::{enumerate_unfoldings, flatten, Placement, UnfoldChain, MAX_DEPTH};
pub use isometry::Isometry;
pub use literal::parse_point;
pub use point::{make_point, SurfacePoint};

/// One of the four vertices, ordered `a < b < c < d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    A,
    B,
    C,
    D,
}

impl Vertex {
    pub const ALL: [Vertex; 4] = [Vertex::A, Vertex::B, Vertex::C, Vertex::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    pub fn name(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_name(c: char) -> Option<Self> {
        match c {
            'a' => Some(Vertex::A),
            'b' => Some(Vertex::B),
            'c' => Some(Vertex::C),
            'd' => Some(Vertex::D),
            _ => None,
        }
    }

    /// Position in a 3D embedding with edge length 2, centred at the origin.
    pub fn position_3d(self) -> [f64; 3] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Vertex::A => [s, s, s],
            Vertex::B => [s, -s, -s],
            Vertex::C => [-s, s, -s],
            Vertex::D => [-s, -s, s],
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A face, named by the vertex it omits. Faces order by their sorted vertex
/// triple, so `abc < abd < acd < bcd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    opposite: Vertex,
}

impl Face {
    /// All faces in vertex-triple order.
    pub const ALL: [Face; 4] = [
        Face { opposite: Vertex::D },
        Face { opposite: Vertex::C },
        Face { opposite: Vertex::B },
        Face { opposite: Vertex::A },
    ];
    pub const ABC: Face = Face { opposite: Vertex::D };
    pub const ABD: Face = Face { opposite: Vertex::C };
    pub const ACD: Face = Face { opposite: Vertex::B };
    pub const BCD: Face = Face { opposite: Vertex::A };

    pub fn opposite_to(v: Vertex) -> Self {
        Self { opposite: v }
    }

    pub fn opposite(self) -> Vertex {
        self.opposite
    }

    /// The three vertices in alphabetical order.
    pub fn vertices(self) -> [Vertex; 3] {
        let mut out = [Vertex::A; 3];
        let mut k = 0;
        for v in Vertex::ALL {
            if v != self.opposite {
                out[k] = v;
                k += 1;
            }
        }
        out
    }

    pub fn contains(self, v: Vertex) -> bool {
        v != self.opposite
    }

    /// Slot of `v` in [`Face::vertices`].
    pub fn slot(self, v: Vertex) -> Option<usize> {
        self.vertices().iter().position(|&w| w == v)
    }

    /// The three edges, each omitting one vertex of the face (in slot order).
    pub fn edges(self) -> [Edge; 3] {
        let [u, v, w] = self.vertices();
        [Edge::new(v, w), Edge::new(u, w), Edge::new(u, v)]
    }

    pub fn has_edge(self, e: Edge) -> bool {
        self.contains(e.lo) && self.contains(e.hi)
    }

    /// The other face containing edge `e`.
    pub fn across(self, e: Edge) -> Face {
        debug_assert!(self.has_edge(e));
        let third = self.vertices().into_iter().find(|&v| !e.contains(v)).unwrap();
        Face { opposite: third }
    }

    /// Shared edge of two distinct faces.
    pub fn shared_edge(self, other: Face) -> Edge {
        debug_assert!(self != other);
        Edge::new(self.opposite, other.opposite).complement()
    }

    pub fn name(self) -> String {
        self.vertices().iter().map(|v| v.name()).collect()
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let mut vs: Vec<Vertex> = s.chars().map(Vertex::from_name).collect::<Option<_>>()?;
        vs.sort();
        vs.dedup();
        if vs.len() != 3 || s.len() != 3 {
            return None;
        }
        Face::ALL.into_iter().find(|f| f.vertices().as_slice() == vs.as_slice())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vertices().cmp(&other.vertices())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An unordered edge, stored with `lo < hi`. Edge parameters run from `lo`
/// to `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "an edge needs two distinct vertices");
        if u < v {
            Self { lo: u, hi: v }
        } else {
            Self { lo: v, hi: u }
        }
    }

    pub fn all() -> [Edge; 6] {
        use Vertex::*;
        [Edge::new(A, B), Edge::new(A, C), Edge::new(A, D), Edge::new(B, C), Edge::new(B, D), Edge::new(C, D)]
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The opposite edge (the two vertices not on this one).
    pub fn complement(self) -> Edge {
        let mut rest = Vertex::ALL.into_iter().filter(|&v| !self.contains(v));
        Edge::new(rest.next().unwrap(), rest.next().unwrap())
    }

    pub fn name(self) -> String {
        format!("{}{}", self.lo, self.hi)
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let mut it = s.chars();
        let u = Vertex::from_name(it.next()?)?;
        let v = Vertex::from_name(it.next()?)?;
        if it.next().is_some() || u == v {
            return None;
        }
        Some(Edge::new(u, v))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

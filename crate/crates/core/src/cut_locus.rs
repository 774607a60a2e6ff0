//! Closed-form expanded cut loci, the cut-locus tree on the surface and its
//! special points.
//!
//! Everything is computed for the canonical image of the source point (in
//! the subtriangle `aCM` of face `abc`, drawn in the standard chart of `abc`)
//! and carried back by the inverse symmetry.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::oracle;
use crate::planar::{signed_area, PlanarAffine, PlanarPoint, SQRT3};
use crate::surface::{reduce_to_canonical, CanonicalPosition, Face, Placement, Stratum, SurfacePoint, Vertex};
use crate::trace::trace_point;

/// Points sampled along each cut-locus arc.
pub const ARC_SAMPLES: usize = 128;

/// Corner names of the expanded cut locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    U0,
    UPlus,
    UMinus,
    L0,
    LPlus,
    LMinus,
    B,
    Vertex(Vertex),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::U0 => f.write_str("U0"),
            Label::UPlus => f.write_str("U+"),
            Label::UMinus => f.write_str("U-"),
            Label::L0 => f.write_str("L0"),
            Label::LPlus => f.write_str("L+"),
            Label::LMinus => f.write_str("L-"),
            Label::B => f.write_str("B"),
            Label::Vertex(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolygonVertex {
    pub point: PlanarPoint,
    pub labels: Vec<Label>,
}

impl PolygonVertex {
    pub fn has(&self, label: Label) -> bool {
        self.labels.contains(&label)
    }
}

/// What a cut-locus arc connects: a vertex to a branch node, or the two
/// branch nodes `U` and `L` (the segment `dL` when `U` sits at `d`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ArcKind {
    FromVertex(Vertex),
    UL,
}

/// Two boundary segments of the expanded polygon that are the same arc on
/// the surface. Points at equal parameters are identified; each segment
/// runs from the arc's first end to its second.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GluedPair {
    pub kind: ArcKind,
    /// In the canonical diagram: the copy to the right of the direction from
    /// the source towards the arc's vertex. After mapping back: the copy
    /// the planner selects.
    pub right: [PlanarPoint; 2],
    pub left: [PlanarPoint; 2],
}

impl GluedPair {
    pub fn length(&self, left: bool) -> f64 {
        let s = if left { self.left } else { self.right };
        s[0].dist(s[1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    U,
    L,
    /// `U` and `L` merged into one multiplicity-4 point.
    B,
    /// `U` and `L` at the same vertex (source at the centroid).
    UL,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::U => "U",
            NodeKind::L => "L",
            NodeKind::B => "B",
            NodeKind::UL => "U=L",
        })
    }
}

/// A branch node with its planar copies on the polygon boundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Node {
    pub kind: NodeKind,
    pub copies: Vec<PlanarPoint>,
    pub multiplicity: usize,
}

/// The expanded cut locus of a canonical source in the chart of `abc`.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    pub position: CanonicalPosition,
    pub source: PlanarPoint,
    pub polygon: Vec<PolygonVertex>,
    pub pairs: Vec<GluedPair>,
    pub nodes: Vec<Node>,
}

/// Closed-form corners for parameters `(x, alpha)`.
pub struct Corners {
    pub u0: PlanarPoint,
    pub u_plus: PlanarPoint,
    pub u_minus: PlanarPoint,
    pub l0: PlanarPoint,
    pub l_plus: PlanarPoint,
    pub l_minus: PlanarPoint,
}

pub fn corners(x: f64, alpha: f64) -> Corners {
    let k = if x == 0.0 { 0.0 } else { x * (2.0 - x) / (3.0 * (1.0 - alpha)) };
    let uy = SQRT3 * (1.0 - k);
    let ly = SQRT3 * (1.0 - x * x) / (3.0 * alpha);
    Corners {
        u0: PlanarPoint::new(2.0 - x, SQRT3 * (1.0 + k)),
        u_plus: PlanarPoint::new(2.0 + x, uy),
        u_minus: PlanarPoint::new(-2.0 + x, uy),
        l0: PlanarPoint::new(-x, -ly),
        l_plus: PlanarPoint::new(2.0 + x, ly),
        l_minus: PlanarPoint::new(-2.0 + x, ly),
    }
}

/// Images of the vertices in the chart of `abc`: `a`, `b`, `c`, then `d`
/// across `ac`, across `ab` and across `bc`.
pub mod chart {
    use super::*;

    pub const A: PlanarPoint = PlanarPoint::new(0.0, SQRT3);
    pub const B: PlanarPoint = PlanarPoint::new(-1.0, 0.0);
    pub const C: PlanarPoint = PlanarPoint::new(1.0, 0.0);
    pub const D_PLUS: PlanarPoint = PlanarPoint::new(2.0, SQRT3);
    pub const D_MINUS: PlanarPoint = PlanarPoint::new(-2.0, SQRT3);
    pub const D_ZERO: PlanarPoint = PlanarPoint::new(0.0, -SQRT3);
}

fn pv(point: PlanarPoint, labels: &[Label]) -> PolygonVertex {
    PolygonVertex { point, labels: labels.to_vec() }
}

fn pair(kind: ArcKind, right: [PlanarPoint; 2], left: [PlanarPoint; 2]) -> GluedPair {
    GluedPair { kind, right, left }
}

fn node(kind: NodeKind, copies: &[PlanarPoint], multiplicity: usize) -> Node {
    Node { kind, copies: copies.to_vec(), multiplicity }
}

/// The canonical diagram for a canonical position.
pub fn diagram(position: &CanonicalPosition) -> Diagram {
    use chart::{A, B as VB, C, D_MINUS, D_PLUS, D_ZERO};
    let (x, alpha) = (position.x, position.alpha);
    let k = corners(x, alpha);
    let [va, vb, vc, vd] = Vertex::ALL.map(Label::Vertex);
    let from = |v| ArcKind::FromVertex(v);
    let (polygon, pairs, nodes) = match position.stratum {
        Stratum::S0Interior => (
            vec![
                pv(k.u0, &[Label::U0]),
                pv(A, &[va]),
                pv(k.u_minus, &[Label::UMinus]),
                pv(k.l_minus, &[Label::LMinus]),
                pv(VB, &[vb]),
                pv(k.l0, &[Label::L0]),
                pv(C, &[vc]),
                pv(k.l_plus, &[Label::LPlus]),
                pv(k.u_plus, &[Label::UPlus]),
                pv(D_PLUS, &[vd]),
            ],
            vec![
                pair(from(Vertex::A), [A, k.u0], [A, k.u_minus]),
                pair(from(Vertex::B), [VB, k.l_minus], [VB, k.l0]),
                pair(from(Vertex::C), [C, k.l0], [C, k.l_plus]),
                pair(from(Vertex::D), [D_PLUS, k.u_plus], [D_PLUS, k.u0]),
                pair(ArcKind::UL, [k.u_plus, k.l_plus], [k.u_minus, k.l_minus]),
            ],
            vec![
                node(NodeKind::U, &[k.u0, k.u_plus, k.u_minus], 3),
                node(NodeKind::L, &[k.l0, k.l_plus, k.l_minus], 3),
            ],
        ),
        Stratum::S1EdgeAM | Stratum::S4SegmentCM => {
            let (top, minus, bottom, plus) = (k.u0, k.u_minus, k.l0, k.u_plus);
            (
                vec![
                    pv(top, &[Label::U0, Label::B]),
                    pv(A, &[va]),
                    pv(minus, &[Label::UMinus, Label::LMinus, Label::B]),
                    pv(VB, &[vb]),
                    pv(bottom, &[Label::L0, Label::B]),
                    pv(C, &[vc]),
                    pv(plus, &[Label::UPlus, Label::LPlus, Label::B]),
                    pv(D_PLUS, &[vd]),
                ],
                vec![
                    pair(from(Vertex::A), [A, top], [A, minus]),
                    pair(from(Vertex::B), [VB, minus], [VB, bottom]),
                    pair(from(Vertex::C), [C, bottom], [C, plus]),
                    pair(from(Vertex::D), [D_PLUS, plus], [D_PLUS, top]),
                ],
                vec![node(NodeKind::B, &[top, plus, minus, bottom], 4)],
            )
        }
        Stratum::S2SegmentAC => (
            vec![
                pv(D_MINUS, &[Label::UMinus, vd]),
                pv(k.l_minus, &[Label::LMinus]),
                pv(VB, &[vb]),
                pv(k.l0, &[Label::L0]),
                pv(C, &[vc]),
                pv(k.l_plus, &[Label::LPlus]),
                pv(D_PLUS, &[Label::U0, Label::UPlus, vd]),
                pv(A, &[va]),
            ],
            vec![
                pair(from(Vertex::A), [A, D_PLUS], [A, D_MINUS]),
                pair(from(Vertex::B), [VB, k.l_minus], [VB, k.l0]),
                pair(from(Vertex::C), [C, k.l0], [C, k.l_plus]),
                pair(ArcKind::UL, [D_PLUS, k.l_plus], [D_MINUS, k.l_minus]),
            ],
            vec![node(NodeKind::U, &[D_PLUS, D_MINUS], 2), node(NodeKind::L, &[k.l0, k.l_plus, k.l_minus], 3)],
        ),
        Stratum::S3Centroid => (
            vec![
                pv(D_MINUS, &[Label::UMinus, Label::LMinus, vd]),
                pv(VB, &[vb]),
                pv(D_ZERO, &[Label::L0, vd]),
                pv(C, &[vc]),
                pv(D_PLUS, &[Label::U0, Label::UPlus, Label::LPlus, vd]),
                pv(A, &[va]),
            ],
            vec![
                pair(from(Vertex::A), [A, D_PLUS], [A, D_MINUS]),
                pair(from(Vertex::B), [VB, D_MINUS], [VB, D_ZERO]),
                pair(from(Vertex::C), [C, D_ZERO], [C, D_PLUS]),
            ],
            vec![node(NodeKind::UL, &[D_PLUS, D_MINUS, D_ZERO], 3)],
        ),
        Stratum::S5VertexA => (
            vec![
                pv(D_MINUS, &[vd]),
                pv(k.l_minus, &[Label::LMinus]),
                pv(VB, &[vb]),
                pv(k.l0, &[Label::L0]),
                pv(C, &[vc]),
                pv(k.l_plus, &[Label::LPlus]),
                pv(D_PLUS, &[vd]),
                pv(A, &[va]),
            ],
            vec![
                pair(from(Vertex::B), [VB, k.l_minus], [VB, k.l0]),
                pair(from(Vertex::C), [C, k.l0], [C, k.l_plus]),
                pair(ArcKind::UL, [D_PLUS, k.l_plus], [D_MINUS, k.l_minus]),
            ],
            vec![node(NodeKind::L, &[k.l0, k.l_plus, k.l_minus], 3)],
        ),
    };
    let source = Placement::standard().to_planar(position.image.bary);
    Diagram { position: *position, source, polygon, pairs, nodes }
}

impl Diagram {
    pub fn area(&self) -> f64 {
        signed_area(&self.polygon.iter().map(|v| v.point).collect::<Vec<_>>())
    }

    pub fn corner(&self, label: Label) -> Option<PlanarPoint> {
        self.polygon.iter().find(|v| v.has(label)).map(|v| v.point)
    }

    pub fn node(&self, kind: NodeKind) -> Option<&Node> {
        self.nodes.iter().find(|n| n.kind == kind)
    }

    /// Names of the two ends of the arc of `pair`, in canonical labels.
    pub fn arc_ends(&self, pair: &GluedPair) -> (String, String) {
        let stratum = self.position.stratum;
        let node_at = |p: PlanarPoint| {
            self.nodes.iter().find(|n| n.copies.iter().any(|c| c.dist(p) < 1e-12)).map(|n| n.kind.to_string())
        };
        match pair.kind {
            ArcKind::FromVertex(v) => (v.to_string(), node_at(pair.right[1]).expect("arc ends at a node")),
            ArcKind::UL if stratum == Stratum::S5VertexA => ("d".into(), "L".into()),
            ArcKind::UL => ("U".into(), "L".into()),
        }
    }
}

/// Where a target lies relative to the canonical diagram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Feature {
    /// Interior of the arc of `pairs[index]`, at parameter `tau`.
    Arc {
        index: usize,
        tau: f64,
    },
    Node {
        index: usize,
    },
}

impl Diagram {
    /// Identify which arc or node of the cut locus the planar copies
    /// `targets` (unfolded images of one surface point) represent. Returns
    /// the feature and the matching residual.
    pub fn locate(&self, targets: &[PlanarPoint]) -> Option<(Feature, f64)> {
        let m = targets.len();
        let mut best: Option<(Feature, f64)> = None;
        let offer = |f: Feature, r: f64, best: &mut Option<(Feature, f64)>| {
            if best.is_none_or(|(_, b)| r < b) {
                *best = Some((f, r));
            }
        };
        for (index, n) in self.nodes.iter().enumerate() {
            if n.multiplicity != m {
                continue;
            }
            let r: f64 =
                targets.iter().map(|t| n.copies.iter().map(|c| c.dist(*t)).fold(f64::INFINITY, f64::min)).sum();
            offer(Feature::Node { index }, r, &mut best);
        }
        // a node that fits takes precedence over arcs ending there
        if best.is_some_and(|(_, r)| r <= 1e-6) {
            return best;
        }
        if m == 2 {
            for (index, p) in self.pairs.iter().enumerate() {
                let len = p.length(false);
                for (x, y) in [(targets[0], targets[1]), (targets[1], targets[0])] {
                    let (dr, tr) = x.segment_distance(p.right[0], p.right[1]);
                    let (dl, tl) = y.segment_distance(p.left[0], p.left[1]);
                    let r = dr + dl + (tr - tl).abs() * len;
                    offer(Feature::Arc { index, tau: 0.5 * (tr + tl) }, r, &mut best);
                }
            }
        }
        best
    }

    /// Planar point at parameter `tau` along the chosen copy of an arc.
    pub fn arc_point(&self, index: usize, tau: f64, left: bool) -> PlanarPoint {
        let p = &self.pairs[index];
        let s = if left { p.left } else { p.right };
        s[0].lerp(s[1], tau)
    }
}

/// The expanded cut locus of an arbitrary source point, drawn in the chart
/// of `chart_face`, the face carried onto `abc` by the canonical symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedCutLocus {
    pub source: SurfacePoint,
    pub stratum: Stratum,
    pub chart_face: Face,
    /// Source position in the chart of `chart_face`.
    pub source_chart: PlanarPoint,
    pub polygon: Vec<PolygonVertex>,
    pub glued_pairs: Vec<GluedPair>,
    pub diagram: Diagram,
}

impl ExpandedCutLocus {
    pub fn area(&self) -> f64 {
        signed_area(&self.polygon.iter().map(|v| v.point).collect::<Vec<_>>()).abs()
    }
}

/// Affine map from the chart of `abc` to the chart of `g⁻¹(abc)` that
/// carries the canonical picture back to the source.
fn back_map(position: &CanonicalPosition) -> (Face, PlanarAffine) {
    let inv = position.g.inverse();
    let face = Face::opposite_to(inv.map_vertex(Vertex::D));
    let std = Placement::standard();
    let from = Face::ABC.vertices().map(|v| std.position(Face::ABC, v));
    let to = Face::ABC.vertices().map(|v| std.position(face, inv.map_vertex(v)));
    (face, PlanarAffine::from_triangles(from, to))
}

pub fn expanded_cut_locus(p: &SurfacePoint) -> ExpandedCutLocus {
    let position = reduce_to_canonical(p);
    let diagram = diagram(&position);
    let inv = position.g.inverse();
    let (chart_face, map) = back_map(&position);
    let relabel = |l: &Label| match l {
        Label::Vertex(v) => Label::Vertex(inv.map_vertex(*v)),
        other => *other,
    };
    let mut polygon: Vec<PolygonVertex> = diagram
        .polygon
        .iter()
        .map(|v| PolygonVertex { point: map.apply(v.point), labels: v.labels.iter().map(relabel).collect() })
        .collect();
    if !map.preserves_orientation() {
        polygon.reverse();
    }
    let even = position.g.is_even();
    let glued_pairs = diagram
        .pairs
        .iter()
        .map(|p| {
            let kind = match p.kind {
                ArcKind::FromVertex(v) => ArcKind::FromVertex(inv.map_vertex(v)),
                ArcKind::UL => ArcKind::UL,
            };
            let (sel, other) = if even { (p.right, p.left) } else { (p.left, p.right) };
            GluedPair { kind, right: sel.map(|q| map.apply(q)), left: other.map(|q| map.apply(q)) }
        })
        .collect();
    ExpandedCutLocus {
        source: *p,
        stratum: position.stratum,
        chart_face,
        source_chart: map.apply(diagram.source),
        polygon,
        glued_pairs,
        diagram,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutArc {
    pub ends: (String, String),
    pub kind: ArcKind,
    pub points: Vec<SurfacePoint>,
    /// Multiplicity at interior points of the arc.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutNode {
    pub name: String,
    pub point: SurfacePoint,
    pub multiplicity: usize,
}

/// The cut locus on the surface: a tree of arcs between vertices and branch
/// nodes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutLocusGraph {
    pub source: SurfacePoint,
    pub stratum: Stratum,
    pub arcs: Vec<CutArc>,
    pub nodes: Vec<CutNode>,
}

impl CutLocusGraph {
    /// Whether the arcs form a tree on their end labels.
    pub fn is_tree(&self) -> bool {
        let mut names: Vec<&str> = Vec::new();
        for a in &self.arcs {
            for n in [&a.ends.0, &a.ends.1] {
                if !names.contains(&n.as_str()) {
                    names.push(n);
                }
            }
        }
        if names.len() != self.arcs.len() + 1 {
            return false;
        }
        let mut parent: Vec<usize> = (0..names.len()).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                i = parent[i];
            }
            i
        }
        for a in &self.arcs {
            let i = names.iter().position(|n| *n == a.ends.0).unwrap();
            let j = names.iter().position(|n| *n == a.ends.1).unwrap();
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            if ri == rj {
                return false;
            }
            parent[ri] = rj;
        }
        true
    }

    pub fn all_points(&self) -> impl Iterator<Item = &SurfacePoint> {
        self.arcs.iter().flat_map(|a| a.points.iter())
    }
}

/// Surface point of a planar point of the canonical diagram, carried back to
/// the source's frame.
pub(crate) fn surface_point(d: &Diagram, x: PlanarPoint) -> Result<SurfacePoint> {
    let q = trace_point(&d.position.image, x)?;
    Ok(d.position.g.inverse().apply(&q))
}

pub fn cut_locus_graph(p: &SurfacePoint) -> Result<CutLocusGraph> {
    let position = reduce_to_canonical(p);
    let d = diagram(&position);
    let inv = position.g.inverse();
    let rename = |s: String| match s.chars().next().and_then(Vertex::from_name) {
        Some(v) if s.len() == 1 => inv.map_vertex(v).to_string(),
        _ => s,
    };
    let mut arcs = Vec::with_capacity(d.pairs.len());
    for (index, pair) in d.pairs.iter().enumerate() {
        let points = (0..ARC_SAMPLES)
            .map(|j| surface_point(&d, d.arc_point(index, j as f64 / (ARC_SAMPLES - 1) as f64, false)))
            .collect::<Result<Vec<_>>>()?;
        let (e0, e1) = d.arc_ends(pair);
        let kind = match pair.kind {
            ArcKind::FromVertex(v) => ArcKind::FromVertex(inv.map_vertex(v)),
            ArcKind::UL => ArcKind::UL,
        };
        arcs.push(CutArc { ends: (rename(e0), rename(e1)), kind, points, multiplicity: 2 });
    }
    let nodes = d
        .nodes
        .iter()
        .map(|n| {
            Ok(CutNode {
                name: n.kind.to_string(),
                point: surface_point(&d, n.copies[0])?,
                multiplicity: n.multiplicity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CutLocusGraph { source: *p, stratum: position.stratum, arcs, nodes })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecialPoint {
    pub point: SurfacePoint,
    pub multiplicity: usize,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecialPoints {
    pub u: Option<SpecialPoint>,
    pub l: Option<SpecialPoint>,
    pub b_point: Option<SpecialPoint>,
}

/// The branch nodes `U`, `L` and `B`, with multiplicities and distances from
/// the oracle.
pub fn special_points(p: &SurfacePoint) -> Result<SpecialPoints> {
    let position = reduce_to_canonical(p);
    let d = diagram(&position);
    let special = |kind: NodeKind| -> Result<Option<SpecialPoint>> {
        let Some(n) = d.node(kind) else { return Ok(None) };
        let point = surface_point(&d, n.copies[0])?;
        let set = oracle::geodesics(p, &point)?;
        Ok(Some(SpecialPoint { point, multiplicity: set.multiplicity(), distance: set.distance }))
    };
    let (u, l) = match position.stratum {
        Stratum::S3Centroid => {
            let ul = special(NodeKind::UL)?;
            (ul.clone(), ul)
        }
        _ => (special(NodeKind::U)?, special(NodeKind::L)?),
    };
    Ok(SpecialPoints { u, l, b_point: special(NodeKind::B)? })
}

pub fn is_on_cut_locus(p: &SurfacePoint, q: &SurfacePoint, tol: f64) -> Result<bool> {
    Ok(oracle::min_geodesics(p, q, oracle::DEFAULT_DEPTH, tol)?.multiplicity() >= 2)
}

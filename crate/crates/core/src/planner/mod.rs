//! The five-cell decomposition of pairs of surface points and the rule that
//! picks a minimal geodesic in each cell.

use std::fmt;

use serde::Serialize;

use crate::cut_locus::{diagram, ArcKind, Diagram, Feature, NodeKind};
use crate::error::Result;
use crate::oracle::{self, Geodesic, GeodesicSet};
use crate::planar::PlanarPoint;
use crate::surface::{reduce_to_canonical, CanonicalPosition, Edge, Face, Isometry, Stratum, SurfacePoint, Vertex};

mod audit;

pub use audit::{
    continuity_audit, direction_probe, forced_pairs, oracle_audit, partition_audit, AuditReport, Violation, DEPTH_PAIRS,
};

/// Largest planar mismatch accepted when matching oracle targets against
/// the closed-form diagram.
const MATCH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cell {
    E1,
    E2,
    E3,
    E4,
    E5,
}

impl Cell {
    pub const ALL: [Cell; 5] = [Cell::E1, Cell::E2, Cell::E3, Cell::E4, Cell::E5];

    pub fn from_name(s: &str) -> Option<Cell> {
        Cell::ALL.into_iter().find(|c| c.to_string().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Sub-case data attached to a cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Detail {
    /// The vertex whose cut-locus arc contains `Q`, and the region of `P`.
    Vertex { vertex: Vertex, domain: String },
    /// Type 1 or 2, and the vertex nearest to `P`.
    Branch {
        #[serde(rename = "type")]
        kind: u8,
        vertex: Vertex,
    },
    /// The edge whose midpoint is the center of the star containing `P`.
    Star { star: Edge },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionLabel {
    pub cell: Cell,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Detail>,
}

impl PartitionLabel {
    fn bare(cell: Cell) -> Self {
        Self { cell, detail: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanResult {
    pub label: PartitionLabel,
    pub path: Geodesic,
}

/// Everything the planner derives about a pair before choosing a cell.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub p: SurfacePoint,
    pub q: SurfacePoint,
    pub position: CanonicalPosition,
    pub diagram: Diagram,
    /// Minimal geodesics between the canonical images.
    pub canonical: GeodesicSet,
    pub feature: Option<Feature>,
    pub residual: f64,
    /// Labels of every cell whose defining predicate holds; exactly one
    /// for a consistent pair.
    pub memberships: Vec<PartitionLabel>,
}

impl Analysis {
    pub fn multiplicity(&self) -> usize {
        self.canonical.multiplicity()
    }

    /// Whether the oracle and the closed-form diagram agree on the pair.
    pub fn consistent(&self) -> bool {
        let m = self.multiplicity();
        match self.feature {
            None => m == 1,
            Some(Feature::Node { index }) => self.residual <= MATCH_TOL && self.diagram.nodes[index].multiplicity == m,
            Some(Feature::Arc { .. }) => self.residual <= MATCH_TOL && m == 2,
        }
    }

    pub fn label(&self) -> PartitionLabel {
        let by_rank = |l: &PartitionLabel| match l.cell {
            Cell::E4 => 0,
            Cell::E3 => 1,
            Cell::E5 => 2,
            Cell::E2 => 3,
            Cell::E1 => 4,
        };
        self.memberships.iter().min_by_key(|l| by_rank(l)).cloned().unwrap_or_else(|| PartitionLabel::bare(Cell::E1))
    }

    fn arc_kind(&self) -> Option<ArcKind> {
        match self.feature {
            Some(Feature::Arc { index, .. }) => Some(self.diagram.pairs[index].kind),
            _ => None,
        }
    }

    fn node_kind(&self) -> Option<NodeKind> {
        match self.feature {
            Some(Feature::Node { index }) => Some(self.diagram.nodes[index].kind),
            _ => None,
        }
    }
}

/// The eight pairs of a vertex and the centroid of the opposite face, in
/// either order.
pub fn e4_pairs() -> Vec<(SurfacePoint, SurfacePoint)> {
    let mut out = Vec::with_capacity(8);
    for v in Vertex::ALL {
        let (vp, c) = (SurfacePoint::vertex(v), SurfacePoint::centroid(Face::opposite_to(v)));
        out.push((vp, c));
        out.push((c, vp));
    }
    out
}

fn is_e4_pair(p: &SurfacePoint, q: &SurfacePoint) -> bool {
    e4_pairs().iter().any(|(a, b)| a == p && b == q)
}

/// Region of `P` named after the two vertices it is nearest among those
/// other than `v`, e.g. `aCbd` for `v = d`.
pub fn domain_name(p: &SurfacePoint, v: Vertex) -> String {
    let face = p.face;
    let [lo, hi] = if face.contains(v) {
        let others: Vec<Vertex> = face.vertices().into_iter().filter(|&u| u != v).collect();
        [others[0], others[1]]
    } else {
        let dropped = face.vertices().into_iter().min_by(|x, y| p.weight(*x).total_cmp(&p.weight(*y))).unwrap();
        let others: Vec<Vertex> = face.vertices().into_iter().filter(|&u| u != dropped).collect();
        [others[0], others[1]]
    };
    format!("{lo}C{hi}{v}")
}

pub fn analyze(p: &SurfacePoint, q: &SurfacePoint) -> Result<Analysis> {
    let position = reduce_to_canonical(p);
    let d = diagram(&position);
    let g = position.g;
    let inv = g.inverse();
    let canonical = oracle::geodesics(&position.image, &g.apply(q))?;
    let m = canonical.multiplicity();
    let (feature, residual) = if m >= 2 {
        let targets: Vec<PlanarPoint> = canonical.geodesics.iter().map(|h| h.unfolded_target).collect();
        match d.locate(&targets) {
            Some((f, r)) => (Some(f), r),
            None => (None, f64::INFINITY),
        }
    } else {
        (None, 0.0)
    };
    let mut a = Analysis { p: *p, q: *q, position, diagram: d, canonical, feature, residual, memberships: Vec::new() };
    let stratum = position.stratum;
    let near = inv.map_vertex(Vertex::A);
    let arc = a.arc_kind();
    let node = a.node_kind();
    let e4 = is_e4_pair(p, q)
        || (stratum == Stratum::S3Centroid && node == Some(NodeKind::UL))
        || (stratum == Stratum::S5VertexA && node == Some(NodeKind::L));
    let mut labels = Vec::new();
    if e4 {
        labels.push(PartitionLabel::bare(Cell::E4));
    }
    if m == 1 && !e4 {
        labels.push(PartitionLabel::bare(Cell::E1));
    }
    if let (Some(ArcKind::FromVertex(v)), false) = (arc, stratum == Stratum::S5VertexA) {
        let vertex = inv.map_vertex(v);
        labels.push(PartitionLabel {
            cell: Cell::E2,
            detail: Some(Detail::Vertex { vertex, domain: domain_name(p, vertex) }),
        });
    }
    let on_ul = arc == Some(ArcKind::UL) || matches!(node, Some(NodeKind::U | NodeKind::L));
    let branch = match stratum {
        Stratum::S0Interior if on_ul => Some(1),
        Stratum::S2SegmentAC if on_ul => Some(2),
        Stratum::S5VertexA if arc.is_some() => Some(2),
        _ => None,
    };
    if let (Some(kind), false) = (branch, e4) {
        labels.push(PartitionLabel { cell: Cell::E3, detail: Some(Detail::Branch { kind, vertex: near }) });
    }
    if matches!(stratum, Stratum::S1EdgeAM | Stratum::S4SegmentCM) && node == Some(NodeKind::B) {
        let star = Edge::new(inv.map_vertex(Vertex::A), inv.map_vertex(Vertex::C));
        labels.push(PartitionLabel { cell: Cell::E5, detail: Some(Detail::Star { star }) });
    }
    a.memberships = labels;
    Ok(a)
}

pub fn classify(p: &SurfacePoint, q: &SurfacePoint) -> Result<PartitionLabel> {
    Ok(analyze(p, q)?.label())
}

/// The geodesic of `set` closest to `target` in planar position.
fn nearest_target(set: &GeodesicSet, target: PlanarPoint) -> &Geodesic {
    set.geodesics
        .iter()
        .min_by(|x, y| x.unfolded_target.dist(target).total_cmp(&y.unfolded_target.dist(target)))
        .expect("nonempty geodesic set")
}

/// The member of `set` that coincides with `g⁻¹` applied to `canonical`.
fn map_back<'a>(g: &Isometry, canonical: &Geodesic, set: &'a GeodesicSet) -> &'a Geodesic {
    let inv = g.inverse();
    let mapped: Vec<SurfacePoint> = canonical.samples.iter().map(|s| inv.apply(s)).collect();
    let gap = |h: &Geodesic| h.samples.iter().zip(&mapped).map(|(x, y)| x.chord(y)).fold(0.0, f64::max);
    set.geodesics.iter().min_by(|x, y| gap(x).total_cmp(&gap(y))).expect("nonempty geodesic set")
}

/// The even symmetry fixing `a` that sends `v` to `d`.
fn turn_to_d(v: Vertex) -> Isometry {
    Isometry::all()
        .into_iter()
        .find(|k| k.is_even() && k.map_vertex(Vertex::A) == Vertex::A && k.map_vertex(v) == Vertex::D)
        .expect("rotation about a exists")
}

/// Planar copy, in the canonical diagram, that the right-hand rule selects
/// for an arc or node feature.
fn right_hand_target(d: &Diagram, feature: Feature, even: bool) -> PlanarPoint {
    match feature {
        Feature::Arc { index, tau } => d.arc_point(index, tau, !even),
        Feature::Node { index } => {
            let n = &d.nodes[index];
            // copies are listed [centre, plus, minus]; two-copy nodes are [plus, minus]
            let (plus, minus) = if n.copies.len() == 2 { (0, 1) } else { (1, 2) };
            n.copies[if even { plus } else { minus }]
        }
    }
}

fn select_right(a: &Analysis, original: &GeodesicSet) -> Result<Geodesic> {
    let feature = a.feature.expect("arc or node feature");
    let g = a.position.g;
    if a.position.stratum == Stratum::S5VertexA {
        if let Some(ArcKind::FromVertex(v)) = a.arc_kind() {
            let k = turn_to_d(v);
            let g2 = k.compose(&g);
            let set = oracle::geodesics(&a.position.image, &g2.apply(&a.q))?;
            let targets: Vec<PlanarPoint> = set.geodesics.iter().map(|h| h.unfolded_target).collect();
            let (f2, _) = a.diagram.locate(&targets).expect("arc located");
            let chosen = nearest_target(&set, right_hand_target(&a.diagram, f2, g2.is_even()));
            return Ok(map_back(&g2, chosen, original).clone());
        }
    }
    let chosen = nearest_target(&a.canonical, right_hand_target(&a.diagram, feature, g.is_even()));
    Ok(map_back(&g, chosen, original).clone())
}

/// Fixed choice for a vertex and the opposite centroid: the geodesic whose
/// alphabetically smallest crossed edge is smallest.
fn table_choice(set: &GeodesicSet) -> Geodesic {
    set.geodesics
        .iter()
        .min_by_key(|h| h.crossings.iter().map(|c| c.edge).min())
        .expect("nonempty geodesic set")
        .clone()
}

/// On the star of edge `{u < v}` with `B` on the opposite edge `{w < z}`,
/// the geodesic crossing edge `{v, z}`.
fn star_choice(star: Edge, set: &GeodesicSet) -> Geodesic {
    let opposite = star.complement();
    let key = Edge::new(star.hi, opposite.hi);
    set.geodesics
        .iter()
        .filter(|h| h.crossings.iter().any(|c| c.edge == key))
        .min_by_key(|h| h.crossings.len())
        .unwrap_or(&set.geodesics[0])
        .clone()
}

pub fn plan(a: &Analysis) -> Result<PlanResult> {
    let label = a.label();
    let original = oracle::geodesics(&a.p, &a.q)?;
    let path = match (&label.cell, &label.detail) {
        (Cell::E1, _) => original.geodesics[0].clone(),
        (Cell::E2 | Cell::E3, _) => select_right(a, &original)?,
        (Cell::E4, _) => table_choice(&original),
        (Cell::E5, Some(Detail::Star { star })) => star_choice(*star, &original),
        (Cell::E5, _) => unreachable!("E5 labels carry a star"),
    };
    Ok(PlanResult { label, path })
}

pub fn phi(p: &SurfacePoint, q: &SurfacePoint) -> Result<PlanResult> {
    plan(&analyze(p, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::SQRT3;
    use crate::surface::{parse_point, Placement};
    use crate::trace::trace_point;

    fn pt(s: &str) -> SurfacePoint {
        parse_point(s).unwrap()
    }

    fn generic() -> SurfacePoint {
        Stratum::point(0.25, 0.5)
    }

    #[test]
    fn unique_geodesic_is_e1() {
        let r = phi(&generic(), &pt("centroid:abc")).unwrap();
        assert_eq!(r.label.cell, Cell::E1);
        let expected = (0.25f64.powi(2) + (0.5 * SQRT3 - SQRT3 / 3.0).powi(2)).sqrt();
        assert!((r.path.length - expected).abs() < 1e-12);
        assert!((expected - 0.3818813).abs() < 1e-7);
    }

    #[test]
    fn vertex_centroid_is_e4() {
        for (p, q) in e4_pairs() {
            assert_eq!(classify(&p, &q).unwrap().cell, Cell::E4);
        }
        let r = phi(&pt("a"), &pt("centroid:bcd")).unwrap();
        assert!((r.path.length - 4.0 / SQRT3).abs() < 1e-12);
        assert_eq!(r.path.crossings[0].edge, Edge::from_name("bc").unwrap());
    }

    #[test]
    fn midpoints_are_e5() {
        let r = phi(&pt("mid:ac"), &pt("mid:bd")).unwrap();
        assert_eq!(r.label.detail, Some(Detail::Star { star: Edge::from_name("ac").unwrap() }));
        let angle = r.path.initial_direction.unwrap().angle();
        assert!(angle.min(std::f64::consts::TAU - angle) < 1e-9);
    }

    #[test]
    fn vertex_arc_selects_u0_copy() {
        let p = generic();
        let u0 = crate::cut_locus::corners(0.25, 0.5).u0;
        let mid = crate::cut_locus::chart::A.lerp(u0, 0.5);
        assert!(mid.dist(PlanarPoint::new(0.875, 1.9846415)) < 1e-7);
        let q = trace_point(&p, mid).unwrap();
        let r = phi(&p, &q).unwrap();
        assert_eq!(r.label.cell, Cell::E2);
        assert!(matches!(r.label.detail, Some(Detail::Vertex { vertex: Vertex::A, .. })));
        let from = Placement::standard().to_planar(p.bary);
        assert!((r.path.length - from.dist(mid)).abs() < 1e-6);
        assert!((r.path.length - 1.2813770).abs() < 1e-6);
        assert!(r.path.unfolded_target.dist(mid) < 1e-6);
    }

    #[test]
    fn branch_points_are_e3() {
        let p = generic();
        let d = diagram(&reduce_to_canonical(&p));
        for n in &d.nodes {
            let q = trace_point(&p, n.copies[0]).unwrap();
            let l = classify(&p, &q).unwrap();
            assert_eq!(l.cell, Cell::E3);
            assert_eq!(l.detail, Some(Detail::Branch { kind: 1, vertex: Vertex::A }));
        }
    }
}

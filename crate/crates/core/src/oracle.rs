//! Brute-force minimal geodesics: every unfolding chain up to a depth is
//! tried, straight segments are validated against the chain, and the
//! shortest ones are kept.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::planar::PlanarPoint;
use crate::surface::{enumerate_from, unfold_across, Edge, Face, Placement, SurfacePoint, UnfoldChain, MAX_DEPTH};

pub const DEFAULT_DEPTH: usize = 4;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const SAMPLES: usize = 64;
/// Two geodesics whose sample polylines stay this close are the same path.
pub const DEDUP_TOL: f64 = 1e-7;

/// Crossings this close to a chain endpoint or an edge endpoint are
/// rejected while searching.
const STRICT: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub edge: Edge,
    /// Parameter along the edge, from `edge.lo` to `edge.hi`.
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Geodesic {
    pub source: SurfacePoint,
    pub target: SurfacePoint,
    pub length: f64,
    pub crossings: Vec<Crossing>,
    /// Unit vector in the chart of the source's face; `None` for the
    /// degenerate path from a point to itself.
    pub initial_direction: Option<PlanarPoint>,
    pub samples: Vec<SurfacePoint>,
    /// Image of the target in the source face's chart along this path.
    pub unfolded_target: PlanarPoint,
}

impl Geodesic {
    /// Largest 3D distance between corresponding samples.
    pub fn sup_distance(&self, other: &Geodesic) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(p, q)| p.chord(q)).fold(0.0, f64::max)
    }

    fn sort_key(&self) -> (i64, Vec<(Edge, i64)>) {
        let q = |x: f64| (x * 1e9).round() as i64;
        (q(self.length), self.crossings.iter().map(|c| (c.edge, q(c.t))).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicSet {
    pub distance: f64,
    pub geodesics: Vec<Geodesic>,
}

impl GeodesicSet {
    pub fn multiplicity(&self) -> usize {
        self.geodesics.len()
    }
}

type ChainKey = (Face, Face, usize);

/// Chains rooted at `start`, laid out in the chart of `base` (the two faces
/// are equal or adjacent).
pub(crate) fn chains(base: Face, start: Face, depth: usize) -> Arc<Vec<UnfoldChain>> {
    static CACHE: OnceLock<Mutex<HashMap<ChainKey, Arc<Vec<UnfoldChain>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(base, start, depth)) {
        return c.clone();
    }
    let root = if start == base {
        Placement::standard()
    } else {
        unfold_across(base, &Placement::standard(), base.shared_edge(start)).1
    };
    let built = Arc::new(enumerate_from(start, root, depth));
    cache.lock().unwrap().entry((base, start, depth)).or_insert(built).clone()
}

/// Position of `p` in the chart of its own face.
pub fn chart_position(p: &SurfacePoint) -> PlanarPoint {
    Placement::standard().to_planar(p.bary)
}

/// Where the segment `from → to` meets each crossed edge of `chain`:
/// `(t along the edge, s along the segment)`. `None` unless every crossing
/// is transversal, strictly inside the edge and strictly ordered.
pub(crate) fn segment_crossings(
    chain: &UnfoldChain,
    from: PlanarPoint,
    to: PlanarPoint,
    strict: f64,
) -> Option<Vec<(f64, f64)>> {
    let d = to - from;
    let mut out = Vec::with_capacity(chain.crossed_edges.len());
    let mut last_s = strict;
    for (i, e) in chain.crossed_edges.iter().enumerate() {
        let pl = &chain.placements[i];
        let face = chain.faces[i];
        let (a, b) = (pl.position(face, e.lo), pl.position(face, e.hi));
        let ev = b - a;
        let denom = d.cross(ev);
        if denom.abs() < 1e-15 {
            return None;
        }
        let s = (a - from).cross(ev) / denom;
        let t = (a - from).cross(d) / denom;
        if !(s > last_s && s < 1.0 - strict && t > strict && t < 1.0 - strict) {
            return None;
        }
        last_s = s;
        out.push((t, s));
    }
    Some(out)
}

/// Surface point at planar position `x` of face `i` of the chain.
fn locate(chain: &UnfoldChain, i: usize, x: PlanarPoint) -> SurfacePoint {
    SurfacePoint::from_raw(chain.faces[i], chain.placements[i].to_bary(x))
}

pub(crate) fn build_geodesic(
    p: &SurfacePoint,
    q: &SurfacePoint,
    chain: &UnfoldChain,
    from: PlanarPoint,
    to: PlanarPoint,
    hits: &[(f64, f64)],
) -> Geodesic {
    let crossings = chain.crossed_edges.iter().zip(hits).map(|(&edge, &(t, _))| Crossing { edge, t }).collect();
    let mut samples = Vec::with_capacity(SAMPLES);
    let mut face = 0;
    for k in 0..SAMPLES {
        let s = k as f64 / (SAMPLES - 1) as f64;
        while face < hits.len() && hits[face].1 < s {
            face += 1;
        }
        samples.push(match k {
            0 => *p,
            k if k == SAMPLES - 1 => *q,
            _ => locate(chain, face, from.lerp(to, s)),
        });
    }
    Geodesic {
        source: *p,
        target: *q,
        length: from.dist(to),
        crossings,
        initial_direction: Some((to - from).normalized()),
        samples,
        unfolded_target: to,
    }
}

fn degenerate(p: &SurfacePoint) -> GeodesicSet {
    let g = Geodesic {
        source: *p,
        target: *p,
        length: 0.0,
        crossings: Vec::new(),
        initial_direction: None,
        samples: vec![*p; SAMPLES],
        unfolded_target: chart_position(p),
    };
    GeodesicSet { distance: 0.0, geodesics: vec![g] }
}

/// Length, chain list and index, unfolded target and edge hits of a
/// straight segment that survived validation.
type Candidate = (f64, Arc<Vec<UnfoldChain>>, usize, PlanarPoint, Vec<(f64, f64)>);

/// All minimal geodesics from `p` to `q` found among unfoldings of at most
/// `depth` crossings, keeping every path within `tol` of the shortest.
pub fn min_geodesics(p: &SurfacePoint, q: &SurfacePoint, depth: usize, tol: f64) -> Result<GeodesicSet> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthTooLarge(depth));
    }
    if p.chord(q) == 0.0 {
        return Ok(degenerate(p));
    }
    let from = chart_position(p);
    let mut found: Vec<Candidate> = Vec::new();
    let mut best = f64::INFINITY;
    for start in p.faces() {
        let list = chains(p.face, start, depth);
        for (idx, chain) in list.iter().enumerate() {
            let Some(bary) = q.bary_in(chain.last_face()) else { continue };
            let to = chain.last_placement().to_planar(bary);
            let len = from.dist(to);
            if len > best + tol {
                continue;
            }
            if let Some(hits) = segment_crossings(chain, from, to, STRICT) {
                best = best.min(len);
                found.push((len, list.clone(), idx, to, hits));
            }
        }
    }
    if found.is_empty() {
        return Err(Error::NoPathFound(depth));
    }
    let mut geodesics: Vec<Geodesic> = Vec::new();
    for (len, list, idx, to, hits) in found {
        if len > best + tol {
            continue;
        }
        let g = build_geodesic(p, q, &list[idx], from, to, &hits);
        if geodesics.iter().all(|h| h.sup_distance(&g) > DEDUP_TOL) {
            geodesics.push(g);
        }
    }
    geodesics.sort_by_key(Geodesic::sort_key);
    Ok(GeodesicSet { distance: best, geodesics })
}

pub fn geodesics(p: &SurfacePoint, q: &SurfacePoint) -> Result<GeodesicSet> {
    min_geodesics(p, q, DEFAULT_DEPTH, DEFAULT_TOL)
}

pub fn distance(p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
    Ok(geodesics(p, q)?.distance)
}

pub fn multiplicity(p: &SurfacePoint, q: &SurfacePoint) -> Result<usize> {
    Ok(geodesics(p, q)?.multiplicity())
}

/// Initial directions of the minimal geodesics, in the chart of `p`'s face.
pub fn initial_directions(p: &SurfacePoint, q: &SurfacePoint) -> Result<Vec<PlanarPoint>> {
    if p.chord(q) == 0.0 {
        return Err(Error::SamePoint);
    }
    Ok(geodesics(p, q)?.geodesics.iter().filter_map(|g| g.initial_direction).collect())
}

/// Rebuild the unfolding implied by the claimed crossings and check the
/// straight segment against every recorded field.
pub fn validate_geodesic(g: &Geodesic) -> bool {
    validate_geodesic_within(g, 1e-9)
}

/// The chain that starts on face `start` of `source` and crosses `edges` in
/// order, or `None` if some edge is not on the current face.
fn replay(source: &SurfacePoint, start: Face, edges: &[Edge]) -> Option<UnfoldChain> {
    let mut chain = chains(source.face, start, 0)[0].clone();
    for &e in edges {
        let face = chain.last_face();
        if !face.has_edge(e) {
            return None;
        }
        let (next, placement) = unfold_across(face, chain.last_placement(), e);
        chain.faces.push(next);
        chain.crossed_edges.push(e);
        chain.placements.push(placement);
    }
    Some(chain)
}

/// Position of `target` in the chart of `source` after unfolding across
/// `edges`, from the first face of `source` where that is possible.
pub fn unfold_along(source: &SurfacePoint, target: &SurfacePoint, edges: &[Edge]) -> Option<PlanarPoint> {
    source.faces().into_iter().find_map(|start| {
        let chain = replay(source, start, edges)?;
        target.bary_in(chain.last_face()).map(|b| chain.last_placement().to_planar(b))
    })
}

/// [`validate_geodesic`] with every comparison made at `tol`.
pub fn validate_geodesic_within(g: &Geodesic, tol: f64) -> bool {
    if g.samples.len() != SAMPLES || !g.length.is_finite() || g.length < 0.0 {
        return false;
    }
    if g.length == 0.0 {
        return g.crossings.is_empty() && g.initial_direction.is_none() && g.source.chord(&g.target) <= tol;
    }
    if g.crossings.iter().any(|c| !(c.t > 0.0 && c.t < 1.0)) {
        return false;
    }
    let from = chart_position(&g.source);
    let edges: Vec<Edge> = g.crossings.iter().map(|c| c.edge).collect();
    g.source.faces().into_iter().any(|start| {
        let Some(chain) = replay(&g.source, start, &edges) else { return false };
        let Some(bary) = g.target.bary_in(chain.last_face()) else { return false };
        let to = chain.last_placement().to_planar(bary);
        let Some(hits) = segment_crossings(&chain, from, to, 0.0) else { return false };
        let dir_ok = g.initial_direction.is_some_and(|d| d.dist((to - from).normalized()) <= tol);
        dir_ok
            && (from.dist(to) - g.length).abs() <= tol
            && to.dist(g.unfolded_target) <= tol
            && hits.iter().zip(&g.crossings).all(|(&(t, _), c)| (t - c.t).abs() <= tol)
            && g.samples[0].chord(&g.source) <= tol
            && g.samples[SAMPLES - 1].chord(&g.target) <= tol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::SQRT3;
    use crate::surface::{parse_point, Vertex};

    fn pt(s: &str) -> SurfacePoint {
        parse_point(s).unwrap()
    }

    #[test]
    fn same_point_is_degenerate() {
        let p = pt("abc:0.2,0.3,0.5");
        let set = geodesics(&p, &p).unwrap();
        assert_eq!(set.distance, 0.0);
        assert_eq!(set.multiplicity(), 1);
        assert!(set.geodesics[0].crossings.is_empty());
        assert!(validate_geodesic(&set.geodesics[0]));
        assert_eq!(initial_directions(&p, &p), Err(Error::SamePoint));
    }

    #[test]
    fn edge_length_between_vertices() {
        let set = geodesics(&pt("a"), &pt("b")).unwrap();
        assert!((set.distance - 2.0).abs() < 1e-12);
        assert_eq!(set.multiplicity(), 1);
    }

    #[test]
    fn centroid_to_opposite_vertex() {
        let d = distance(&pt("centroid:abc"), &pt("d")).unwrap();
        // (0, √3/3) to (0, -√3) after unfolding across bc
        assert!((d - 4.0 / SQRT3).abs() < 1e-12);
        assert_eq!(multiplicity(&pt("centroid:abc"), &pt("d")).unwrap(), 3);
    }

    #[test]
    fn midpoints_of_opposite_edges() {
        let set = geodesics(&pt("mid:ac"), &pt("mid:bd")).unwrap();
        assert!((set.distance - 2.0).abs() < 1e-12);
        assert_eq!(set.multiplicity(), 4);
        for g in &set.geodesics {
            assert!(validate_geodesic(g));
        }
    }

    #[test]
    fn perturbed_geodesics_fail_validation() {
        let set = geodesics(&pt("abc:0.5,0.2,0.3"), &pt("bcd:0.3,0.3,0.4")).unwrap();
        let g = &set.geodesics[0];
        assert!(validate_geodesic(g));
        let mut longer = g.clone();
        longer.length += 1e-3;
        assert!(!validate_geodesic(&longer));
        let mut dropped = g.clone();
        assert!(!dropped.crossings.is_empty());
        dropped.crossings.remove(0);
        assert!(!validate_geodesic(&dropped));
    }

    #[test]
    fn depth_guard_and_shallow_failure() {
        let (p, q) = (pt("abc:0.5,0.2,0.3"), pt("bcd:0.3,0.3,0.4"));
        assert_eq!(min_geodesics(&p, &q, 13, 1e-9), Err(Error::DepthTooLarge(13)));
        assert_eq!(min_geodesics(&p, &q, 0, 1e-9), Err(Error::NoPathFound(0)));
    }

    #[test]
    fn vertex_source_mirror_copies_collapse() {
        let set = geodesics(&SurfacePoint::vertex(Vertex::A), &pt("bcd:0.2,0.3,0.5")).unwrap();
        assert_eq!(set.multiplicity(), 1);
    }

    #[test]
    fn samples_have_constant_speed() {
        let set = geodesics(&pt("abc:0.6,0.3,0.1"), &pt("acd:0.1,0.1,0.8")).unwrap();
        let g = &set.geodesics[0];
        let step = g.length / (SAMPLES - 1) as f64;
        for w in g.samples.windows(2) {
            // chords never exceed surface steps
            assert!(w[0].chord(&w[1]) <= step + 1e-12);
        }
    }
}

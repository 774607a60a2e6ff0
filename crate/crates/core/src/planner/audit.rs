use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{analyze, e4_pairs, plan, Cell, PartitionLabel};
use crate::cut_locus::{diagram, ArcKind, NodeKind};
use crate::error::{Error, Result};
use crate::oracle::{self, validate_geodesic, Geodesic};
use crate::planar::PlanarPoint;
use crate::sampling::{
    arc_point, isometry, node_point, random_arc_point, random_node_point, rng_for, stratum_point, uniform_point,
};
use crate::surface::{parse_point, reduce_to_canonical, Edge, Placement, Stratum, SurfacePoint, Vertex};

const MINIMALITY_TOL: f64 = 1e-9;
/// Gap between the first and last pair of a convergent sequence.
const DELTA0: f64 = 1e-2;
const HALVINGS: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub audit: String,
    pub samples: usize,
    pub seed: u64,
    pub violations: Vec<Violation>,
    pub summary: BTreeMap<String, f64>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn violation(index: usize, kind: &str, detail: impl Into<String>) -> Violation {
    Violation { index, kind: kind.to_string(), detail: detail.into() }
}

/// Outcome of one pair of the partition audit.
struct PairCheck {
    label: Option<PartitionLabel>,
    violations: Vec<Violation>,
}

fn check_pair(index: usize, p: &SurfacePoint, q: &SurfacePoint, expected: Option<Cell>) -> PairCheck {
    let mut out = Vec::new();
    let a = match analyze(p, q) {
        Ok(a) => a,
        Err(e) => {
            return PairCheck { label: None, violations: vec![violation(index, "error", format!("{p} {q}: {e}"))] }
        }
    };
    if a.memberships.len() != 1 {
        let cells: Vec<String> = a.memberships.iter().map(|l| l.cell.to_string()).collect();
        out.push(violation(index, "cells", format!("{p} {q}: claimed by [{}]", cells.join(","))));
    }
    if !a.consistent() {
        out.push(violation(
            index,
            "inconsistent",
            format!("{p} {q}: multiplicity {} residual {:e}", a.multiplicity(), a.residual),
        ));
    }
    let label = a.label();
    if let Some(cell) = expected {
        if label.cell != cell {
            out.push(violation(index, "expected", format!("{p} {q}: {} instead of {cell}", label.cell)));
        }
    }
    match (plan(&a), oracle::distance(p, q)) {
        (Ok(r), Ok(dist)) => {
            if r.path.length - dist > MINIMALITY_TOL {
                out.push(violation(index, "minimality", format!("{p} {q}: {} > {}", r.path.length, dist)));
            }
            if !validate_geodesic(&r.path) || r.path.source != *p || r.path.target != *q {
                out.push(violation(index, "path", format!("{p} {q}: invalid path")));
            }
        }
        (Err(e), _) | (_, Err(e)) => out.push(violation(index, "error", format!("{p} {q}: {e}"))),
    }
    PairCheck { label: Some(label), violations: out }
}

/// Pairs that must always be audited: every vertex/centroid pair, the
/// midpoints of opposite edges, and every node and arc of the cut locus for
/// a point of each stratum.
pub fn forced_pairs() -> Vec<(SurfacePoint, SurfacePoint, Option<Cell>)> {
    let mut out: Vec<_> = e4_pairs().into_iter().map(|(p, q)| (p, q, Some(Cell::E4))).collect();
    for e in Edge::all() {
        out.push((SurfacePoint::midpoint(e), SurfacePoint::midpoint(e.complement()), Some(Cell::E5)));
    }
    let mut rng = rng_for(0, 0);
    for s in Stratum::ALL {
        let p = stratum_point(&mut rng, s);
        let d = diagram(&reduce_to_canonical(&p));
        for i in 0..d.nodes.len() {
            if let Ok(q) = node_point(&p, i) {
                out.push((p, q, None));
            }
        }
        for i in 0..d.pairs.len() {
            if let Ok(q) = arc_point(&p, i, 0.5) {
                out.push((p, q, None));
            }
        }
        out.push((p, p, Some(Cell::E1)));
    }
    out
}

fn random_pair(rng: &mut impl Rng, kind: usize) -> Result<(SurfacePoint, SurfacePoint)> {
    let degenerate = |rng: &mut _| stratum_point(rng, Stratum::ALL[1 + kind % 5]);
    Ok(match kind % 7 {
        0 => (uniform_point(rng), uniform_point(rng)),
        1 => {
            let p = uniform_point(rng);
            (p, random_arc_point(rng, &p)?)
        }
        2 => {
            let p = uniform_point(rng);
            (p, random_node_point(rng, &p)?)
        }
        3 => {
            let p = degenerate(rng);
            (p, random_arc_point(rng, &p)?)
        }
        4 => {
            let p = degenerate(rng);
            (p, random_node_point(rng, &p)?)
        }
        5 => (uniform_point(rng), SurfacePoint::vertex(Vertex::ALL[rng.gen_range(0..4)])),
        _ => (SurfacePoint::vertex(Vertex::ALL[rng.gen_range(0..4)]), uniform_point(rng)),
    })
}

/// Label every forced pair and `n` seeded random pairs, checking that each
/// falls in exactly one cell and that the planned path is minimal.
pub fn partition_audit(n: usize, seed: u64) -> AuditReport {
    let forced = forced_pairs();
    let nf = forced.len();
    let results: Vec<PairCheck> = (0..nf + n)
        .into_par_iter()
        .map(|i| {
            if i < nf {
                let (p, q, cell) = &forced[i];
                return check_pair(i, p, q, *cell);
            }
            let mut rng = rng_for(seed, i - nf);
            match random_pair(&mut rng, i - nf) {
                Ok((p, q)) => check_pair(i, &p, &q, None),
                Err(e) => PairCheck { label: None, violations: vec![violation(i, "error", e.to_string())] },
            }
        })
        .collect();
    let mut summary = BTreeMap::new();
    summary.insert("forced".to_string(), nf as f64);
    for r in &results {
        if let Some(l) = &r.label {
            *summary.entry(l.cell.to_string()).or_insert(0.0) += 1.0;
        }
    }
    let violations = results.into_iter().flat_map(|r| r.violations).collect();
    AuditReport { audit: "partition".into(), samples: n, seed, violations, summary }
}

fn sup_distance(g: &Geodesic, h: &Geodesic) -> f64 {
    g.sup_distance(h)
}

/// A sequence of pairs `(P_k, Q_k)` converging to `(P_0, Q_0)` as the gap
/// `δ` shrinks.
type Family = Box<dyn Fn(f64) -> Result<(SurfacePoint, SurfacePoint)> + Send + Sync>;

/// Move `p` by `delta` in direction `dir` within the chart of its face.
fn shifted(p: &SurfacePoint, dir: PlanarPoint, delta: f64) -> Option<SurfacePoint> {
    let std = Placement::standard();
    let bary = std.to_bary(std.to_planar(p.bary) + dir * delta);
    bary.iter().all(|&w| w > 0.0).then(|| SurfacePoint::from_raw(p.face, bary))
}

fn unit(rng: &mut impl Rng) -> PlanarPoint {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    PlanarPoint::new(t.cos(), t.sin())
}

/// The arc of the cut locus of `p` with the given kind, in `p`'s own vertex
/// names.
fn arc_index(p: &SurfacePoint, kind: ArcKind) -> Option<usize> {
    let pos = reduce_to_canonical(p);
    let kind = match kind {
        ArcKind::FromVertex(v) => ArcKind::FromVertex(pos.g.map_vertex(v)),
        ArcKind::UL => ArcKind::UL,
    };
    diagram(&pos).pairs.iter().position(|pair| pair.kind == kind)
}

fn node_index(p: &SurfacePoint, kind: NodeKind) -> Option<usize> {
    diagram(&reduce_to_canonical(p)).nodes.iter().position(|n| n.kind == kind)
}

fn family(cell: Cell, rng: &mut impl Rng) -> Option<Family> {
    let shift = |rng: &mut _| {
        let p = uniform_point(rng);
        let dir = unit(rng);
        shifted(&p, dir, DELTA0)?;
        Some((p, dir))
    };
    match cell {
        Cell::E1 => {
            let (p, dp) = shift(rng)?;
            let (q, dq) = shift(rng)?;
            Some(Box::new(move |d| Ok((shifted(&p, dp, d).unwrap(), shifted(&q, dq, d).unwrap()))))
        }
        Cell::E2 => {
            let (p, dp) = shift(rng)?;
            let v = Vertex::ALL[rng.gen_range(0..4)];
            let tau = rng.gen_range(0.05..0.95);
            Some(Box::new(move |d| {
                let pk = shifted(&p, dp, d).unwrap();
                let arc = arc_index(&pk, ArcKind::FromVertex(v)).ok_or(Error::OutsideChart)?;
                Ok((pk, arc_point(&pk, arc, tau)?))
            }))
        }
        Cell::E3 => {
            let tau = [0.0, 1.0, rng.gen_range(0.0..1.0)][rng.gen_range(0..3)];
            if rng.gen_bool(0.5) {
                let (p, dp) = shift(rng)?;
                Some(Box::new(move |d| {
                    let pk = shifted(&p, dp, d).unwrap();
                    let arc = arc_index(&pk, ArcKind::UL).ok_or(Error::OutsideChart)?;
                    Ok((pk, arc_point(&pk, arc, tau)?))
                }))
            } else {
                // P slides along a segment from a vertex to a centroid
                let g = isometry(rng);
                let alpha = rng.gen_range(0.4..0.95);
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                Some(Box::new(move |d| {
                    let pk = g.apply(&Stratum::point(0.0, alpha + sign * d));
                    let arc = arc_index(&pk, ArcKind::UL).ok_or(Error::OutsideChart)?;
                    Ok((pk, arc_point(&pk, arc, tau)?))
                }))
            }
        }
        Cell::E5 => {
            let g = isometry(rng);
            let on_edge = rng.gen_bool(0.5);
            let x0 = if rng.gen_bool(0.25) { 0.5 } else { rng.gen_range(0.05..0.45) };
            let sign = if x0 == 0.5 || rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            Some(Box::new(move |d| {
                let x = x0 + sign * d;
                let alpha = if on_edge { 1.0 - x } else { (1.0 + x) / 3.0 };
                let pk = g.apply(&Stratum::point(x, alpha));
                let node = node_index(&pk, NodeKind::B).ok_or(Error::OutsideChart)?;
                Ok((pk, node_point(&pk, node)?))
            }))
        }
        Cell::E4 => None,
    }
}

struct Sequence {
    start: String,
    gaps: Vec<f64>,
    /// Whether member `k` has the canonical symmetry of the limit pair.
    same_chart: Vec<bool>,
}

/// Sup-distances between the planned path at the limit pair and at each
/// pair of the family, or `None` when the family leaves the cell component.
fn run_family(cell: Cell, f: &Family) -> Result<Option<Sequence>> {
    let (p0, q0) = f(0.0)?;
    let base_analysis = analyze(&p0, &q0)?;
    let base = plan(&base_analysis)?;
    let mut gaps = Vec::with_capacity(HALVINGS + 1);
    let mut charts = Vec::with_capacity(HALVINGS + 1);
    for k in 0..=HALVINGS {
        let delta = DELTA0 / f64::powi(2.0, k as i32);
        let (p, q) = f(delta)?;
        let a = analyze(&p, &q)?;
        let r = plan(&a)?;
        if r.label != base.label {
            return Ok(None);
        }
        // both endpoints stay inside their faces, so a unique geodesic keeps
        // its edge sequence unless the pair jumped across the cut locus
        let edges = |g: &Geodesic| g.crossings.iter().map(|c| c.edge).collect::<Vec<_>>();
        if cell == Cell::E1 && edges(&r.path) != edges(&base.path) {
            return Ok(None);
        }
        charts.push(a.position.g);
        gaps.push(sup_distance(&base.path, &r.path));
    }
    let same_chart = charts.iter().map(|g| *g == base_analysis.position.g).collect();
    let start = format!("P={p0} Q={q0} {:?}", base.label);
    Ok(Some(Sequence { start, gaps, same_chart }))
}

fn angular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// At the midpoints of opposite edges the four minimal geodesics leave in
/// directions at least 60° apart, so no single continuous choice extends
/// over a neighbourhood.
pub fn direction_probe() -> Result<Vec<f64>> {
    let m = parse_point("mid:ac")?;
    let b = parse_point("mid:bd")?;
    let mut angles: Vec<f64> = oracle::initial_directions(&m, &b)?.iter().map(|d| d.angle()).collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

/// Pairs with `P` on a segment from a vertex to a centroid and `Q` on the
/// arc towards the vertex opposite that face must not be in `E2`.
fn exclusion_probe(violations: &mut Vec<Violation>) {
    for alpha in [0.4, 0.5, 2.0 / 3.0, 0.9] {
        let p = Stratum::point(0.0, alpha);
        let Some(arc) = arc_index(&p, ArcKind::UL) else { continue };
        for tau in [0.0, 0.3, 0.7, 1.0] {
            match arc_point(&p, arc, tau).and_then(|q| analyze(&p, &q)) {
                Ok(a) if a.memberships.iter().any(|l| l.cell == Cell::E2) => {
                    violations.push(violation(0, "exclusion", format!("{p} {}: claimed by E2", a.q)))
                }
                Ok(_) => {}
                Err(e) => violations.push(violation(0, "error", e.to_string())),
            }
        }
    }
}

/// Sample convergent pair sequences inside one cell and check that the
/// planned paths converge monotonically, plus the two fixed probes.
pub fn continuity_audit(cell: Cell, n: usize, seed: u64) -> Result<AuditReport> {
    if cell == Cell::E4 {
        return Err(Error::BadCell(cell));
    }
    let runs: Vec<(usize, Result<Option<Sequence>>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            for attempt in 0..50 {
                let Some(f) = family(cell, &mut rng) else { continue };
                match run_family(cell, &f) {
                    Ok(None) => continue,
                    other => return (attempt, other),
                }
            }
            (50, Ok(None))
        })
        .collect();
    let mut violations = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    let mut retries = 0;
    let mut crossings = 0;
    for (i, (attempts, run)) in runs.into_iter().enumerate() {
        retries += attempts;
        match run {
            Err(e) => violations.push(violation(i, "error", e.to_string())),
            Ok(None) => violations.push(violation(i, "sampling", "no sequence stayed inside one component")),
            Ok(Some(seq)) => {
                if seq.same_chart.iter().any(|same| !same) {
                    crossings += 1;
                }
                // while P sits in another mirror chart than the limit the path
                // bends at the chart boundary, so only the tail is compared
                let contracting = seq
                    .gaps
                    .windows(2)
                    .zip(seq.same_chart.windows(2))
                    .all(|(w, same)| !(same[0] && same[1]) || w[1] <= w[0] + 1e-9);
                let last_delta = DELTA0 / f64::powi(2.0, HALVINGS as i32);
                let last = *seq.gaps.last().unwrap();
                worst_ratio = worst_ratio.max(last / last_delta);
                if !contracting || last > 100.0 * last_delta {
                    let gaps: Vec<String> = seq.gaps.iter().map(|g| format!("{g:.3e}")).collect();
                    violations.push(violation(i, "non-contracting", format!("{}: {}", seq.start, gaps.join(" "))));
                }
            }
        }
    }
    let angles = direction_probe()?;
    let mut min_sep = f64::INFINITY;
    for (i, a) in angles.iter().enumerate() {
        for b in &angles[i + 1..] {
            min_sep = min_sep.min(angular_gap(*a, *b));
        }
    }
    if angles.len() != 4 || min_sep < 60f64.to_radians() - 1e-6 {
        violations.push(violation(0, "probe", format!("directions {angles:?}")));
    }
    exclusion_probe(&mut violations);
    let mut summary = BTreeMap::new();
    summary.insert("worst_ratio".to_string(), worst_ratio);
    summary.insert("retries".to_string(), retries as f64);
    summary.insert("chart_crossings".to_string(), crossings as f64);
    summary.insert("probe_min_separation_deg".to_string(), min_sep.to_degrees());
    Ok(AuditReport { audit: format!("continuity {cell}"), samples: n, seed, violations, summary })
}

/// Pairs on which depth stability is compared.
pub const DEPTH_PAIRS: usize = 1000;

/// Symmetry, triangle inequality, isometry equivariance, crossing bounds and
/// stability from `depth` to `depth + 2` of the oracle on seeded random
/// points.
pub fn oracle_audit(n: usize, seed: u64, depth: usize) -> AuditReport {
    let deep_depth = (depth + 2).min(crate::surface::MAX_DEPTH);
    let set = |p: &SurfacePoint, q: &SurfacePoint| oracle::min_geodesics(p, q, depth, oracle::DEFAULT_TOL);
    let results: Vec<Vec<Violation>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let mut out = Vec::new();
            let (p, q, r) = (uniform_point(&mut rng), uniform_point(&mut rng), uniform_point(&mut rng));
            let g = isometry(&mut rng);
            let mut run = || -> Result<()> {
                let pq = set(&p, &q)?;
                let qp = set(&q, &p)?;
                let pr = set(&p, &r)?.distance;
                let qr = set(&q, &r)?.distance;
                if (pq.distance - qp.distance).abs() > 1e-9 {
                    out.push(violation(i, "symmetry", format!("{p} {q}")));
                }
                if pr > pq.distance + qr + 1e-9 {
                    out.push(violation(i, "triangle", format!("{p} {q} {r}")));
                }
                let image = set(&g.apply(&p), &g.apply(&q))?;
                if (image.distance - pq.distance).abs() > 1e-9 || image.multiplicity() != pq.multiplicity() {
                    out.push(violation(i, "equivariance", format!("{p} {q} under {g}")));
                }
                if !(1..=4).contains(&pq.multiplicity()) {
                    out.push(violation(i, "multiplicity", format!("{p} {q}: {}", pq.multiplicity())));
                }
                for h in &pq.geodesics {
                    if h.crossings.iter().any(|c| c.t < 1e-9 || c.t > 1.0 - 1e-9) {
                        out.push(violation(i, "crossing", format!("{p} {q}")));
                    }
                    if !validate_geodesic(h) {
                        out.push(violation(i, "validate", format!("{p} {q}")));
                    }
                }
                if i < DEPTH_PAIRS {
                    let deep = oracle::min_geodesics(&p, &q, deep_depth, oracle::DEFAULT_TOL)?;
                    let same = deep.multiplicity() == pq.multiplicity()
                        && deep.geodesics.iter().zip(&pq.geodesics).all(|(x, y)| (x.length - y.length).abs() <= 1e-12);
                    if !same {
                        out.push(violation(i, "depth", format!("{p} {q}")));
                    }
                }
                Ok(())
            };
            if let Err(e) = run() {
                out.push(violation(i, "error", e.to_string()));
            }
            out
        })
        .collect();
    let violations: Vec<Violation> = results.into_iter().flatten().collect();
    let mut summary = BTreeMap::new();
    summary.insert("depth_pairs".to_string(), n.min(DEPTH_PAIRS) as f64);
    summary.insert("depth".to_string(), depth as f64);
    summary.insert("deep_depth".to_string(), deep_depth as f64);
    AuditReport { audit: "oracle".into(), samples: n, seed, violations, summary }
}

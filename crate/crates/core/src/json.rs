//! JSON documents for query results, partition labels, plans and audits.
//! Reals are rounded to 9 significant digits; object keys are sorted, so
//! equal inputs give byte-identical output.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cut_locus::CutLocusGraph;
use crate::error::{Error, Result};
use crate::oracle::{unfold_along, Crossing, Geodesic, GeodesicSet};
use crate::planar::PlanarPoint;
use crate::planner::{AuditReport, PartitionLabel, PlanResult};
use crate::surface::{make_point, Edge, Face, SurfacePoint};

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Validation tolerance for geodesics read back from a document: printing
/// at 9 significant digits moves values near 2 by up to 5e-9.
pub const ROUND_TRIP_TOL: f64 = 1e-8;

pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v).parse().expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Round every non-integer number inside `value`.
pub fn rounded(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            serde_json::Number::from_f64(round_sig(n.as_f64().unwrap())).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(rounded).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rounded(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

fn to_value(x: &impl Serialize) -> Value {
    rounded(serde_json::to_value(x).expect("serializable"))
}

pub fn point_json(p: &SurfacePoint) -> Value {
    to_value(p)
}

pub fn geodesic_json(g: &Geodesic) -> Value {
    rounded(json!({
        "length": g.length,
        "crossings": g.crossings,
        "initial_direction": g.initial_direction.map(|d| [d.x, d.y]),
        "samples": g.samples,
    }))
}

pub fn geodesic_set_json(set: &GeodesicSet) -> Value {
    rounded(json!({
        "distance": set.distance,
        "multiplicity": set.multiplicity(),
        "geodesics": set.geodesics.iter().map(geodesic_json).collect::<Vec<_>>(),
    }))
}

pub fn label_json(label: &PartitionLabel) -> Value {
    to_value(label)
}

pub fn plan_json(plan: &PlanResult) -> Value {
    let mut v = label_json(&plan.label);
    v["path"] = geodesic_json(&plan.path);
    v
}

pub fn cut_locus_json(graph: &CutLocusGraph) -> Value {
    let arcs: Vec<Value> = graph
        .arcs
        .iter()
        .map(|a| {
            json!({
                "ends": [a.ends.0, a.ends.1],
                "multiplicity": a.multiplicity,
                "points": a.points,
            })
        })
        .collect();
    rounded(json!({
        "source": graph.source,
        "stratum": graph.stratum.name(),
        "nodes": graph.nodes.iter().map(|n| json!({
            "name": n.name,
            "point": n.point,
            "multiplicity": n.multiplicity,
        })).collect::<Vec<_>>(),
        "arcs": arcs,
        "is_tree": graph.is_tree(),
    }))
}

pub fn audit_json(report: &AuditReport) -> Value {
    to_value(report)
}

fn bad(what: &str) -> Error {
    Error::BadDocument(what.to_string())
}

fn real(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(what))
}

/// Read a point written by [`point_json`]. Weights are renormalized, since
/// rounding can move their sum by a few ulps of the printed precision.
pub fn point_from_json(v: &Value) -> Result<SurfacePoint> {
    let face = v["face"].as_str().and_then(Face::from_name).ok_or_else(|| bad("face"))?;
    let w = v["bary"].as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("bary"))?;
    let bary = [real(&w[0], "bary")?, real(&w[1], "bary")?, real(&w[2], "bary")?];
    let sum: f64 = bary.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(Error::BadSum(sum));
    }
    make_point(face, bary.map(|x| x / sum))
}

/// Read a geodesic written by [`geodesic_json`]. The endpoints are the first
/// and last samples and the unfolded target is recomputed from the crossed
/// edges.
pub fn geodesic_from_json(v: &Value) -> Result<Geodesic> {
    let samples = v["samples"]
        .as_array()
        .ok_or_else(|| bad("samples"))?
        .iter()
        .map(point_from_json)
        .collect::<Result<Vec<_>>>()?;
    let (source, target) = match (samples.first(), samples.last()) {
        (Some(s), Some(t)) => (*s, *t),
        _ => return Err(bad("samples")),
    };
    let crossings = v["crossings"]
        .as_array()
        .ok_or_else(|| bad("crossings"))?
        .iter()
        .map(|c| {
            let edge = c["edge"].as_str().and_then(Edge::from_name).ok_or_else(|| bad("edge"))?;
            Ok(Crossing { edge, t: real(&c["t"], "t")? })
        })
        .collect::<Result<Vec<_>>>()?;
    let initial_direction = match &v["initial_direction"] {
        Value::Null => None,
        Value::Array(d) if d.len() == 2 => Some(PlanarPoint::new(real(&d[0], "direction")?, real(&d[1], "direction")?)),
        _ => return Err(bad("initial_direction")),
    };
    let edges: Vec<Edge> = crossings.iter().map(|c| c.edge).collect();
    let unfolded_target = unfold_along(&source, &target, &edges).ok_or_else(|| bad("crossings do not form a chain"))?;
    Ok(Geodesic {
        source,
        target,
        length: real(&v["length"], "length")?,
        crossings,
        initial_direction,
        samples,
        unfolded_target,
    })
}

/// Compact single-line rendering.
pub fn to_string(value: &Value) -> String {
    serde_json::to_string(value).expect("serializable")
}
